// Copyright 2026 The qadvlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qadv/quantum_data/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qadv/util/error.hpp"

namespace qadv::qdata {

double site_field(const AAParams& p, int k) { return p.V * std::cos(2 * std::numbers::pi * p.alpha * k + p.phi); }

double Hamiltonian::element(std::size_t r, std::size_t c) const {
    for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
        if (col[k] == c) {
            return val[k];
        }
    }
    return 0.0;
}

void Hamiltonian::apply(std::span<const sim::Amplitude> x, std::span<sim::Amplitude> y) const {
    const std::size_t d = dim();
    for (std::size_t r = 0; r < d; ++r) {
        sim::Amplitude acc{0.0, 0.0};
        for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
            acc += val[k] * x[col[k]];
        }
        y[r] = acc;
    }
}

sim::Amplitude Hamiltonian::expectation(std::span<const sim::Amplitude> x) const {
    std::vector<sim::Amplitude> y(x.size());
    apply(x, y);
    sim::Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

Hamiltonian build_hamiltonian(const AAParams& p) {
    if (p.n_qubits < 2 || p.n_qubits > 20) {
        throw InputError("build_hamiltonian: chain length must be in [2, 20], got " + std::to_string(p.n_qubits));
    }
    const int n = p.n_qubits;
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        v[static_cast<std::size_t>(k - 1)] = site_field(p, k);
    }
    auto bit = [n](std::size_t idx, int k) { return (idx >> (n - k)) & 1U; };

    Hamiltonian h;
    h.n_qubits = n;
    h.row_ptr.reserve(dim + 1);
    h.row_ptr.push_back(0);
    for (std::size_t r = 0; r < dim; ++r) {
        // (XX + YY)/2 maps |01> <-> |10> with amplitude 1, so -(g/2)(XX+YY)
        // contributes -g to each such pair.
        std::vector<std::pair<std::uint32_t, double>> row;
        double diag = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double z = bit(r, k) ? -1.0 : 1.0;
            diag -= 0.5 * v[static_cast<std::size_t>(k - 1)] * z;
        }
        for (int k = 1; k < n; ++k) {
            if (bit(r, k) != bit(r, k + 1)) {
                const std::size_t mask = (std::size_t{1} << (n - k)) | (std::size_t{1} << (n - k - 1));
                row.emplace_back(static_cast<std::uint32_t>(r ^ mask), -p.g);
            }
        }
        if (diag != 0.0) {
            row.emplace_back(static_cast<std::uint32_t>(r), diag);
        }
        std::sort(row.begin(), row.end());
        for (const auto& [c, x] : row) {
            h.col.push_back(c);
            h.val.push_back(x);
        }
        h.row_ptr.push_back(static_cast<std::uint32_t>(h.col.size()));
    }
    return h;
}

}  // namespace qadv::qdata
