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

#include "qadv/circuits/compile.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

namespace qadv::circuits {

namespace {

constexpr double kDropTol = 1e-14;

bool is_multiple_of_2pi(double a) {
    const double r = std::remainder(a, 2 * std::numbers::pi);
    return std::abs(r) < kDropTol;
}

}  // namespace

ZPhiDecomposition decompose_zphi(const sim::Mat2& u) {
    // Scale to SU(2) = [[a, -conj(b)], [b, conj(a)]].
    const sim::Amplitude det = u[0] * u[3] - u[1] * u[2];
    const sim::Amplitude scale = 1.0 / std::sqrt(det);
    const sim::Amplitude a = u[0] * scale;
    const sim::Amplitude b = u[2] * scale;

    ZPhiDecomposition d;
    const double abs_a = std::min(1.0, std::abs(a));
    d.theta = abs_a > kDropTol ? -2.0 * std::arg(a) : 0.0;
    if (std::abs(b) > kDropTol) {
        d.theta_prime = 2.0 * std::acos(abs_a);
        d.phi = std::arg(b) + d.theta / 2 + std::numbers::pi / 2;
        d.has_rphi = true;
    }
    d.has_rz = !is_multiple_of_2pi(d.theta);
    return d;
}

std::vector<sim::Gate> compile_single_qubit_runs(std::span<const sim::Gate> gates) {
    std::map<int, sim::Mat2> pending;
    std::vector<sim::Gate> out;
    out.reserve(gates.size());

    auto flush = [&](int q) {
        auto it = pending.find(q);
        if (it == pending.end()) {
            return;
        }
        const auto d = decompose_zphi(it->second);
        if (d.has_rz) {
            out.push_back(sim::Gate::rz(q, d.theta));
        }
        if (d.has_rphi) {
            out.push_back(sim::Gate::rphi(q, d.theta_prime, d.phi));
        }
        pending.erase(it);
    };

    for (const auto& g : gates) {
        if (sim::is_two_qubit(g.kind)) {
            flush(g.q0);
            flush(g.q1);
            out.push_back(g);
            continue;
        }
        const auto m = sim::single_qubit_matrix(g);
        auto [it, inserted] = pending.try_emplace(g.q0, m);
        if (!inserted) {
            it->second = sim::multiply(m, it->second);
        }
    }
    while (!pending.empty()) {
        flush(pending.begin()->first);
    }
    return out;
}

}  // namespace qadv::circuits
