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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qadv/sim/gate.hpp"

namespace qadv::qdata {

/// Aubry-André chain parameters. Frequencies are angular (rad/s).
struct AAParams {
    int n_qubits = 10;
    double g = 2.0 * 3.141592653589793 * 5e6;
    double V = 0.0;
    double phi = 0.0;
    double alpha = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    double tau = 400e-9;
};

/// V_k = V cos(2 pi alpha k + phi), k one-based.
double site_field(const AAParams& p, int k);

/// H = -(g/2) sum_k (X_k X_{k+1} + Y_k Y_{k+1}) - sum_k (V_k / 2) Z_k on an
/// open chain, stored as a real symmetric CSR matrix. Z_k is +1 on bit 0.
struct Hamiltonian {
    int n_qubits = 0;
    std::vector<std::uint32_t> row_ptr;
    std::vector<std::uint32_t> col;
    std::vector<double> val;

    std::size_t dim() const { return row_ptr.empty() ? 0 : row_ptr.size() - 1; }
    double element(std::size_t r, std::size_t c) const;

    /// y = H x.
    void apply(std::span<const sim::Amplitude> x, std::span<sim::Amplitude> y) const;
    sim::Amplitude expectation(std::span<const sim::Amplitude> x) const;
};

Hamiltonian build_hamiltonian(const AAParams& params);

}  // namespace qadv::qdata
