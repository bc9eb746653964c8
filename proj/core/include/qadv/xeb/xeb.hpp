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
#include <string>
#include <vector>

#include "qadv/sim/noise.hpp"
#include "qadv/util/rng.hpp"

namespace qadv::xeb {

struct XebConfig {
    int n_qubits = 1;
    std::vector<int> cycles = {1, 10, 20, 40, 60, 80, 100};
    int circuits = 50;
    // 0 selects exact-probability mode: p_e is the trajectory-averaged
    // distribution itself. Otherwise p_e is a histogram of this many shots.
    int shots = 0;
    int trajectories = 200;
    sim::NoiseSpec noise;
    std::uint64_t seed = 0;
    int threads = 1;
};

void validate(const XebConfig& config);

/// One cycle: R_phi(pi/2) on every qubit with phi drawn from {k pi/4},
/// followed by CZ(1, 2) on two qubits.
std::vector<sim::Gate> random_cycle(int n_qubits, Rng& rng);

/// theta for a uniform u on [0, 1): inverse CDF of sin(theta)/2 on [0, pi].
double final_gate_theta(double u);

/// R_phi(theta) with phi uniform on [0, 2 pi) and theta = final_gate_theta(u).
sim::Gate final_random_gate(int qubit, Rng& rng);

struct AlphaTerms {
    double numerator = 0.0;    // sum p_e (D p_s - 1)
    double denominator = 0.0;  // D sum p_s^2 - 1
};

AlphaTerms alpha_terms(std::span<const double> p_e, std::span<const double> p_s);

/// mean numerator / mean denominator over circuits.
double xeb_alpha(std::span<const std::vector<double>> p_e, std::span<const std::vector<double>> p_s);
double xeb_alpha(std::span<const AlphaTerms> terms);

struct DecayFit {
    double A = 0.0;
    double p = 0.0;
    double e_c = 0.0;
};

/// Least squares of log alpha against m; e_c = (1 - p)(1 - 1/D^2) and p is
/// capped at 1.
DecayFit fit_decay(std::span<const int> m, std::span<const double> alpha, int dim);

/// 1 - (1 - p)^n: probability that a cycle suffers any Pauli error.
double analytic_pauli_error(double per_qubit_prob, int n_qubits);

struct CircuitRecord {
    int m = 0;
    int circuit = 0;
    AlphaTerms terms;
    double alpha_contribution = 0.0;
};

struct XebResult {
    std::vector<CircuitRecord> records;
    std::vector<int> m;
    std::vector<double> alpha;
    DecayFit fit;
};

XebResult run_xeb(const XebConfig& config);

/// Columns m,circuit,alpha_contribution,numerator,denominator.
std::string results_csv(const XebResult& result);
std::string summary_json(const XebConfig& config, const XebResult& result);

}  // namespace qadv::xeb
