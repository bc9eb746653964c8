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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qadv/grad/param_shift.hpp"
#include "qadv/quantum_data/evolve.hpp"

namespace qadv::qdata {

/// Label 0 pairs with g1 (<Z> >= 0) in the classifier.
enum class Phase { THERMAL = 0, LOCALIZED = 1 };

std::string_view phase_name(Phase p);

struct QuantumSample {
    std::shared_ptr<const sim::StateVector> state;
    int label = 0;
    double v_over_g = 0.0;
    double phi = 0.0;
    std::uint64_t seed = 0;
    std::string id;
};

struct QDataConfig {
    // n_qubits, g, alpha and tau are taken from here; V and phi are drawn.
    AAParams chain;
    double thermal_lo = 0.0;
    double thermal_hi = 1.0;
    double localized_lo = 4.0;
    double localized_hi = 5.0;
    std::size_t n_train = 500;
    std::size_t n_test = 100;
    std::uint64_t seed = 0;
    EvolveOptions evolve;
    int threads = 1;
};

struct QuantumDataset {
    QDataConfig config;
    std::vector<QuantumSample> train;
    std::vector<QuantumSample> test;
};

/// "1010...", qubit 1 excited.
std::string neel_bits(int n_qubits);
sim::StateVector neel_state(int n_qubits);

/// Chain parameters of one sample: V = (V/g) g and its phase.
AAParams sample_params(const AAParams& chain, double v_over_g, double phi);

/// Evolves the Neel state for tau at the given V/g and phi.
sim::StateVector evolve_neel(const AAParams& chain, double v_over_g, double phi, const EvolveOptions& opts = {});

/// Half of each split from each phase (even positions thermal, odd
/// localized). Sample i uses its own rng stream derived from (seed, i), so
/// results do not depend on the thread count.
QuantumDataset generate_dataset(const QDataConfig& config);

/// P1(k) = 1/2 - <Z_k>/2 for k = 1..n.
std::vector<double> excitation_profile(const sim::StateVector& state);

/// I = (1/n) sum_k (-1)^(k+1) (2 P1(k) - 1); 1 for the Neel state.
double staggered_imbalance(const sim::StateVector& state);

std::vector<grad::Example> to_examples(std::span<const QuantumSample> samples);

}  // namespace qadv::qdata
