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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qadv/datasets/split.hpp"
#include "qadv/grad/param_shift.hpp"
#include "qadv/optim/adam.hpp"
#include "qadv/quantum_data/dataset.hpp"

namespace qadv::adversarial {

enum class AttackKind { TYPE1, TYPE2, QUANTUM };

std::string_view attack_name(AttackKind k);
AttackKind parse_attack_kind(std::string_view name);

struct AttackConfig {
    AttackKind kind = AttackKind::TYPE1;
    int iterations = 20;
    double learning_rate = 0.01;
    // TYPE2: pixels with x_i > mask_threshold are attackable.
    double mask_threshold = 0.0;
    // QUANTUM: delta_i = kappa sin(psi_i).
    double kappa = 0.5;
    // Optional bound |x_adv_i - x_i| <= linf for classical attacks.
    std::optional<double> linf;
    optim::AdamConfig adam;
    std::uint64_t seed = 0;
    int threads = 1;
};

void validate(const AttackConfig& config);

struct AttackResult {
    std::string id;
    int label = 0;
    std::vector<double> x_adv;
    std::vector<double> x_adv_encoded;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    double initial_z = 0.0;
    double final_z = 0.0;
    int iterations = 0;

    bool adversarial() const { return final_loss >= initial_loss; }
    bool flipped() const { return grad::predict(final_z) != label; }
};

/// S_area: 1 where x_i > threshold.
std::vector<std::uint8_t> object_mask(std::span<const double> x, double threshold);

/// Adam ascent on the loss over the raw pixels. Each step re-encodes the
/// image, pulls the data-slot gradient back through the encoder, steps,
/// masks (TYPE2) and clamps to [0, 1] (and the optional l-inf ball). theta
/// is read only.
AttackResult attack_classical(const grad::Classifier& model, std::span<const double> theta,
                              const datasets::Sample& sample, const datasets::EncodeConfig& encoding,
                              const AttackConfig& config);

/// Attacks every sample; samples run in parallel, results keep input order.
std::vector<AttackResult> attack_classical_set(const grad::Classifier& model, std::span<const double> theta,
                                               std::span<const datasets::Sample> samples,
                                               const datasets::EncodeConfig& encoding, const AttackConfig& config);

/// Adversarial samples (x = x_adv) carrying the source ids and labels.
std::vector<datasets::Sample> adversarial_samples(std::span<const AttackResult> results);

struct QuantumAttackResult {
    std::string id;
    int label = 0;
    std::vector<double> psi;
    std::vector<double> delta;
    std::shared_ptr<const sim::StateVector> state;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    double initial_z = 0.0;
    double final_z = 0.0;
    std::vector<double> profile_before;
    std::vector<double> profile_after;
    double imbalance_before = 0.0;
    double imbalance_after = 0.0;
    // Fidelity between the emitted state and the unperturbed evolution.
    double fidelity_to_legit = 1.0;
    int iterations = 0;

    bool adversarial() const { return final_loss >= initial_loss; }
    bool flipped() const { return grad::predict(final_z) != label; }
    double max_abs_delta() const;
};

/// Optimizes the perturbation layer in front of the sample's own
/// Aubry-André evolution, starting from psi = 0 (identity layer).
QuantumAttackResult attack_quantum(const grad::Classifier& model, std::span<const double> theta,
                                   const qdata::QuantumSample& sample, const qdata::AAParams& chain,
                                   const AttackConfig& config);

std::vector<QuantumAttackResult> attack_quantum_set(const grad::Classifier& model, std::span<const double> theta,
                                                    std::span<const qdata::QuantumSample> samples,
                                                    const qdata::AAParams& chain, const AttackConfig& config);

std::vector<qdata::QuantumSample> adversarial_quantum_samples(std::span<const QuantumAttackResult> results,
                                                              std::span<const qdata::QuantumSample> sources);

/// Provenance records: attack config plus per-sample loss before/after.
std::string provenance_json(const AttackConfig& config, std::span<const AttackResult> train,
                            std::span<const AttackResult> test);
std::string quantum_provenance_json(const AttackConfig& config, std::span<const QuantumAttackResult> results);

}  // namespace qadv::adversarial
