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

#include "qadv/adversarial/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "qadv/circuits/architectures.hpp"
#include "qadv/datasets/encode.hpp"
#include "qadv/util/error.hpp"
#include "qadv/util/parallel.hpp"

namespace qadv::adversarial {

namespace {

double loss_at(const grad::Classifier& model, double z, int label) {
    return grad::loss_from_z(model.loss, z, grad::one_hot(label));
}

}  // namespace

std::string_view attack_name(AttackKind k) {
    switch (k) {
        case AttackKind::TYPE1:
            return "TYPE1";
        case AttackKind::TYPE2:
            return "TYPE2";
        case AttackKind::QUANTUM:
            return "QUANTUM";
    }
    return "TYPE1";
}

AttackKind parse_attack_kind(std::string_view name) {
    if (name == "TYPE1") return AttackKind::TYPE1;
    if (name == "TYPE2") return AttackKind::TYPE2;
    if (name == "QUANTUM") return AttackKind::QUANTUM;
    throw InputError("unknown attack kind '" + std::string(name) + "'");
}

void validate(const AttackConfig& c) {
    if (c.iterations < 0) throw InputError("attack: iterations must be non-negative");
    if (!(c.learning_rate >= 0.0)) throw InputError("attack: learning rate must be non-negative");
    if (!(c.mask_threshold >= 0.0 && c.mask_threshold <= 1.0)) throw InputError("attack: mask threshold must lie in [0, 1]");
    if (!(c.kappa > 0.0)) throw InputError("attack: kappa must be positive");
    if (c.linf && !(*c.linf >= 0.0)) throw InputError("attack: l-inf bound must be non-negative");
}

std::vector<std::uint8_t> object_mask(std::span<const double> x, double threshold) {
    std::vector<std::uint8_t> m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        m[i] = x[i] > threshold ? 1 : 0;
    }
    return m;
}

AttackResult attack_classical(const grad::Classifier& model, std::span<const double> theta,
                              const datasets::Sample& sample, const datasets::EncodeConfig& encoding,
                              const AttackConfig& config) {
    validate(config);
    if (config.kind == AttackKind::QUANTUM) {
        throw InputError("attack_classical: QUANTUM attacks act on quantum samples");
    }
    const std::vector<double> x0 = sample.x;
    const auto mask = config.kind == AttackKind::TYPE2 ? object_mask(x0, config.mask_threshold)
                                                       : std::vector<std::uint8_t>(x0.size(), 1);
    AttackResult r;
    r.id = sample.id;
    r.label = sample.label;
    r.x_adv = x0;

    grad::Example ex;
    ex.label = sample.label;
    ex.x = datasets::encode(r.x_adv, encoding);
    r.initial_z = grad::forward_z(model, ex, theta);
    r.initial_loss = loss_at(model, r.initial_z, r.label);

    const bool any = std::any_of(mask.begin(), mask.end(), [](std::uint8_t m) { return m != 0; });
    optim::AdamState adam(x0.size(), config.adam);
    for (int t = 0; any && t < config.iterations; ++t) {
        const auto g_enc = grad::loss_grad_input(model, ex, theta);
        auto g = datasets::encode_vjp(r.x_adv, g_enc, encoding);
        // Ascent: Adam descends on -g.
        for (auto& v : g) v = -v;
        std::vector<double> next = r.x_adv;
        optim::adam_step(adam, next, g, config.learning_rate);
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (!mask[i]) {
                next[i] = r.x_adv[i];
                continue;
            }
            double v = std::clamp(next[i], 0.0, 1.0);
            if (config.linf) {
                v = std::clamp(v, x0[i] - *config.linf, x0[i] + *config.linf);
            }
            next[i] = v;
        }
        if (std::all_of(next.begin(), next.end(), [](double v) { return v == 0.0; })) {
            break;
        }
        r.x_adv = std::move(next);
        ex.x = datasets::encode(r.x_adv, encoding);
        r.iterations = t + 1;
    }
    r.x_adv_encoded = ex.x;
    r.final_z = grad::forward_z(model, ex, theta);
    r.final_loss = loss_at(model, r.final_z, r.label);
    return r;
}

std::vector<AttackResult> attack_classical_set(const grad::Classifier& model, std::span<const double> theta,
                                               std::span<const datasets::Sample> samples,
                                               const datasets::EncodeConfig& encoding, const AttackConfig& config) {
    std::vector<AttackResult> out(samples.size());
    parallel_for(samples.size(), config.threads,
                 [&](std::size_t i) { out[i] = attack_classical(model, theta, samples[i], encoding, config); });
    return out;
}

std::vector<datasets::Sample> adversarial_samples(std::span<const AttackResult> results) {
    std::vector<datasets::Sample> out;
    out.reserve(results.size());
    for (const auto& r : results) {
        datasets::Sample s;
        s.x = r.x_adv;
        s.x_encoded = r.x_adv_encoded;
        s.label = r.label;
        s.id = r.id;
        out.push_back(std::move(s));
    }
    return out;
}

double QuantumAttackResult::max_abs_delta() const {
    double m = 0.0;
    for (double d : delta) m = std::max(m, std::abs(d));
    return m;
}

QuantumAttackResult attack_quantum(const grad::Classifier& model, std::span<const double> theta,
                                   const qdata::QuantumSample& sample, const qdata::AAParams& chain,
                                   const AttackConfig& config) {
    validate(config);
    const int n = chain.n_qubits;
    const auto propagator =
        std::make_shared<const qdata::SectorPropagator>(qdata::sample_params(chain, sample.v_over_g, sample.phi));

    grad::PerturbedModel pm;
    pm.perturbation = std::make_shared<const circuits::CircuitTemplate>(circuits::build_perturbation_layer(n));
    pm.kappa = config.kappa;
    pm.base = std::make_shared<const sim::StateVector>(qdata::neel_state(n));
    pm.evolution = [propagator](sim::StateVector& s) { propagator->apply(s); };
    pm.classifier = model;

    QuantumAttackResult r;
    r.id = sample.id;
    r.label = sample.label;
    r.psi.assign(static_cast<std::size_t>(pm.perturbation->param_slot_count()), 0.0);

    const auto legit = grad::perturbed_state(pm, r.psi);
    r.profile_before = qdata::excitation_profile(legit);
    r.imbalance_before = qdata::staggered_imbalance(legit);
    r.initial_z = grad::perturbed_forward_z(pm, r.psi, theta);
    r.initial_loss = loss_at(model, r.initial_z, r.label);

    optim::AdamState adam(r.psi.size(), config.adam);
    for (int t = 0; t < config.iterations; ++t) {
        auto g = grad::loss_grad_psi(pm, r.psi, theta, r.label);
        for (auto& v : g) v = -v;
        optim::adam_step(adam, r.psi, g, config.learning_rate);
        r.iterations = t + 1;
    }
    r.delta = grad::perturbation_angles(config.kappa, r.psi);
    auto adv = grad::perturbed_state(pm, r.psi);
    r.profile_after = qdata::excitation_profile(adv);
    r.imbalance_after = qdata::staggered_imbalance(adv);
    r.fidelity_to_legit = sim::overlap_fidelity(legit, adv);
    r.state = std::make_shared<const sim::StateVector>(std::move(adv));
    r.final_z = grad::perturbed_forward_z(pm, r.psi, theta);
    r.final_loss = loss_at(model, r.final_z, r.label);
    return r;
}

std::vector<QuantumAttackResult> attack_quantum_set(const grad::Classifier& model, std::span<const double> theta,
                                                    std::span<const qdata::QuantumSample> samples,
                                                    const qdata::AAParams& chain, const AttackConfig& config) {
    std::vector<QuantumAttackResult> out(samples.size());
    parallel_for(samples.size(), config.threads,
                 [&](std::size_t i) { out[i] = attack_quantum(model, theta, samples[i], chain, config); });
    return out;
}

std::vector<qdata::QuantumSample> adversarial_quantum_samples(std::span<const QuantumAttackResult> results,
                                                              std::span<const qdata::QuantumSample> sources) {
    if (results.size() != sources.size()) {
        throw InputError("adversarial_quantum_samples: result and source counts differ");
    }
    std::vector<qdata::QuantumSample> out;
    for (std::size_t i = 0; i < results.size(); ++i) {
        qdata::QuantumSample s = sources[i];
        s.state = results[i].state;
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

nlohmann::json config_json(const AttackConfig& c) {
    nlohmann::json j = {{"kind", std::string(attack_name(c.kind))},
                        {"iterations", c.iterations},
                        {"learning_rate", c.learning_rate},
                        {"mask_threshold", c.mask_threshold},
                        {"kappa", c.kappa},
                        {"adam", {{"beta1", c.adam.beta1}, {"beta2", c.adam.beta2}, {"eps", c.adam.eps}}}};
    if (c.linf) {
        j["linf"] = *c.linf;
    } else {
        j["linf"] = nullptr;
    }
    return j;
}

}  // namespace

std::string provenance_json(const AttackConfig& config, std::span<const AttackResult> train,
                            std::span<const AttackResult> test) {
    nlohmann::json doc;
    doc["format"] = "qadv.adversarial_provenance";
    doc["version"] = 1;
    doc["attack"] = config_json(config);
    nlohmann::json samples = nlohmann::json::array();
    auto add = [&](std::span<const AttackResult> rs, const char* split) {
        for (const auto& r : rs) {
            samples.push_back({{"id", r.id},
                               {"split", split},
                               {"label", r.label},
                               {"iterations", r.iterations},
                               {"initial_loss", r.initial_loss},
                               {"final_loss", r.final_loss},
                               {"initial_z", r.initial_z},
                               {"final_z", r.final_z},
                               {"adversarial", r.adversarial()},
                               {"flipped", r.flipped()}});
        }
    };
    add(train, "train");
    add(test, "test");
    doc["samples"] = std::move(samples);
    return doc.dump(1) + "\n";
}

std::string quantum_provenance_json(const AttackConfig& config, std::span<const QuantumAttackResult> results) {
    nlohmann::json doc;
    doc["format"] = "qadv.adversarial_provenance";
    doc["version"] = 1;
    doc["attack"] = config_json(config);
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& r : results) {
        samples.push_back({{"id", r.id},
                           {"label", r.label},
                           {"iterations", r.iterations},
                           {"psi", r.psi},
                           {"delta", r.delta},
                           {"max_abs_delta", r.max_abs_delta()},
                           {"initial_loss", r.initial_loss},
                           {"final_loss", r.final_loss},
                           {"initial_z", r.initial_z},
                           {"final_z", r.final_z},
                           {"imbalance_before", r.imbalance_before},
                           {"imbalance_after", r.imbalance_after},
                           {"profile_before", r.profile_before},
                           {"profile_after", r.profile_after},
                           {"fidelity_to_legit", r.fidelity_to_legit},
                           {"adversarial", r.adversarial()},
                           {"flipped", r.flipped()}});
    }
    doc["samples"] = std::move(samples);
    return doc.dump(1) + "\n";
}

}  // namespace qadv::adversarial
