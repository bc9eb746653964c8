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

#include "qadv/quantum_data/dataset.hpp"

#include <numbers>

#include "qadv/util/error.hpp"
#include "qadv/util/parallel.hpp"
#include "qadv/util/rng.hpp"

namespace qadv::qdata {

std::string_view phase_name(Phase p) { return p == Phase::THERMAL ? "THERMAL" : "LOCALIZED"; }

std::string neel_bits(int n_qubits) {
    std::string bits(static_cast<std::size_t>(n_qubits), '0');
    for (std::size_t k = 0; k < bits.size(); k += 2) bits[k] = '1';
    return bits;
}

sim::StateVector neel_state(int n_qubits) { return sim::init_basis_state(n_qubits, neel_bits(n_qubits)); }

AAParams sample_params(const AAParams& chain, double v_over_g, double phi) {
    AAParams p = chain;
    p.V = v_over_g * chain.g;
    p.phi = phi;
    return p;
}

sim::StateVector evolve_neel(const AAParams& chain, double v_over_g, double phi, const EvolveOptions& opts) {
    return evolve(neel_state(chain.n_qubits), sample_params(chain, v_over_g, phi), opts);
}

QuantumDataset generate_dataset(const QDataConfig& config) {
    if (!(config.chain.g > 0.0) || !(config.chain.tau > 0.0)) {
        throw InputError("generate_dataset: g and tau must be positive");
    }
    if (!(config.thermal_hi >= config.thermal_lo) || !(config.localized_hi >= config.localized_lo)) {
        throw InputError("generate_dataset: empty V/g range");
    }
    const std::size_t total = config.n_train + config.n_test;
    std::vector<QuantumSample> all(total);
    parallel_for(total, config.threads, [&](std::size_t i) {
        const std::size_t pos = i < config.n_train ? i : i - config.n_train;
        const bool localized = pos % 2 == 1;
        QuantumSample s;
        s.seed = derive_seed(config.seed, "qdata.sample", i);
        Rng rng(s.seed);
        s.label = localized ? static_cast<int>(Phase::LOCALIZED) : static_cast<int>(Phase::THERMAL);
        s.v_over_g = localized ? rng.uniform(config.localized_lo, config.localized_hi)
                               : rng.uniform(config.thermal_lo, config.thermal_hi);
        s.phi = rng.uniform(0.0, 2 * std::numbers::pi);
        s.state = std::make_shared<const sim::StateVector>(evolve_neel(config.chain, s.v_over_g, s.phi, config.evolve));
        s.id = (i < config.n_train ? "train-" : "test-") + std::to_string(pos);
        all[i] = std::move(s);
    });
    QuantumDataset ds;
    ds.config = config;
    ds.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(config.n_train));
    ds.test.assign(all.begin() + static_cast<std::ptrdiff_t>(config.n_train), all.end());
    return ds;
}

std::vector<double> excitation_profile(const sim::StateVector& state) {
    std::vector<double> p(static_cast<std::size_t>(state.n_qubits()));
    for (int k = 1; k <= state.n_qubits(); ++k) {
        p[static_cast<std::size_t>(k - 1)] = 0.5 - 0.5 * state.expectation_z(k);
    }
    return p;
}

double staggered_imbalance(const sim::StateVector& state) {
    const auto p = excitation_profile(state);
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        acc += sign * (2.0 * p[k] - 1.0);
    }
    return acc / static_cast<double>(p.size());
}

std::vector<grad::Example> to_examples(std::span<const QuantumSample> samples) {
    std::vector<grad::Example> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        grad::Example e;
        e.input = s.state;
        e.label = s.label;
        e.id = s.id;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace qadv::qdata
