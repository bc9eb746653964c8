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

#include "qadv/grad/param_shift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qadv/util/error.hpp"
#include "qadv/util/parallel.hpp"
#include "qadv/util/rng.hpp"

namespace qadv::grad {

namespace {

constexpr double kShift = std::numbers::pi / 2;

bool is_shiftable(sim::GateKind k) {
    return k == sim::GateKind::RX || k == sim::GateKind::RY || k == sim::GateKind::RZ ||
           k == sim::GateKind::RPHI;
}

const circuits::CircuitTemplate& circuit_of(const Classifier& model) {
    if (!model.circuit) {
        throw InputError("classifier has no circuit");
    }
    return *model.circuit;
}

std::vector<double> example_x(const Classifier& model, const Example& ex) {
    const auto& c = circuit_of(model);
    if (ex.input) {
        if (c.data_slot_count() != 0) {
            throw InputError("example: amplitude input given to a circuit with data slots");
        }
        return {};
    }
    return ex.x;
}

// Evaluates the shifted circuits for positions[lo, hi), which must be
// sorted ascending, walking the prefix state forward.
void shift_range(const sim::StateVector& initial, std::span<const sim::Gate> gates,
                 std::span<const std::size_t> positions, const Readout& readout, std::size_t lo, std::size_t hi,
                 std::span<double> out) {
    sim::StateVector prefix = initial;
    std::size_t applied = 0;
    for (std::size_t k = lo; k < hi; ++k) {
        const std::size_t p = positions[k];
        for (; applied < p; ++applied) {
            prefix.apply(gates[applied]);
        }
        double f[2];
        for (int sgn = 0; sgn < 2; ++sgn) {
            sim::StateVector s = prefix;
            sim::Gate g = gates[p];
            g.angle += sgn == 0 ? kShift : -kShift;
            s.apply(g);
            for (std::size_t i = p + 1; i < gates.size(); ++i) {
                s.apply(gates[i]);
            }
            f[sgn] = readout(s);
        }
        out[k] = 0.5 * (f[0] - f[1]);
    }
}

}  // namespace

Readout z_readout(int qubit) {
    return [qubit](sim::StateVector& s) { return s.expectation_z(qubit); };
}

Readout sampled_z_readout(int qubit, std::size_t shots, Rng& rng) {
    return [qubit, shots, &rng](sim::StateVector& s) { return sim::sample_expectation_z(s, qubit, shots, rng); };
}

std::vector<double> shift_derivatives(const sim::StateVector& initial, std::span<const sim::Gate> gates,
                                      std::span<const std::size_t> positions, const Readout& readout,
                                      int threads) {
    for (auto p : positions) {
        if (p >= gates.size()) {
            throw InputError("shift_derivatives: gate position out of range");
        }
        if (!is_shiftable(gates[p].kind)) {
            throw InputError("shift_derivatives: position " + std::to_string(p) + " holds a fixed " +
                             std::string(sim::gate_name(gates[p].kind)) + " gate");
        }
    }
    // Sort once, evaluate in chunks, then scatter back to the caller's order.
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });
    std::vector<std::size_t> sorted(positions.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        sorted[k] = positions[order[k]];
    }
    std::vector<double> sorted_out(sorted.size());
    const std::size_t chunks = std::min<std::size_t>(sorted.size(), static_cast<std::size_t>(std::max(threads, 1)));
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t lo = c * sorted.size() / chunks;
        const std::size_t hi = (c + 1) * sorted.size() / chunks;
        shift_range(initial, gates, sorted, readout, lo, hi, sorted_out);
    });
    std::vector<double> out(positions.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        out[order[k]] = sorted_out[k];
    }
    return out;
}

double param_shift(const circuits::CircuitTemplate& tmpl, std::span<const double> x_encoded,
                   std::span<const double> theta, int qubit, std::size_t slot) {
    if (slot >= tmpl.slot_count()) {
        throw InputError("param_shift: slot " + std::to_string(slot) + " is not an angle slot of the template");
    }
    const auto bound = circuits::bind(tmpl, x_encoded, theta);
    const std::size_t pos = tmpl.slot_positions()[slot];
    const std::size_t positions[] = {pos};
    return shift_derivatives(sim::StateVector(tmpl.n_qubits()), bound.gates, positions, z_readout(qubit))[0];
}

sim::StateVector initial_state(const Classifier& model, const Example& ex) {
    const auto& c = circuit_of(model);
    if (ex.input) {
        if (ex.input->n_qubits() != c.n_qubits()) {
            throw InputError("example: input state has " + std::to_string(ex.input->n_qubits()) +
                             " qubits, circuit has " + std::to_string(c.n_qubits()));
        }
        return *ex.input;
    }
    return sim::StateVector(c.n_qubits());
}

double forward_z(const Classifier& model, const Example& ex, std::span<const double> theta) {
    const auto x = example_x(model, ex);
    const auto bound = circuits::bind(circuit_of(model), x, theta);
    auto s = initial_state(model, ex);
    sim::apply_all(s, bound.gates);
    return s.expectation_z(model.readout_qubit);
}

std::vector<double> loss_grad_theta(const Classifier& model, const Example& ex, std::span<const double> theta,
                                    std::span<const int> indices, int threads) {
    const auto& c = circuit_of(model);
    const auto x = example_x(model, ex);
    const auto bound = circuits::bind(c, x, theta);
    const auto init = initial_state(model, ex);

    std::vector<std::size_t> positions;
    std::vector<std::size_t> owner;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const int j = indices[k];
        if (j < 0 || j >= c.param_slot_count()) {
            throw InputError("loss_grad_theta: parameter index " + std::to_string(j) + " out of range");
        }
        for (auto p : c.param_positions(j)) {
            positions.push_back(p);
            owner.push_back(k);
        }
    }
    auto s = init;
    sim::apply_all(s, bound.gates);
    const double dz = dloss_dz(model.loss, s.expectation_z(model.readout_qubit), one_hot(ex.label));

    const auto d = shift_derivatives(init, bound.gates, positions, z_readout(model.readout_qubit), threads);
    std::vector<double> out(indices.size(), 0.0);
    for (std::size_t k = 0; k < d.size(); ++k) {
        out[owner[k]] += d[k];
    }
    for (auto& v : out) {
        v *= dz;
    }
    return out;
}

std::vector<double> loss_grad_input(const Classifier& model, const Example& ex, std::span<const double> theta,
                                    int threads) {
    const auto& c = circuit_of(model);
    const auto x = example_x(model, ex);
    const auto bound = circuits::bind(c, x, theta);
    const auto init = initial_state(model, ex);

    std::vector<std::size_t> positions;
    std::vector<int> owner;
    std::vector<double> weight;
    for (int i = 0; i < c.data_slot_count(); ++i) {
        for (auto p : c.data_positions(i)) {
            const double w = std::get<circuits::AngleSlot>(c.program()[p]).weight;
            if (w == 0.0) {
                continue;
            }
            positions.push_back(p);
            owner.push_back(i);
            weight.push_back(w);
        }
    }
    auto s = init;
    sim::apply_all(s, bound.gates);
    const double dz = dloss_dz(model.loss, s.expectation_z(model.readout_qubit), one_hot(ex.label));

    const auto d = shift_derivatives(init, bound.gates, positions, z_readout(model.readout_qubit), threads);
    std::vector<double> out(static_cast<std::size_t>(c.data_slot_count()), 0.0);
    for (std::size_t k = 0; k < d.size(); ++k) {
        out[static_cast<std::size_t>(owner[k])] += weight[k] * d[k];
    }
    for (auto& v : out) {
        v *= dz;
    }
    return out;
}

std::vector<double> perturbation_angles(double kappa, std::span<const double> psi) {
    std::vector<double> delta(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        delta[i] = kappa * std::sin(psi[i]);
    }
    return delta;
}

namespace {

void check_perturbed(const PerturbedModel& m, std::span<const double> psi) {
    if (!m.perturbation || !m.base) {
        throw InputError("perturbed model needs a perturbation layer and a base state");
    }
    if (psi.size() != static_cast<std::size_t>(m.perturbation->param_slot_count())) {
        throw InputError("perturbed model: expected " + std::to_string(m.perturbation->param_slot_count()) +
                         " perturbation parameters, got " + std::to_string(psi.size()));
    }
}

}  // namespace

sim::StateVector perturbed_state(const PerturbedModel& model, std::span<const double> psi) {
    check_perturbed(model, psi);
    const auto delta = perturbation_angles(model.kappa, psi);
    const auto bound = circuits::bind(*model.perturbation, {}, delta);
    auto s = *model.base;
    sim::apply_all(s, bound.gates);
    if (model.evolution) {
        model.evolution(s);
    }
    return s;
}

double perturbed_forward_z(const PerturbedModel& model, std::span<const double> psi, std::span<const double> theta) {
    Example ex;
    ex.input = std::make_shared<const sim::StateVector>(perturbed_state(model, psi));
    return forward_z(model.classifier, ex, theta);
}

std::vector<double> loss_grad_psi(const PerturbedModel& model, std::span<const double> psi,
                                  std::span<const double> theta, int label, int threads) {
    check_perturbed(model, psi);
    const auto& pert = *model.perturbation;
    const auto delta = perturbation_angles(model.kappa, psi);
    const auto bound = circuits::bind(pert, {}, delta);
    const auto classifier_gates = circuits::bind(circuit_of(model.classifier), {}, theta).gates;
    const int k = model.classifier.readout_qubit;

    const Readout readout = [&](sim::StateVector& s) {
        if (model.evolution) {
            model.evolution(s);
        }
        sim::apply_all(s, classifier_gates);
        return s.expectation_z(k);
    };

    std::vector<std::size_t> positions;
    std::vector<std::size_t> owner;
    for (int j = 0; j < pert.param_slot_count(); ++j) {
        for (auto p : pert.param_positions(j)) {
            positions.push_back(p);
            owner.push_back(static_cast<std::size_t>(j));
        }
    }
    auto s = *model.base;
    sim::apply_all(s, bound.gates);
    const double dz = dloss_dz(model.classifier.loss, readout(s), one_hot(label));

    const auto d = shift_derivatives(*model.base, bound.gates, positions, readout, threads);
    std::vector<double> out(psi.size(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        out[owner[i]] += d[i];
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] *= dz * model.kappa * std::cos(psi[j]);
    }
    return out;
}

}  // namespace qadv::grad
