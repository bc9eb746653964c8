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

#include "qadv/circuits/circuit_template.hpp"

#include <algorithm>
#include <set>

#include "qadv/util/error.hpp"

namespace qadv::circuits {

namespace {

void check_qubit(int q, int n, const char* what) {
    if (q < 1 || q > n) {
        throw InputError(std::string(what) + ": qubit " + std::to_string(q) + " out of range [1, " +
                         std::to_string(n) + "]");
    }
}

// Slot indices must be exactly 0..k-1 so the counts equal the number of
// distinct referenced indices.
int dense_count(const std::vector<std::vector<std::size_t>>& positions, const char* what) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i].empty()) {
            throw InputError(std::string("CircuitTemplate: ") + what + " index " + std::to_string(i) +
                             " is never referenced");
        }
    }
    return static_cast<int>(positions.size());
}

}  // namespace

CircuitTemplate::CircuitTemplate(int n_qubits, std::vector<ProgramItem> program, std::string name)
    : n_qubits_(n_qubits), name_(std::move(name)), program_(std::move(program)) {
    if (n_qubits < 1) {
        throw InputError("CircuitTemplate: qubit count must be positive");
    }
    for (std::size_t pos = 0; pos < program_.size(); ++pos) {
        if (const auto* g = std::get_if<sim::Gate>(&program_[pos])) {
            check_qubit(g->q0, n_qubits, "CircuitTemplate");
            if (sim::is_two_qubit(g->kind)) {
                check_qubit(g->q1, n_qubits, "CircuitTemplate");
                if (g->q0 == g->q1) {
                    throw InputError("CircuitTemplate: two-qubit gate on a single qubit");
                }
            }
            continue;
        }
        const auto& s = std::get<AngleSlot>(program_[pos]);
        check_qubit(s.qubit, n_qubits, "CircuitTemplate");
        if (!sim::is_rotation(s.kind) || s.kind == sim::GateKind::RPHI) {
            throw InputError("CircuitTemplate: angle slots must be RX, RY or RZ");
        }
        slot_positions_.push_back(pos);
        if (s.uses_param()) {
            if (s.param_index < 0) {
                throw InputError("CircuitTemplate: slot without a parameter index");
            }
            if (static_cast<std::size_t>(s.param_index) >= param_positions_.size()) {
                param_positions_.resize(static_cast<std::size_t>(s.param_index) + 1);
            }
            param_positions_[static_cast<std::size_t>(s.param_index)].push_back(pos);
        }
        if (s.uses_data()) {
            if (s.data_index < 0) {
                throw InputError("CircuitTemplate: slot without a data index");
            }
            if (static_cast<std::size_t>(s.data_index) >= data_positions_.size()) {
                data_positions_.resize(static_cast<std::size_t>(s.data_index) + 1);
            }
            data_positions_[static_cast<std::size_t>(s.data_index)].push_back(pos);
        }
    }
    param_slot_count_ = dense_count(param_positions_, "parameter");
    data_slot_count_ = dense_count(data_positions_, "data");
}

std::size_t CircuitTemplate::two_qubit_gate_count() const {
    return static_cast<std::size_t>(std::count_if(program_.begin(), program_.end(), [](const ProgramItem& it) {
        const auto* g = std::get_if<sim::Gate>(&it);
        return g && sim::is_two_qubit(g->kind);
    }));
}

BoundCircuit bind(const CircuitTemplate& tmpl, std::span<const double> x_encoded, std::span<const double> theta) {
    if (x_encoded.size() != static_cast<std::size_t>(tmpl.data_slot_count())) {
        throw InputError("bind: expected " + std::to_string(tmpl.data_slot_count()) + " data values, got " +
                         std::to_string(x_encoded.size()));
    }
    if (theta.size() != static_cast<std::size_t>(tmpl.param_slot_count())) {
        throw InputError("bind: expected " + std::to_string(tmpl.param_slot_count()) + " parameters, got " +
                         std::to_string(theta.size()));
    }
    BoundCircuit out;
    out.gates.reserve(tmpl.size());
    for (const auto& item : tmpl.program()) {
        if (const auto* g = std::get_if<sim::Gate>(&item)) {
            out.gates.push_back(*g);
            continue;
        }
        const auto& s = std::get<AngleSlot>(item);
        double angle = 0.0;
        if (s.uses_data()) {
            angle += s.weight * x_encoded[static_cast<std::size_t>(s.data_index)];
        }
        if (s.uses_param()) {
            angle += theta[static_cast<std::size_t>(s.param_index)];
        }
        out.gates.push_back(sim::Gate{s.kind, s.qubit, 0, angle, 0.0});
    }
    return out;
}

std::vector<int> params_on_qubit(const CircuitTemplate& tmpl, int qubit) {
    std::set<int> out;
    for (std::size_t k = 0; k < tmpl.slot_count(); ++k) {
        const auto& s = tmpl.slot(k);
        if (s.qubit == qubit && s.uses_param()) {
            out.insert(s.param_index);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<int> params_in_layers(const CircuitTemplate& tmpl, std::span<const int> layers) {
    std::set<int> out;
    for (std::size_t k = 0; k < tmpl.slot_count(); ++k) {
        const auto& s = tmpl.slot(k);
        if (s.uses_param() && std::find(layers.begin(), layers.end(), s.layer) != layers.end()) {
            out.insert(s.param_index);
        }
    }
    return {out.begin(), out.end()};
}

TemplateBuilder& TemplateBuilder::gate(const sim::Gate& g) {
    program_.emplace_back(g);
    return *this;
}

TemplateBuilder& TemplateBuilder::param(sim::GateKind kind, int qubit, int param_index, int layer) {
    program_.emplace_back(AngleSlot{kind, qubit, SlotRole::PARAM, -1, 0.0, param_index, layer});
    return *this;
}

TemplateBuilder& TemplateBuilder::data(sim::GateKind kind, int qubit, int data_index, double weight, int layer) {
    program_.emplace_back(AngleSlot{kind, qubit, SlotRole::DATA, data_index, weight, -1, layer});
    return *this;
}

TemplateBuilder& TemplateBuilder::data_plus_param(sim::GateKind kind, int qubit, int data_index, double weight,
                                                  int param_index, int layer) {
    program_.emplace_back(AngleSlot{kind, qubit, SlotRole::DATA_PLUS_PARAM, data_index, weight, param_index, layer});
    return *this;
}

CircuitTemplate TemplateBuilder::build(std::string name) const { return CircuitTemplate(n_qubits_, program_, std::move(name)); }

}  // namespace qadv::circuits
