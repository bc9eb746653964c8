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

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qadv/sim/gate.hpp"

namespace qadv::circuits {

enum class SlotRole { DATA, PARAM, DATA_PLUS_PARAM };

/// A rotation whose angle is filled in at bind time:
///   DATA:            weight * x[data_index]
///   PARAM:           theta[param_index]
///   DATA_PLUS_PARAM: weight * x[data_index] + theta[param_index]
/// `layer` is the one-based single-qubit layer the slot sits in; schedules
/// use it to select parameter columns.
struct AngleSlot {
    sim::GateKind kind = sim::GateKind::RX;
    int qubit = 1;
    SlotRole role = SlotRole::PARAM;
    int data_index = -1;
    double weight = 0.0;
    int param_index = -1;
    int layer = 0;

    bool uses_data() const { return role != SlotRole::PARAM; }
    bool uses_param() const { return role != SlotRole::DATA; }
    bool operator==(const AngleSlot&) const = default;
};

using ProgramItem = std::variant<sim::Gate, AngleSlot>;

/// Ordered gate program with data and variational angle slots.
/// Immutable once constructed.
class CircuitTemplate {
   public:
    CircuitTemplate(int n_qubits, std::vector<ProgramItem> program, std::string name = {});

    int n_qubits() const { return n_qubits_; }
    const std::string& name() const { return name_; }
    const std::vector<ProgramItem>& program() const { return program_; }
    std::size_t size() const { return program_.size(); }

    int data_slot_count() const { return data_slot_count_; }
    int param_slot_count() const { return param_slot_count_; }

    /// Program positions of the angle slots, in program order.
    const std::vector<std::size_t>& slot_positions() const { return slot_positions_; }
    std::size_t slot_count() const { return slot_positions_.size(); }
    const AngleSlot& slot(std::size_t k) const { return std::get<AngleSlot>(program_[slot_positions_[k]]); }

    /// Program positions reading theta[j] / x[i].
    const std::vector<std::size_t>& param_positions(int param_index) const {
        return param_positions_.at(static_cast<std::size_t>(param_index));
    }
    const std::vector<std::size_t>& data_positions(int data_index) const {
        return data_positions_.at(static_cast<std::size_t>(data_index));
    }

    std::size_t two_qubit_gate_count() const;

    bool operator==(const CircuitTemplate& other) const {
        return n_qubits_ == other.n_qubits_ && program_ == other.program_;
    }

   private:
    int n_qubits_;
    std::string name_;
    std::vector<ProgramItem> program_;
    int data_slot_count_ = 0;
    int param_slot_count_ = 0;
    std::vector<std::size_t> slot_positions_;
    std::vector<std::vector<std::size_t>> param_positions_;
    std::vector<std::vector<std::size_t>> data_positions_;
};

/// Concrete gate list; gates[i] comes from program item i.
struct BoundCircuit {
    std::vector<sim::Gate> gates;
};

BoundCircuit bind(const CircuitTemplate& tmpl, std::span<const double> x_encoded, std::span<const double> theta);

/// Parameter indices read by slots on one qubit (one circuit row),
/// ascending.
std::vector<int> params_on_qubit(const CircuitTemplate& tmpl, int qubit);

/// Parameter indices read by slots in the given one-based layers, ascending.
std::vector<int> params_in_layers(const CircuitTemplate& tmpl, std::span<const int> layers);

/// Incremental construction for presets and ad-hoc test circuits.
class TemplateBuilder {
   public:
    explicit TemplateBuilder(int n_qubits) : n_qubits_(n_qubits) {}

    TemplateBuilder& gate(const sim::Gate& g);
    TemplateBuilder& param(sim::GateKind kind, int qubit, int param_index, int layer = 0);
    TemplateBuilder& data(sim::GateKind kind, int qubit, int data_index, double weight, int layer = 0);
    TemplateBuilder& data_plus_param(sim::GateKind kind, int qubit, int data_index, double weight,
                                     int param_index, int layer = 0);

    CircuitTemplate build(std::string name = {}) const;

   private:
    int n_qubits_;
    std::vector<ProgramItem> program_;
};

}  // namespace qadv::circuits
