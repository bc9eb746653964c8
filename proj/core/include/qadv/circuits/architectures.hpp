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

#include <utility>
#include <vector>

#include "qadv/circuits/circuit_template.hpp"

namespace qadv::circuits {

enum class Preset { INTERLEAVED_MEDICAL_10Q, AMPLITUDE_QUANTUM_10Q, BENCHMARK_540, ENCODING_FIRST_540 };

std::string_view preset_name(Preset preset);
Preset parse_preset(std::string_view name);

struct ArchitectureSpec {
    Preset preset = Preset::INTERLEAVED_MEDICAL_10Q;
    int n_qubits = 10;
    // Kind of single-qubit layer L (one-based) is layer_kinds[(L - 1) % size].
    std::vector<sim::GateKind> layer_kinds = {sim::GateKind::RX, sim::GateKind::RZ};
    // Multiplier applied to x_i inside a data slot angle.
    double data_weight = 2.0;
};

/// Nearest-neighbour CNOT pairs (control, target) for a 1-D chain:
/// group A = (1,2),(3,4),...; group B = (2,3),(4,5),...
std::pair<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>> cnot_chain_layers(int n_qubits);

/// Four blocks of 8/6/6/6 single-qubit layers, all DATA_PLUS_PARAM, each
/// block followed by CNOT groups A and B. Slot (layer L, qubit q) reads
/// x and theta at index (L - 1) * n + (q - 1).
CircuitTemplate build_interleaved_classifier(const ArchitectureSpec& spec);

/// Five blocks of three PARAM layers plus the two CNOT groups.
CircuitTemplate build_quantum_classifier(const ArchitectureSpec& spec);

/// Shared 9-block scaffold (6 layers per block) with interleaved and
/// encoding-first slot roles.
std::pair<CircuitTemplate, CircuitTemplate> build_benchmark_pair(const ArchitectureSpec& spec);

/// Dispatches on spec.preset. BENCHMARK_540 yields the interleaved member
/// of the pair, ENCODING_FIRST_540 the encoding-first one.
CircuitTemplate build_preset(const ArchitectureSpec& spec);

/// Local perturbation Rx(d1) Rz(d2) Rx(d3) on every qubit; d_r of qubit q
/// is theta[3 (q - 1) + (r - 1)].
CircuitTemplate build_perturbation_layer(int n_qubits);

}  // namespace qadv::circuits
