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

#include "qadv/circuits/architectures.hpp"

#include <array>
#include <functional>
#include <string>

#include "qadv/util/error.hpp"

namespace qadv::circuits {

namespace {

constexpr std::array<std::pair<Preset, std::string_view>, 4> kPresetNames = {{
    {Preset::INTERLEAVED_MEDICAL_10Q, "INTERLEAVED_MEDICAL_10Q"},
    {Preset::AMPLITUDE_QUANTUM_10Q, "AMPLITUDE_QUANTUM_10Q"},
    {Preset::BENCHMARK_540, "BENCHMARK_540"},
    {Preset::ENCODING_FIRST_540, "ENCODING_FIRST_540"},
}};

// Emits the slot for (global layer, qubit) into the builder.
using SlotEmitter = std::function<void(TemplateBuilder&, sim::GateKind, int layer, int qubit)>;

void check_spec(const ArchitectureSpec& spec, const char* what) {
    if (spec.n_qubits != 10) {
        throw InputError(std::string(what) + ": the preset is defined for 10 qubits, got " +
                         std::to_string(spec.n_qubits));
    }
    if (spec.layer_kinds.empty()) {
        throw InputError(std::string(what) + ": layer_kinds must not be empty");
    }
    for (auto k : spec.layer_kinds) {
        if (k != sim::GateKind::RX && k != sim::GateKind::RY && k != sim::GateKind::RZ) {
            throw InputError(std::string(what) + ": layer kinds must be RX, RY or RZ");
        }
    }
}

CircuitTemplate build_blocks(const ArchitectureSpec& spec, const std::vector<int>& block_layers,
                             const SlotEmitter& emit, std::string name) {
    const int n = spec.n_qubits;
    const auto [group_a, group_b] = cnot_chain_layers(n);
    TemplateBuilder b(n);
    int layer = 0;
    for (int layers : block_layers) {
        for (int l = 0; l < layers; ++l) {
            ++layer;
            const auto kind = spec.layer_kinds[static_cast<std::size_t>(layer - 1) % spec.layer_kinds.size()];
            for (int q = 1; q <= n; ++q) {
                emit(b, kind, layer, q);
            }
        }
        for (const auto& [c, t] : group_a) {
            b.gate(sim::Gate::cnot(c, t));
        }
        for (const auto& [c, t] : group_b) {
            b.gate(sim::Gate::cnot(c, t));
        }
    }
    return b.build(std::move(name));
}

}  // namespace

std::string_view preset_name(Preset preset) {
    for (const auto& [p, name] : kPresetNames) {
        if (p == preset) {
            return name;
        }
    }
    return "UNKNOWN";
}

Preset parse_preset(std::string_view name) {
    for (const auto& [p, n] : kPresetNames) {
        if (n == name) {
            return p;
        }
    }
    throw InputError("unknown architecture preset '" + std::string(name) + "'");
}

std::pair<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>> cnot_chain_layers(int n_qubits) {
    if (n_qubits < 1) {
        throw InputError("cnot_chain_layers: qubit count must be positive");
    }
    std::vector<std::pair<int, int>> a;
    std::vector<std::pair<int, int>> b;
    for (int q = 1; q + 1 <= n_qubits; q += 2) {
        a.emplace_back(q, q + 1);
    }
    for (int q = 2; q + 1 <= n_qubits; q += 2) {
        b.emplace_back(q, q + 1);
    }
    return {a, b};
}

CircuitTemplate build_interleaved_classifier(const ArchitectureSpec& spec) {
    check_spec(spec, "build_interleaved_classifier");
    const int n = spec.n_qubits;
    const double w = spec.data_weight;
    return build_blocks(
        spec, {8, 6, 6, 6},
        [n, w](TemplateBuilder& b, sim::GateKind kind, int layer, int q) {
            const int idx = (layer - 1) * n + (q - 1);
            b.data_plus_param(kind, q, idx, w, idx, layer);
        },
        "interleaved_medical_10q");
}

CircuitTemplate build_quantum_classifier(const ArchitectureSpec& spec) {
    check_spec(spec, "build_quantum_classifier");
    const int n = spec.n_qubits;
    return build_blocks(
        spec, std::vector<int>(5, 3),
        [n](TemplateBuilder& b, sim::GateKind kind, int layer, int q) {
            b.param(kind, q, (layer - 1) * n + (q - 1), layer);
        },
        "amplitude_quantum_10q");
}

std::pair<CircuitTemplate, CircuitTemplate> build_benchmark_pair(const ArchitectureSpec& spec) {
    check_spec(spec, "build_benchmark_pair");
    const int n = spec.n_qubits;
    const double w = spec.data_weight;
    constexpr int kLayersPerBlock = 6;
    constexpr int kBlocks = 9;
    const std::vector<int> blocks(kBlocks, kLayersPerBlock);

    auto interleaved = build_blocks(
        spec, blocks,
        [n, w](TemplateBuilder& b, sim::GateKind kind, int layer, int q) {
            const int block = (layer - 1) / kLayersPerBlock;
            const int within = (layer - 1) % kLayersPerBlock;
            const int half = kLayersPerBlock / 2;
            if (within < half) {
                b.data(kind, q, (block * half + within) * n + (q - 1), w, layer);
            } else {
                b.param(kind, q, (block * half + within - half) * n + (q - 1), layer);
            }
        },
        "benchmark_interleaved_540");

    const int data_layers = kBlocks * kLayersPerBlock / 2;
    auto encoding_first = build_blocks(
        spec, blocks,
        [n, w, data_layers](TemplateBuilder& b, sim::GateKind kind, int layer, int q) {
            if (layer <= data_layers) {
                b.data(kind, q, (layer - 1) * n + (q - 1), w, layer);
            } else {
                b.param(kind, q, (layer - 1 - data_layers) * n + (q - 1), layer);
            }
        },
        "benchmark_encoding_first_540");
    return {std::move(interleaved), std::move(encoding_first)};
}

CircuitTemplate build_preset(const ArchitectureSpec& spec) {
    switch (spec.preset) {
        case Preset::INTERLEAVED_MEDICAL_10Q:
            return build_interleaved_classifier(spec);
        case Preset::AMPLITUDE_QUANTUM_10Q:
            return build_quantum_classifier(spec);
        case Preset::BENCHMARK_540:
            return build_benchmark_pair(spec).first;
        case Preset::ENCODING_FIRST_540:
            return build_benchmark_pair(spec).second;
    }
    throw InputError("build_preset: unsupported preset");
}

CircuitTemplate build_perturbation_layer(int n_qubits) {
    if (n_qubits < 1) {
        throw InputError("build_perturbation_layer: qubit count must be positive");
    }
    constexpr std::array<sim::GateKind, 3> kKinds = {sim::GateKind::RX, sim::GateKind::RZ, sim::GateKind::RX};
    TemplateBuilder b(n_qubits);
    for (int q = 1; q <= n_qubits; ++q) {
        for (int r = 0; r < 3; ++r) {
            b.param(kKinds[static_cast<std::size_t>(r)], q, 3 * (q - 1) + r, r + 1);
        }
    }
    return b.build("local_perturbation");
}

}  // namespace qadv::circuits
