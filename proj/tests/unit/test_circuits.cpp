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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "qadv/circuits/architectures.hpp"
#include "qadv/circuits/compile.hpp"
#include "qadv/circuits/serialize.hpp"
#include "qadv/util/error.hpp"

namespace qadv {
namespace {

using circuits::ArchitectureSpec;
using circuits::Preset;
using sim::Gate;
using sim::GateKind;

// |tr(a^dagger b)| / 2 for 2x2 unitaries; 1 iff equal up to a global phase.
double phase_free_overlap(const sim::Mat2& a, const sim::Mat2& b) {
    sim::Amplitude tr = 0.0;
    for (int i = 0; i < 4; ++i) tr += std::conj(a[i]) * b[i];
    return std::abs(tr) / 2;
}

sim::Mat2 zphi_matrix(const circuits::ZPhiDecomposition& d) {
    return sim::multiply(sim::single_qubit_matrix(Gate::rphi(1, d.theta_prime, d.phi)),
                         sim::single_qubit_matrix(Gate::rz(1, d.theta)));
}

ArchitectureSpec spec_for(Preset p) {
    ArchitectureSpec s;
    s.preset = p;
    return s;
}

TEST(Architectures, CnotGroupsOnTwoQubits) {
    const auto [a, b] = circuits::cnot_chain_layers(2);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0], std::make_pair(1, 2));
    EXPECT_TRUE(b.empty());
    const auto [a10, b10] = circuits::cnot_chain_layers(10);
    EXPECT_EQ(a10.size(), 5u);
    EXPECT_EQ(b10.size(), 4u);
    EXPECT_EQ(b10.back(), std::make_pair(8, 9));
}

TEST(Architectures, InterleavedClassifierShape) {
    const auto t = circuits::build_preset(spec_for(Preset::INTERLEAVED_MEDICAL_10Q));
    EXPECT_EQ(t.two_qubit_gate_count(), 36u);
    EXPECT_EQ(t.param_slot_count(), 260);
    EXPECT_EQ(t.data_slot_count(), 260);
    for (std::size_t k = 0; k < t.slot_count(); ++k) {
        const auto& s = t.slot(k);
        EXPECT_EQ(s.role, circuits::SlotRole::DATA_PLUS_PARAM);
        EXPECT_EQ(s.kind, s.layer % 2 == 1 ? GateKind::RX : GateKind::RZ);
    }
    EXPECT_EQ(circuits::params_on_qubit(t, 5).size(), 26u);
}

TEST(Architectures, QuantumClassifierShape) {
    const auto t = circuits::build_preset(spec_for(Preset::AMPLITUDE_QUANTUM_10Q));
    EXPECT_EQ(t.two_qubit_gate_count(), 45u);
    EXPECT_EQ(t.param_slot_count(), 150);
    EXPECT_EQ(t.data_slot_count(), 0);
    const std::array layers = {1, 2, 3};
    EXPECT_EQ(circuits::params_in_layers(t, layers).size(), 30u);
}

TEST(Architectures, BenchmarkPairSharesScaffold) {
    const auto [inter, first] = circuits::build_benchmark_pair(spec_for(Preset::BENCHMARK_540));
    EXPECT_EQ(inter.slot_count(), 540u);
    EXPECT_EQ(first.slot_count(), 540u);
    EXPECT_EQ(inter.data_slot_count(), 270);
    EXPECT_EQ(first.data_slot_count(), 270);
    EXPECT_EQ(inter.param_slot_count(), 270);
    EXPECT_EQ(first.param_slot_count(), 270);
    EXPECT_EQ(inter.two_qubit_gate_count(), first.two_qubit_gate_count());
    // Every encoding-first data slot precedes every parameter slot.
    std::size_t last_data = 0, first_param = first.size();
    for (std::size_t k = 0; k < first.slot_count(); ++k) {
        const auto pos = first.slot_positions()[k];
        if (first.slot(k).uses_data()) last_data = std::max(last_data, pos);
        else first_param = std::min(first_param, pos);
    }
    EXPECT_LT(last_data, first_param);
    // The interleaved member alternates within each block.
    EXPECT_TRUE(inter.slot(0).uses_data());
    EXPECT_TRUE(inter.slot(30).uses_param());
    EXPECT_TRUE(inter.slot(60).uses_data());
}

TEST(Architectures, PresetsRejectOtherSizes) {
    auto s = spec_for(Preset::INTERLEAVED_MEDICAL_10Q);
    s.n_qubits = 8;
    EXPECT_THROW(circuits::build_preset(s), InputError);
    EXPECT_THROW(circuits::parse_preset("NOPE"), InputError);
    EXPECT_EQ(circuits::parse_preset("BENCHMARK_540"), Preset::BENCHMARK_540);
}

TEST(Architectures, PerturbationLayerIndexing) {
    const auto t = circuits::build_perturbation_layer(4);
    EXPECT_EQ(t.param_slot_count(), 12);
    const auto& s = t.slot(3 * 2 + 1);  // qubit 3, second rotation
    EXPECT_EQ(s.qubit, 3);
    EXPECT_EQ(s.kind, GateKind::RZ);
    EXPECT_EQ(s.param_index, 7);
}

TEST(Template, BindCombinesWeightedDataAndParameter) {
    const auto t = circuits::TemplateBuilder(1).data_plus_param(GateKind::RX, 1, 0, 2.0, 0).build();
    const std::array x = {0.3};
    const std::array theta = {0.1};
    const auto bound = circuits::bind(t, x, theta);
    ASSERT_EQ(bound.gates.size(), 1u);
    EXPECT_DOUBLE_EQ(bound.gates[0].angle, 0.7);
    EXPECT_EQ(bound.gates[0].kind, GateKind::RX);
}

TEST(Template, BindChecksLengths) {
    const auto t = circuits::build_preset(spec_for(Preset::INTERLEAVED_MEDICAL_10Q));
    std::vector<double> x(259), theta(260);
    EXPECT_THROW(circuits::bind(t, x, theta), InputError);
}

TEST(Template, RejectsMalformedPrograms) {
    EXPECT_THROW(circuits::TemplateBuilder(2).gate(Gate::cnot(1, 3)).build(), InputError);
    EXPECT_THROW(circuits::TemplateBuilder(2).param(GateKind::H, 1, 0).build(), InputError);
    // Index 0 is never referenced.
    EXPECT_THROW(circuits::TemplateBuilder(2).param(GateKind::RX, 1, 1).build(), InputError);
    EXPECT_THROW(circuits::CircuitTemplate(0, {}), InputError);
}

TEST(Compile, AdjacentRzFuse) {
    const std::array gates = {Gate::rz(1, 0.4), Gate::rz(1, 0.5)};
    const auto out = circuits::compile_single_qubit_runs(gates);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].kind, GateKind::RZ);
    EXPECT_GT(phase_free_overlap(sim::single_qubit_matrix(out[0]), sim::single_qubit_matrix(Gate::rz(1, 0.9))),
              1 - 1e-14);
}

TEST(Compile, HadamardDecomposition) {
    const auto h = sim::single_qubit_matrix(Gate::h(1));
    const auto d = circuits::decompose_zphi(h);
    EXPECT_GT(phase_free_overlap(zphi_matrix(d), h), 1 - 1e-14);
}

TEST(Compile, DecomposesRandomUnitaries) {
    Rng rng(21);
    constexpr std::array kinds = {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RPHI, GateKind::H};
    for (int trial = 0; trial < 200; ++trial) {
        sim::Mat2 u = {1.0, 0.0, 0.0, 1.0};
        for (const auto& g : testing::random_gates(1, 5, rng, kinds)) {
            u = sim::multiply(sim::single_qubit_matrix(g), u);
        }
        EXPECT_GT(phase_free_overlap(zphi_matrix(circuits::decompose_zphi(u)), u), 1 - 1e-12);
    }
}

TEST(Compile, IdentityRunsVanish) {
    const std::array gates = {Gate::rx(2, 0.3), Gate::rx(2, -0.3), Gate::cz(1, 2)};
    const auto out = circuits::compile_single_qubit_runs(gates);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].kind, GateKind::CZ);
}

TEST(Compile, RandomCircuitsKeepFidelityAndShortRuns) {
    Rng rng(33);
    constexpr std::array kinds = {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RPHI,
                                  GateKind::H,  GateKind::CNOT, GateKind::CZ};
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 4;
        const auto gates = testing::random_gates(n, 60, rng, kinds);
        const auto compiled = circuits::compile_single_qubit_runs(gates);
        sim::StateVector a(n), b(n);
        sim::apply_all(a, gates);
        sim::apply_all(b, compiled);
        EXPECT_GT(sim::overlap_fidelity(a, b), 1 - 1e-10);
        std::vector<int> run(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& g : compiled) {
            if (sim::is_two_qubit(g.kind)) {
                run[static_cast<std::size_t>(g.q0)] = run[static_cast<std::size_t>(g.q1)] = 0;
                continue;
            }
            EXPECT_LE(++run[static_cast<std::size_t>(g.q0)], 2);
            EXPECT_TRUE(g.kind == GateKind::RZ || g.kind == GateKind::RPHI);
        }
    }
}

TEST(Serialize, TemplateRoundTripIsExact) {
    for (auto p : {Preset::INTERLEAVED_MEDICAL_10Q, Preset::AMPLITUDE_QUANTUM_10Q, Preset::ENCODING_FIRST_540}) {
        auto s = spec_for(p);
        s.data_weight = 0.1 + 0.2;
        const auto t = circuits::build_preset(s);
        const auto back = circuits::template_from_json(circuits::template_to_json(t));
        EXPECT_EQ(back, t);
        EXPECT_EQ(back.name(), t.name());
    }
}

TEST(Serialize, FileRoundTripAndGateLists) {
    const auto path = std::filesystem::temp_directory_path() / "qadv_template_test.json";
    const auto t = circuits::build_perturbation_layer(3);
    circuits::save_template(t, path);
    EXPECT_EQ(circuits::load_template(path), t);
    std::filesystem::remove(path);
    const std::vector gates = {Gate::rphi(2, 1.0 / 3.0, -2.5), Gate::cnot(2, 1), Gate::h(1)};
    EXPECT_EQ(circuits::gates_from_json(circuits::gates_to_json(gates)), gates);
}

TEST(Serialize, RejectsWrongFormat) {
    EXPECT_THROW(circuits::template_from_json(R"({"format": "other", "version": 1})"), FormatError);
    EXPECT_THROW(circuits::template_from_json("not json"), FormatError);
}

}  // namespace
}  // namespace qadv
