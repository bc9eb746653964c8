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
#include <numeric>

#include "oracles.hpp"
#include "qadv/circuits/architectures.hpp"
#include "qadv/grad/param_shift.hpp"
#include "qadv/util/error.hpp"

namespace qadv {
namespace {

using grad::LossKind;
using grad::LossSpec;
using sim::Gate;
using sim::GateKind;

// Three-qubit classifier with data+param, param-only and data-only slots.
grad::Classifier small_classifier(LossKind loss) {
    circuits::TemplateBuilder b(3);
    b.data_plus_param(GateKind::RX, 1, 0, 2.0, 0, 1)
        .data_plus_param(GateKind::RY, 2, 1, 2.0, 1, 1)
        .param(GateKind::RX, 3, 2, 1)
        .gate(Gate::cnot(1, 2))
        .gate(Gate::cnot(2, 3))
        .data(GateKind::RZ, 2, 2, 1.5, 2)
        .data_plus_param(GateKind::RX, 2, 0, 2.0, 3, 2)
        .param(GateKind::RY, 3, 4, 2)
        .gate(Gate::cz(3, 1))
        .param(GateKind::RX, 1, 5, 3);
    return grad::Classifier{std::make_shared<const circuits::CircuitTemplate>(b.build()), 2, LossSpec{loss}};
}

TEST(Loss, ValuesAtUnbiasedReadout) {
    const auto a = grad::one_hot(0);
    EXPECT_NEAR(grad::loss_from_z({LossKind::CROSS_ENTROPY}, 0.0, a), std::log(2.0), 1e-15);
    EXPECT_NEAR(grad::loss_from_z({LossKind::MSE}, 0.0, a), 0.5, 1e-15);
    EXPECT_EQ(grad::one_hot(1), (grad::OneHot{0.0, 1.0}));
    EXPECT_THROW(grad::one_hot(2), InputError);
}

TEST(Loss, PredictionTieGoesToLabelZero) {
    EXPECT_EQ(grad::predict(0.0), 0);
    EXPECT_EQ(grad::predict(-1e-300), 1);
    EXPECT_EQ(grad::predict(0.5), 0);
}

TEST(Loss, DerivativeMatchesFiniteDifference) {
    for (auto kind : {LossKind::CROSS_ENTROPY, LossKind::MSE}) {
        for (int label : {0, 1}) {
            for (double z : {-0.9, -0.2, 0.0, 0.35, 0.8}) {
                const LossSpec spec{kind};
                const auto a = grad::one_hot(label);
                const double h = 1e-6;
                const double fd =
                    (grad::loss_from_z(spec, z + h, a) - grad::loss_from_z(spec, z - h, a)) / (2 * h);
                EXPECT_NEAR(grad::dloss_dz(spec, z, a), fd, 1e-7);
            }
        }
    }
}

TEST(Loss, FloorClampsCrossEntropy) {
    const LossSpec spec{LossKind::CROSS_ENTROPY, 1e-10};
    EXPECT_NEAR(grad::loss_from_z(spec, 1.0, grad::one_hot(1)), -std::log(1e-10), 1e-9);
    EXPECT_EQ(grad::dloss_dz(spec, 1.0, grad::one_hot(1)), 0.0);
}

TEST(ParamShift, SingleRotation) {
    for (auto [theta, want] : {std::pair{0.0, 0.0}, std::pair{M_PI / 2, -1.0}}) {
        const std::array gates = {Gate::rx(1, theta)};
        const std::array pos = {std::size_t{0}};
        const auto d = grad::shift_derivatives(sim::StateVector(1), gates, pos, grad::z_readout(1));
        EXPECT_NEAR(d[0], want, 1e-15);
    }
}

TEST(ParamShift, TemplateSlotDerivative) {
    const auto t = circuits::TemplateBuilder(1).param(GateKind::RY, 1, 0).build();
    const std::array theta = {0.4};
    EXPECT_NEAR(grad::param_shift(t, {}, theta, 1, 0), -std::sin(0.4), 1e-15);
}

TEST(ParamShift, RandomCircuitsMatchFiniteDifferences) {
    Rng rng(101);
    constexpr std::array kinds = {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RPHI,
                                  GateKind::H,  GateKind::CNOT, GateKind::CZ};
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 5;
        const auto gates = testing::random_gates(n, 8 * n, rng, kinds);
        std::vector<std::size_t> pos;
        std::vector<double> angles;
        for (std::size_t i = 0; i < gates.size(); ++i) {
            if (sim::is_rotation(gates[i].kind)) {
                pos.push_back(i);
                angles.push_back(gates[i].angle);
            }
        }
        const int q = 1 + trial % n;
        const auto d = grad::shift_derivatives(sim::StateVector(n), gates, pos, grad::z_readout(q));
        const auto fd = testing::central_difference(
            [&](std::span<const double> a) {
                auto g = gates;
                for (std::size_t k = 0; k < pos.size(); ++k) g[pos[k]].angle = a[k];
                return testing::dense_z(testing::dense_run(g, n, testing::basis(n, 0)), q, n);
            },
            angles);
        for (std::size_t k = 0; k < d.size(); ++k) EXPECT_NEAR(d[k], fd[k], 1e-7);
    }
}

TEST(ParamShift, LossGradientsMatchFiniteDifferences) {
    for (auto kind : {LossKind::CROSS_ENTROPY, LossKind::MSE}) {
        const auto model = small_classifier(kind);
        grad::Example ex{{0.3, -0.7, 0.45}, nullptr, 1, "a"};
        const std::vector<double> theta = {0.2, 1.3, -0.4, 2.2, 0.9, -1.1};
        std::vector<int> all(6);
        std::iota(all.begin(), all.end(), 0);
        const auto g = grad::loss_grad_theta(model, ex, theta, all);
        const auto fd = testing::central_difference(
            [&](std::span<const double> th) {
                return grad::loss_from_z(model.loss, grad::forward_z(model, ex, th), grad::one_hot(ex.label));
            },
            theta);
        for (int j = 0; j < 6; ++j) EXPECT_NEAR(g[j], fd[j], 1e-7) << j;

        const auto gx = grad::loss_grad_input(model, ex, theta);
        const auto fdx = testing::central_difference(
            [&](std::span<const double> x) {
                grad::Example e = ex;
                e.x.assign(x.begin(), x.end());
                return grad::loss_from_z(model.loss, grad::forward_z(model, e, theta), grad::one_hot(ex.label));
            },
            ex.x);
        ASSERT_EQ(gx.size(), 3u);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(gx[i], fdx[i], 1e-7) << i;
    }
}

TEST(ParamShift, SubsetOrderAndThreadsAreStable) {
    const auto model = small_classifier(LossKind::CROSS_ENTROPY);
    grad::Example ex{{0.1, 0.2, 0.3}, nullptr, 0, "b"};
    const std::vector<double> theta = {0.5, 0.1, 2.0, -0.3, 0.7, 1.9};
    const std::array idx = {4, 0, 2};
    const auto one = grad::loss_grad_theta(model, ex, theta, idx, 1);
    const auto two = grad::loss_grad_theta(model, ex, theta, idx, 3);
    EXPECT_EQ(one, two);
    std::vector<int> all = {0, 1, 2, 3, 4, 5};
    const auto full = grad::loss_grad_theta(model, ex, theta, all);
    EXPECT_EQ(one[0], full[4]);
    EXPECT_EQ(one[1], full[0]);
}

TEST(ParamShift, AmplitudeInputStartsFromPreparedState) {
    auto model = small_classifier(LossKind::CROSS_ENTROPY);
    model.circuit = std::make_shared<const circuits::CircuitTemplate>(
        circuits::TemplateBuilder(3).param(GateKind::RX, 2, 0).build());
    Rng rng(6);
    auto input = std::make_shared<const sim::StateVector>(testing::random_state(3, rng));
    grad::Example ex{{}, input, 0, "q"};
    const std::array theta = {0.8};
    auto want = *input;
    want.apply(Gate::rx(2, 0.8));
    EXPECT_NEAR(grad::forward_z(model, ex, theta), want.expectation_z(2), 1e-15);
}

grad::PerturbedModel perturbed_model() {
    auto circuit = std::make_shared<const circuits::CircuitTemplate>(
        circuits::TemplateBuilder(2)
            .param(GateKind::RY, 1, 0)
            .gate(Gate::cnot(1, 2))
            .param(GateKind::RX, 2, 1)
            .build());
    grad::PerturbedModel m;
    m.perturbation = std::make_shared<const circuits::CircuitTemplate>(circuits::build_perturbation_layer(2));
    m.kappa = 0.5;
    m.base = std::make_shared<const sim::StateVector>(sim::init_basis_state(2, "10"));
    m.evolution = [](sim::StateVector& s) {
        s.apply(Gate::h(1));
        s.apply(Gate::cz(1, 2));
        s.apply(Gate::ry(2, 0.6));
    };
    m.classifier = grad::Classifier{circuit, 2, {}};
    return m;
}

TEST(PerturbationGradient, MatchesFiniteDifferences) {
    const auto m = perturbed_model();
    const std::vector<double> psi = {0.3, -1.2, 0.8, 2.0, -0.1, 1.1};
    const std::array theta = {0.7, -0.4};
    for (int label : {0, 1}) {
        const auto g = grad::loss_grad_psi(m, psi, theta, label);
        const auto fd = testing::central_difference(
            [&](std::span<const double> p) {
                return grad::loss_from_z(m.classifier.loss, grad::perturbed_forward_z(m, p, theta),
                                         grad::one_hot(label));
            },
            psi);
        for (std::size_t i = 0; i < psi.size(); ++i) EXPECT_NEAR(g[i], fd[i], 1e-7) << i;
    }
}

TEST(PerturbationGradient, ChainFactorVanishesAtQuarterTurn) {
    const auto m = perturbed_model();
    const std::vector<double> psi(6, M_PI / 2);
    const std::array theta = {0.7, -0.4};
    for (double d : grad::loss_grad_psi(m, psi, theta, 0)) EXPECT_NEAR(d, 0.0, 1e-15);
    for (double d : grad::perturbation_angles(0.5, psi)) EXPECT_DOUBLE_EQ(d, 0.5);
}

TEST(PerturbationGradient, ZeroPsiIsIdentityLayer) {
    const auto m = perturbed_model();
    const std::vector<double> psi(6, 0.0);
    auto want = *m.base;
    m.evolution(want);
    EXPECT_GT(sim::overlap_fidelity(grad::perturbed_state(m, psi), want), 1 - 1e-15);
}

}  // namespace
}  // namespace qadv
