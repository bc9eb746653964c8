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

#include <array>
#include <string_view>

#include "qadv/sim/state_vector.hpp"

namespace qadv::grad {

enum class LossKind { CROSS_ENTROPY, MSE };

std::string_view loss_name(LossKind kind);
LossKind parse_loss_kind(std::string_view name);

struct LossSpec {
    LossKind kind = LossKind::CROSS_ENTROPY;
    // Lower bound inside the logarithm of the cross entropy.
    double floor = 1e-10;
};

/// (a1, a2); label 0 is (1, 0) and pairs with g1 = P(|0>).
using OneHot = std::array<double, 2>;

OneHot one_hot(int label);

/// CE = -sum a_k log max(g_k, floor); MSE = sum (a_k - g_k)^2.
double loss(const LossSpec& spec, const sim::ClassProbabilities& g, const OneHot& a);

/// Loss as a function of the measured <Z>, with g1 = (1 + z) / 2.
double loss_from_z(const LossSpec& spec, double z, const OneHot& a);

/// dL/d<Z>. Zero where a probability sits below the floor.
double dloss_dz(const LossSpec& spec, double z, const OneHot& a);

/// Predicted label: 0 when <Z> >= 0, else 1.
inline int predict(double z) { return z >= 0.0 ? 0 : 1; }

}  // namespace qadv::grad
