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

#include "qadv/grad/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qadv/util/error.hpp"

namespace qadv::grad {

namespace {

void check_one_hot(const OneHot& a) {
    const bool ok = (a[0] == 1.0 && a[1] == 0.0) || (a[0] == 0.0 && a[1] == 1.0);
    if (!ok) {
        throw InputError("loss: label must be one-hot");
    }
}

sim::ClassProbabilities probs_from_z(double z) {
    const double zc = std::clamp(z, -1.0, 1.0);
    sim::ClassProbabilities g;
    g.g1 = 0.5 * (1.0 + zc);
    g.g2 = 1.0 - g.g1;
    return g;
}

}  // namespace

std::string_view loss_name(LossKind kind) { return kind == LossKind::MSE ? "MSE" : "CROSS_ENTROPY"; }

LossKind parse_loss_kind(std::string_view name) {
    if (name == "CROSS_ENTROPY" || name == "cross_entropy" || name == "ce") return LossKind::CROSS_ENTROPY;
    if (name == "MSE" || name == "mse") return LossKind::MSE;
    throw InputError("unknown loss kind '" + std::string(name) + "'");
}

OneHot one_hot(int label) {
    if (label != 0 && label != 1) {
        throw InputError("one_hot: binary labels must be 0 or 1");
    }
    return label == 0 ? OneHot{1.0, 0.0} : OneHot{0.0, 1.0};
}

double loss(const LossSpec& spec, const sim::ClassProbabilities& g, const OneHot& a) {
    if (!(std::abs(g.g1 + g.g2 - 1.0) <= 1e-9) || g.g1 < -1e-9 || g.g2 < -1e-9) {
        throw InputError("loss: class probabilities must lie on the simplex");
    }
    if (!(spec.floor > 0.0)) {
        throw InputError("loss: probability floor must be positive");
    }
    check_one_hot(a);
    if (spec.kind == LossKind::MSE) {
        const double d1 = a[0] - g.g1;
        const double d2 = a[1] - g.g2;
        return d1 * d1 + d2 * d2;
    }
    double out = 0.0;
    if (a[0] != 0.0) out -= a[0] * std::log(std::max(g.g1, spec.floor));
    if (a[1] != 0.0) out -= a[1] * std::log(std::max(g.g2, spec.floor));
    return out;
}

double loss_from_z(const LossSpec& spec, double z, const OneHot& a) { return loss(spec, probs_from_z(z), a); }

double dloss_dz(const LossSpec& spec, double z, const OneHot& a) {
    check_one_hot(a);
    const auto g = probs_from_z(z);
    // dg1/dz = 1/2, dg2/dz = -1/2.
    if (spec.kind == LossKind::MSE) {
        return 0.5 * (-2.0 * (a[0] - g.g1) + 2.0 * (a[1] - g.g2));
    }
    const double dg1 = (a[0] != 0.0 && g.g1 > spec.floor) ? -a[0] / g.g1 : 0.0;
    const double dg2 = (a[1] != 0.0 && g.g2 > spec.floor) ? -a[1] / g.g2 : 0.0;
    return 0.5 * (dg1 - dg2);
}

}  // namespace qadv::grad
