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
#include <cstdint>
#include <span>
#include <vector>

namespace qadv::optim {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    AdamState() = default;
    explicit AdamState(std::size_t n, AdamConfig config = {}) : m(n, 0.0), v(n, 0.0), cfg(config) {}

    std::vector<double> m;
    std::vector<double> v;
    std::int64_t t = 0;
    AdamConfig cfg;
};

/// Bias-corrected Adam descent step: params -= lr * mhat / (sqrt(vhat) + eps).
/// Callers maximizing an objective pass the negated gradient.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads, double lr);

}  // namespace qadv::optim
