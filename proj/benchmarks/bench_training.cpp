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

#include <benchmark/benchmark.h>

#include <memory>

#include "qadv/circuits/architectures.hpp"
#include "qadv/optim/train.hpp"
#include "qadv/util/rng.hpp"

namespace {

using namespace qadv;

grad::Classifier interleaved_model() {
    grad::Classifier m;
    m.circuit = std::make_shared<const circuits::CircuitTemplate>(circuits::build_interleaved_classifier({}));
    return m;
}

void BM_GroupGradient(benchmark::State& state) {
    const auto model = interleaved_model();
    Rng rng(2);
    grad::Example ex;
    ex.x.resize(260);
    for (auto& v : ex.x) v = 0.1 * rng.uniform();
    std::vector<double> theta(260);
    for (auto& v : theta) v = rng.uniform(0, 6.28);
    const auto group = circuits::params_on_qubit(*model.circuit, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grad::loss_grad_theta(model, ex, theta, group));
    }
}
BENCHMARK(BM_GroupGradient)->Unit(benchmark::kMillisecond);

void BM_FullGradient(benchmark::State& state) {
    const auto model = interleaved_model();
    grad::Example ex;
    ex.x.assign(260, 0.05);
    std::vector<double> theta(260, 0.3);
    std::vector<int> all(260);
    for (int j = 0; j < 260; ++j) all[static_cast<std::size_t>(j)] = j;
    for (auto _ : state) {
        benchmark::DoNotOptimize(grad::loss_grad_theta(model, ex, theta, all, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_FullGradient)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
