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

#include "qadv/circuits/architectures.hpp"
#include "qadv/circuits/compile.hpp"
#include "qadv/sim/state_vector.hpp"
#include "qadv/util/rng.hpp"

namespace {

using namespace qadv;

void BM_ApplyRx(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    sim::StateVector s(n);
    int q = 1;
    for (auto _ : state) {
        s.apply(sim::Gate::rx(q, 0.3));
        q = q % n + 1;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ApplyRx)->Arg(4)->Arg(10)->Arg(14);

void BM_ApplyCnot(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    sim::StateVector s(n);
    s.apply(sim::Gate::rx(1, 0.4));
    for (auto _ : state) {
        s.apply(sim::Gate::cnot(1, n));
    }
}
BENCHMARK(BM_ApplyCnot)->Arg(10);

void BM_InterleavedForward(benchmark::State& state) {
    const auto tmpl = circuits::build_interleaved_classifier({});
    Rng rng(1);
    std::vector<double> x(260), theta(260);
    for (auto& v : x) v = rng.uniform();
    for (auto& v : theta) v = rng.uniform(0, 6.28);
    const auto bound = circuits::bind(tmpl, x, theta);
    for (auto _ : state) {
        sim::StateVector s(10);
        sim::apply_all(s, bound.gates);
        benchmark::DoNotOptimize(s.expectation_z(5));
    }
}
BENCHMARK(BM_InterleavedForward);

void BM_CompileInterleaved(benchmark::State& state) {
    const auto tmpl = circuits::build_interleaved_classifier({});
    std::vector<double> x(260, 0.1), theta(260, 0.2);
    const auto bound = circuits::bind(tmpl, x, theta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(circuits::compile_single_qubit_runs(bound.gates));
    }
}
BENCHMARK(BM_CompileInterleaved);

}  // namespace
