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

#include "qadv/quantum_data/dataset.hpp"

namespace {

using namespace qadv;

qdata::AAParams params(double v_over_g) { return qdata::sample_params({}, v_over_g, 0.7); }

void BM_LanczosEvolveNeel(benchmark::State& state) {
    const auto p = params(static_cast<double>(state.range(0)));
    const auto h = qdata::build_hamiltonian(p);
    const auto neel = qdata::neel_state(10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qdata::evolve(neel, h, p.tau));
    }
}
BENCHMARK(BM_LanczosEvolveNeel)->Arg(0)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SectorPropagatorBuild(benchmark::State& state) {
    const auto p = params(4.5);
    for (auto _ : state) {
        qdata::SectorPropagator prop(p);
        benchmark::DoNotOptimize(&prop);
    }
}
BENCHMARK(BM_SectorPropagatorBuild)->Unit(benchmark::kMillisecond);

void BM_SectorPropagatorApply(benchmark::State& state) {
    const qdata::SectorPropagator prop(params(4.5));
    sim::StateVector s(10);
    s.apply(sim::Gate::rx(1, 0.3));
    s.apply(sim::Gate::rx(4, 0.9));
    for (auto _ : state) {
        prop.apply(s);
    }
}
BENCHMARK(BM_SectorPropagatorApply)->Unit(benchmark::kMicrosecond);

}  // namespace
