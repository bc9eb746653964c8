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

#include "qadv/sim/noise.hpp"

#include "qadv/util/error.hpp"
#include "qadv/util/rng.hpp"

namespace qadv::sim {

int apply_stochastic_pauli(StateVector& state, const NoiseSpec& spec, Rng& rng) {
    const double p = spec.per_qubit_pauli_prob;
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InputError("apply_stochastic_pauli: probability must lie in [0, 1]");
    }
    if (p == 0.0) {
        return 0;
    }
    int applied = 0;
    for (int q = 1; q <= state.n_qubits(); ++q) {
        if (rng.uniform() < p) {
            static constexpr Pauli kPaulis[] = {Pauli::X, Pauli::Y, Pauli::Z};
            state.apply_pauli(q, kPaulis[rng.index(3)]);
            ++applied;
        }
    }
    return applied;
}

}  // namespace qadv::sim
