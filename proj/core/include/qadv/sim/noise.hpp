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

#include "qadv/sim/state_vector.hpp"

namespace qadv::sim {

/// Independent per-qubit Pauli channel; p = 0 is the exact noiseless channel.
struct NoiseSpec {
    double per_qubit_pauli_prob = 0.0;
};

/// One stochastic trajectory step: each qubit independently receives, with
/// probability p, a Pauli drawn uniformly from {X, Y, Z}. Returns how many
/// Paulis were applied.
int apply_stochastic_pauli(StateVector& state, const NoiseSpec& spec, Rng& rng);

}  // namespace qadv::sim
