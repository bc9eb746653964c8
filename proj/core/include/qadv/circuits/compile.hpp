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

#include <span>
#include <vector>

#include "qadv/sim/gate.hpp"

namespace qadv::circuits {

/// U = RPHI(theta_prime, phi) * RZ(theta) up to global phase, i.e. RZ is
/// applied first. A flag is false when the corresponding rotation is the
/// identity and is dropped.
struct ZPhiDecomposition {
    double theta = 0.0;
    double theta_prime = 0.0;
    double phi = 0.0;
    bool has_rz = false;
    bool has_rphi = false;
};

ZPhiDecomposition decompose_zphi(const sim::Mat2& u);

/// Merges every maximal run of single-qubit gates on a qubit into at most
/// RZ then RPHI. Two-qubit gates keep their relative order; pending runs on
/// their qubits are flushed right before them.
std::vector<sim::Gate> compile_single_qubit_runs(std::span<const sim::Gate> gates);

}  // namespace qadv::circuits
