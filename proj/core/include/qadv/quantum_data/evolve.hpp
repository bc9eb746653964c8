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

#include <memory>
#include <vector>

#include "qadv/quantum_data/hamiltonian.hpp"
#include "qadv/sim/state_vector.hpp"

namespace qadv::qdata {

struct EvolveOptions {
    double tol = 1e-8;
    int krylov_dim = 30;
    int max_substeps = 100000;
};

/// exp(-i H t) |state> by restarted Lanczos with adaptive substeps; the
/// accumulated a-posteriori error estimate stays below opts.tol. The output
/// is renormalized.
sim::StateVector evolve(const sim::StateVector& state, const Hamiltonian& h, double t, const EvolveOptions& opts = {});

/// Evolves for params.tau under build_hamiltonian(params).
sim::StateVector evolve(const sim::StateVector& state, const AAParams& params, const EvolveOptions& opts = {});

/// Exact exp(-i H t) stored block-wise per excitation-number sector (H
/// conserves the number of 1 bits). Costs a dense eigendecomposition per
/// sector once; afterwards each application is a few small dense products,
/// which suits repeated evolution of perturbed states. Immutable after
/// construction.
class SectorPropagator {
   public:
    SectorPropagator(const Hamiltonian& h, double t);
    SectorPropagator(const AAParams& params);

    int n_qubits() const { return n_; }
    void apply(sim::StateVector& state) const;

   private:
    struct Block {
        std::vector<std::uint32_t> basis;
        // Row-major dense unitary restricted to the sector.
        std::vector<sim::Amplitude> u;
    };
    int n_ = 0;
    std::vector<Block> blocks_;
};

}  // namespace qadv::qdata
