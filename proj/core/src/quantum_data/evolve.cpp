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

#include "qadv/quantum_data/evolve.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>

#include "qadv/util/error.hpp"

namespace qadv::qdata {

namespace {

using cd = std::complex<double>;

double vnorm(const std::vector<cd>& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return std::sqrt(s);
}

cd vdot(const std::vector<cd>& a, const std::vector<cd>& b) {
    cd s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

struct Krylov {
    std::vector<std::vector<cd>> basis;
    std::vector<double> alpha;
    std::vector<double> beta;  // beta[j] couples basis j and j+1; beta.back() is the residual norm
};

// Lanczos with full reorthogonalization, starting from unit vector v.
Krylov lanczos(const Hamiltonian& h, const std::vector<cd>& v, int m) {
    Krylov k;
    k.basis.push_back(v);
    std::vector<cd> w(v.size());
    for (int j = 0; j < m; ++j) {
        h.apply(k.basis[static_cast<std::size_t>(j)], w);
        const double hq = vnorm(w);
        // H is Hermitian, so alpha is real.
        const double a = vdot(k.basis[static_cast<std::size_t>(j)], w).real();
        k.alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : k.basis) {
                const cd c = vdot(q, w);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
            }
        }
        const double b = vnorm(w);
        k.beta.push_back(b);
        // A residual at roundoff level relative to |H q| is a breakdown; normalizing
        // it would add a direction whose couplings T does not hold.
        if (b <= 1e-9 * hq || j + 1 == m) {
            break;
        }
        for (auto& x : w) x /= b;
        k.basis.push_back(w);
    }
    return k;
}

}  // namespace

sim::StateVector evolve(const sim::StateVector& state, const Hamiltonian& h, double t, const EvolveOptions& opts) {
    if (h.dim() != state.dim()) {
        throw InputError("evolve: Hamiltonian and state dimensions differ");
    }
    if (!(t >= 0.0)) {
        throw InputError("evolve: time must be non-negative");
    }
    if (opts.krylov_dim < 2 || !(opts.tol > 0.0)) {
        throw InputError("evolve: invalid options");
    }
    std::vector<cd> v(state.amplitudes().begin(), state.amplitudes().end());
    const double n0 = vnorm(v);
    if (!(std::abs(n0 - 1.0) < 1e-8)) {
        throw InputError("evolve: input state is not normalized");
    }
    double remaining = t;
    double dt = t;
    int substeps = 0;
    while (remaining > 0.0) {
        if (++substeps > opts.max_substeps) {
            throw NumericalError("evolve: Krylov iteration did not converge within the substep budget");
        }
        const double nv = vnorm(v);
        std::vector<cd> q0(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) q0[i] = v[i] / nv;
        const Krylov k = lanczos(h, q0, opts.krylov_dim);
        const int m = static_cast<int>(k.alpha.size());
        Eigen::VectorXd diag(m);
        Eigen::VectorXd sub(std::max(m - 1, 0));
        for (int j = 0; j < m; ++j) diag(j) = k.alpha[static_cast<std::size_t>(j)];
        for (int j = 0; j + 1 < m; ++j) sub(j) = k.beta[static_cast<std::size_t>(j)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub);
        const Eigen::MatrixXd& Q = es.eigenvectors();
        const Eigen::VectorXd& lam = es.eigenvalues();
        const double residual = k.beta.back();

        dt = std::min(dt, remaining);
        Eigen::VectorXcd c(m);
        for (int attempt = 0;; ++attempt) {
            // c = exp(-i T dt) e1
            for (int r = 0; r < m; ++r) {
                cd acc{0.0, 0.0};
                for (int s = 0; s < m; ++s) acc += Q(r, s) * std::exp(cd(0.0, -lam(s) * dt)) * Q(0, s);
                c(r) = acc;
            }
            const double err = dt * residual * std::abs(c(m - 1)) * nv;
            const double budget = opts.tol * dt / t;
            if (err <= budget) {
                break;
            }
            if (attempt > 60) {
                throw NumericalError("evolve: step size underflow");
            }
            dt *= std::max(0.1, 0.9 * std::pow(budget / err, 1.0 / m));
        }
        std::vector<cd> next(v.size(), cd{0.0, 0.0});
        for (int j = 0; j < m; ++j) {
            const cd cj = c(j) * nv;
            const auto& b = k.basis[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < v.size(); ++i) next[i] += cj * b[i];
        }
        v = std::move(next);
        remaining -= dt;
        if (remaining < 1e-15 * t) {
            remaining = 0.0;
        }
        // Let the next substep try a longer step.
        dt *= 2.0;
    }
    const double nf = vnorm(v);
    for (auto& a : v) a /= nf;
    return sim::StateVector::from_amplitudes(state.n_qubits(), std::move(v));
}

sim::StateVector evolve(const sim::StateVector& state, const AAParams& params, const EvolveOptions& opts) {
    return evolve(state, build_hamiltonian(params), params.tau, opts);
}

SectorPropagator::SectorPropagator(const Hamiltonian& h, double t) : n_(h.n_qubits) {
    std::vector<std::vector<std::uint32_t>> sectors(static_cast<std::size_t>(n_ + 1));
    for (std::uint32_t i = 0; i < h.dim(); ++i) {
        sectors[static_cast<std::size_t>(std::popcount(i))].push_back(i);
    }
    for (auto& basis : sectors) {
        const auto d = static_cast<Eigen::Index>(basis.size());
        std::vector<Eigen::Index> local(h.dim(), -1);
        for (Eigen::Index a = 0; a < d; ++a) local[basis[static_cast<std::size_t>(a)]] = a;
        Eigen::MatrixXd hs = Eigen::MatrixXd::Zero(d, d);
        for (Eigen::Index a = 0; a < d; ++a) {
            const auto r = basis[static_cast<std::size_t>(a)];
            for (auto k = h.row_ptr[r]; k < h.row_ptr[r + 1]; ++k) {
                const auto b = local[h.col[k]];
                if (b < 0) {
                    throw NumericalError("SectorPropagator: Hamiltonian does not conserve excitation number");
                }
                hs(a, b) = h.val[k];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hs);
        const Eigen::MatrixXd& Q = es.eigenvectors();
        Eigen::VectorXcd ph(d);
        for (Eigen::Index s = 0; s < d; ++s) ph(s) = std::exp(cd(0.0, -es.eigenvalues()(s) * t));
        const Eigen::MatrixXcd u = Q.cast<cd>() * ph.asDiagonal() * Q.transpose().cast<cd>();
        Block blk;
        blk.basis = std::move(basis);
        blk.u.resize(static_cast<std::size_t>(d * d));
        for (Eigen::Index a = 0; a < d; ++a)
            for (Eigen::Index b = 0; b < d; ++b) blk.u[static_cast<std::size_t>(a * d + b)] = u(a, b);
        blocks_.push_back(std::move(blk));
    }
}

SectorPropagator::SectorPropagator(const AAParams& params) : SectorPropagator(build_hamiltonian(params), params.tau) {}

void SectorPropagator::apply(sim::StateVector& state) const {
    if (state.n_qubits() != n_) {
        throw InputError("SectorPropagator: qubit count mismatch");
    }
    auto amps = state.mutable_amplitudes();
    std::vector<cd> x;
    for (const auto& blk : blocks_) {
        const std::size_t d = blk.basis.size();
        x.resize(d);
        for (std::size_t a = 0; a < d; ++a) x[a] = amps[blk.basis[a]];
        for (std::size_t a = 0; a < d; ++a) {
            cd acc{0.0, 0.0};
            const cd* row = blk.u.data() + a * d;
            for (std::size_t b = 0; b < d; ++b) acc += row[b] * x[b];
            amps[blk.basis[a]] = acc;
        }
    }
}

}  // namespace qadv::qdata
