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

#include "oracles.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qadv::testing {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Mat identity2() { return Mat::Identity(2, 2); }

Mat projector(int bit) {
    Mat m = Mat::Zero(2, 2);
    m(bit, bit) = 1.0;
    return m;
}

}  // namespace

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Mat rotation(const Mat& generator, double t) {
    return std::cos(t / 2) * identity2() - kI * std::sin(t / 2) * generator;
}

Mat local_matrix(const sim::Gate& g) {
    switch (g.kind) {
        case sim::GateKind::RX:
            return rotation(pauli_x(), g.angle);
        case sim::GateKind::RY:
            return rotation(pauli_y(), g.angle);
        case sim::GateKind::RZ:
            return rotation(pauli_z(), g.angle);
        case sim::GateKind::RPHI:
            return rotation(std::cos(g.phase) * pauli_x() + std::sin(g.phase) * pauli_y(), g.angle);
        case sim::GateKind::H:
            return (pauli_x() + pauli_z()) / std::sqrt(2.0);
        default:
            break;
    }
    throw std::logic_error("local_matrix: two-qubit gate");
}

Mat embed(const Mat& m, int qubit, int n) {
    Mat out = Mat::Identity(1, 1);
    for (int q = 1; q <= n; ++q) {
        const Mat f = q == qubit ? m : identity2();
        out = Eigen::kroneckerProduct(out, f).eval();
    }
    return out;
}

Mat gate_unitary(const sim::Gate& g, int n) {
    if (g.kind == sim::GateKind::CNOT) {
        return embed(projector(0), g.q0, n) + embed(projector(1), g.q0, n) * embed(pauli_x(), g.q1, n);
    }
    if (g.kind == sim::GateKind::CZ) {
        return embed(projector(0), g.q0, n) + embed(projector(1), g.q0, n) * embed(pauli_z(), g.q1, n);
    }
    return embed(local_matrix(g), g.q0, n);
}

Vec to_eigen(const sim::StateVector& s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

Vec basis(int n, std::size_t index) {
    Vec v = Vec::Zero(Eigen::Index{1} << n);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

Vec dense_run(std::span<const sim::Gate> gates, int n, const Vec& input) {
    Vec v = input;
    for (const auto& g : gates) v = gate_unitary(g, n) * v;
    return v;
}

double fidelity(const Vec& a, const Vec& b) { return std::norm(a.dot(b)); }

double dense_z(const Vec& v, int qubit, int n) {
    return (v.adjoint() * embed(pauli_z(), qubit, n) * v)(0, 0).real();
}

std::vector<sim::Gate> random_gates(int n, int count, Rng& rng, std::span<const sim::GateKind> kinds) {
    std::vector<sim::Gate> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        const auto kind = kinds[rng.index(kinds.size())];
        const int q0 = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
        sim::Gate g{kind, q0, 0, rng.uniform(-M_PI, M_PI), rng.uniform(0.0, 2 * M_PI)};
        if (sim::is_two_qubit(kind)) {
            if (n < 2) continue;
            int q1 = q0;
            while (q1 == q0) q1 = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
            g.q1 = q1;
        }
        out.push_back(g);
    }
    return out;
}

sim::StateVector random_state(int n, Rng& rng) {
    std::vector<sim::Amplitude> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& x : a) {
        x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        norm += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(norm);
    return sim::StateVector::from_amplitudes(n, std::move(a));
}

Mat dense_aa_hamiltonian(const qdata::AAParams& p) {
    const int n = p.n_qubits;
    Mat h = Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (int k = 1; k < n; ++k) {
        h -= 0.5 * p.g * (embed(pauli_x(), k, n) * embed(pauli_x(), k + 1, n) +
                          embed(pauli_y(), k, n) * embed(pauli_y(), k + 1, n));
    }
    for (int k = 1; k <= n; ++k) {
        const double vk = p.V * std::cos(2 * M_PI * p.alpha * k + p.phi);
        h -= 0.5 * vk * embed(pauli_z(), k, n);
    }
    return h;
}

Vec expm_apply(const Mat& h, double t, const Vec& v) {
    const Mat a = (-kI * t) * h;
    return a.exp() * v;
}

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, double h) {
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double up = f(probe);
        probe[i] = x[i] - h;
        const double down = f(probe);
        probe[i] = x[i];
        out[i] = (up - down) / (2 * h);
    }
    return out;
}

}  // namespace qadv::testing
