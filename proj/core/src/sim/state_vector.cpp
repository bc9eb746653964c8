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

#include "qadv/sim/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qadv/util/error.hpp"
#include "qadv/util/rng.hpp"

namespace qadv::sim {

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw InputError("StateVector: qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<Amplitude> amplitudes) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw InputError("StateVector: qubit count out of range");
    }
    if (amplitudes.size() != (std::size_t{1} << n_qubits)) {
        throw InputError("StateVector: expected " + std::to_string(std::size_t{1} << n_qubits) +
                         " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    StateVector s(n_qubits, std::move(amplitudes));
    if (std::abs(s.norm_squared() - 1.0) > 1e-10) {
        throw InputError("StateVector: amplitudes are not normalized");
    }
    return s;
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 1 || qubit > n_) {
        throw InputError("qubit index " + std::to_string(qubit) + " out of range [1, " + std::to_string(n_) +
                         "]");
    }
}

void StateVector::apply(const Gate& gate) {
    check_qubit(gate.q0);
    if (is_two_qubit(gate.kind)) {
        check_qubit(gate.q1);
        if (gate.q0 == gate.q1) {
            throw InputError(std::string(gate_name(gate.kind)) + ": qubit indices must be distinct");
        }
    }
    switch (gate.kind) {
        case GateKind::RX:
            apply_rx(stride(gate.q0), gate.angle);
            break;
        case GateKind::RY:
            apply_ry(stride(gate.q0), gate.angle);
            break;
        case GateKind::RZ:
            apply_rz(stride(gate.q0), gate.angle);
            break;
        case GateKind::RPHI:
        case GateKind::H:
            apply_single(gate.q0, single_qubit_matrix(gate));
            break;
        case GateKind::CNOT:
            apply_cnot(stride(gate.q0), stride(gate.q1));
            break;
        case GateKind::CZ:
            apply_cz(stride(gate.q0), stride(gate.q1));
            break;
    }
}

void StateVector::apply_single(int qubit, const Mat2& m) {
    check_qubit(qubit);
    const std::size_t s = stride(qubit);
    const std::size_t dim = amps_.size();
    Amplitude* a = amps_.data();
    for (std::size_t base = 0; base < dim; base += 2 * s) {
        for (std::size_t i = base; i < base + s; ++i) {
            const Amplitude x0 = a[i];
            const Amplitude x1 = a[i + s];
            a[i] = m[0] * x0 + m[1] * x1;
            a[i + s] = m[2] * x0 + m[3] * x1;
        }
    }
}

// The rotation kernels work on the interleaved (re, im) doubles directly;
// std::complex multiplication is not vectorized well with default flags.
void StateVector::apply_rx(std::size_t s, double angle) {
    const double c = std::cos(angle / 2);
    const double sn = std::sin(angle / 2);
    const std::size_t dim = amps_.size();
    double* a = reinterpret_cast<double*>(amps_.data());
    for (std::size_t base = 0; base < dim; base += 2 * s) {
        double* lo = a + 2 * base;
        double* hi = a + 2 * (base + s);
        for (std::size_t k = 0; k < s; ++k) {
            const double r0 = lo[2 * k], i0 = lo[2 * k + 1];
            const double r1 = hi[2 * k], i1 = hi[2 * k + 1];
            // [c, -i s; -i s, c]
            lo[2 * k] = c * r0 + sn * i1;
            lo[2 * k + 1] = c * i0 - sn * r1;
            hi[2 * k] = sn * i0 + c * r1;
            hi[2 * k + 1] = -sn * r0 + c * i1;
        }
    }
}

void StateVector::apply_ry(std::size_t s, double angle) {
    const double c = std::cos(angle / 2);
    const double sn = std::sin(angle / 2);
    const std::size_t dim = amps_.size();
    double* a = reinterpret_cast<double*>(amps_.data());
    for (std::size_t base = 0; base < dim; base += 2 * s) {
        double* lo = a + 2 * base;
        double* hi = a + 2 * (base + s);
        for (std::size_t k = 0; k < 2 * s; ++k) {
            const double x0 = lo[k];
            const double x1 = hi[k];
            lo[k] = c * x0 - sn * x1;
            hi[k] = sn * x0 + c * x1;
        }
    }
}

void StateVector::apply_rz(std::size_t s, double angle) {
    const double c = std::cos(angle / 2);
    const double sn = std::sin(angle / 2);
    const std::size_t dim = amps_.size();
    double* a = reinterpret_cast<double*>(amps_.data());
    for (std::size_t base = 0; base < dim; base += 2 * s) {
        double* lo = a + 2 * base;
        double* hi = a + 2 * (base + s);
        for (std::size_t k = 0; k < s; ++k) {
            // lo *= e^{-i a/2}, hi *= e^{+i a/2}
            const double r0 = lo[2 * k], i0 = lo[2 * k + 1];
            lo[2 * k] = c * r0 + sn * i0;
            lo[2 * k + 1] = c * i0 - sn * r0;
            const double r1 = hi[2 * k], i1 = hi[2 * k + 1];
            hi[2 * k] = c * r1 - sn * i1;
            hi[2 * k + 1] = c * i1 + sn * r1;
        }
    }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    const std::size_t dim = amps_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & control) && !(i & target)) {
            std::swap(amps_[i], amps_[i | target]);
        }
    }
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
    const std::size_t dim = amps_.size();
    const std::size_t both = a | b;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & both) == both) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply_pauli(int qubit, Pauli p) {
    check_qubit(qubit);
    const std::size_t s = stride(qubit);
    const std::size_t dim = amps_.size();
    using namespace std::complex_literals;
    for (std::size_t base = 0; base < dim; base += 2 * s) {
        for (std::size_t i = base; i < base + s; ++i) {
            switch (p) {
                case Pauli::X:
                    std::swap(amps_[i], amps_[i + s]);
                    break;
                case Pauli::Y: {
                    const Amplitude x0 = amps_[i];
                    amps_[i] = -1i * amps_[i + s];
                    amps_[i + s] = 1i * x0;
                    break;
                }
                case Pauli::Z:
                    amps_[i + s] = -amps_[i + s];
                    break;
            }
        }
    }
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto& a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

void StateVector::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw NumericalError("StateVector::normalize: zero vector");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps_) {
        a *= inv;
    }
}

double StateVector::expectation_z(int qubit) const {
    check_qubit(qubit);
    const std::size_t s = stride(qubit);
    double p0 = 0.0;
    double p1 = 0.0;
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * s) {
        for (std::size_t i = base; i < base + s; ++i) {
            p0 += std::norm(amps_[i]);
            p1 += std::norm(amps_[i + s]);
        }
    }
    return p0 - p1;
}

double StateVector::expectation(const Observable& obs) const {
    const double z = expectation_z(obs.qubit);
    switch (obs.kind) {
        case ObservableKind::PAULI_Z:
            return z;
        case ObservableKind::PROJECTOR_PLUS:
            return 0.5 * (1.0 + z);
        case ObservableKind::PROJECTOR_MINUS:
            return 0.5 * (1.0 - z);
    }
    return z;
}

ClassProbabilities StateVector::class_probabilities(int qubit) const {
    const double z = std::clamp(expectation_z(qubit), -1.0, 1.0);
    ClassProbabilities g;
    g.g1 = 0.5 * (1.0 + z);
    g.g2 = 1.0 - g.g1;
    return g;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

StateVector init_basis_state(int n_qubits, std::string_view bits) {
    if (bits.size() != static_cast<std::size_t>(n_qubits)) {
        throw InputError("init_basis_state: bitstring length " + std::to_string(bits.size()) +
                         " does not match qubit count " + std::to_string(n_qubits));
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InputError("init_basis_state: bitstring must contain only '0' and '1'");
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    StateVector s(n_qubits);
    auto amps = s.mutable_amplitudes();
    amps[0] = 0.0;
    amps[index] = 1.0;
    return s;
}

double overlap_fidelity(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw InputError("overlap_fidelity: qubit counts differ");
    }
    Amplitude acc{0.0, 0.0};
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return std::min(1.0, std::norm(acc));
}

void apply_all(StateVector& state, std::span<const Gate> gates) {
    for (const auto& g : gates) {
        state.apply(g);
    }
}

std::vector<std::uint64_t> sample_bitstrings(const StateVector& state, std::size_t shots, Rng& rng) {
    std::vector<double> cdf(state.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        acc += std::norm(state[i]);
        cdf[i] = acc;
    }
    std::vector<std::uint64_t> out(shots);
    for (auto& o : out) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        o = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
    }
    return out;
}

double sample_expectation_z(const StateVector& state, int qubit, std::size_t shots, Rng& rng) {
    if (shots == 0) {
        throw InputError("sample_expectation_z: shots must be positive");
    }
    const double p0 = state.class_probabilities(qubit).g1;
    std::size_t zeros = 0;
    for (std::size_t k = 0; k < shots; ++k) {
        zeros += rng.uniform() < p0;
    }
    return (2.0 * static_cast<double>(zeros) - static_cast<double>(shots)) / static_cast<double>(shots);
}

}  // namespace qadv::sim
