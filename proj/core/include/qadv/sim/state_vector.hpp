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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qadv/sim/gate.hpp"

namespace qadv {
class Rng;
}

namespace qadv::sim {

inline constexpr int kMaxQubits = 20;

enum class Pauli { X, Y, Z };

enum class ObservableKind { PAULI_Z, PROJECTOR_PLUS, PROJECTOR_MINUS };

struct Observable {
    ObservableKind kind = ObservableKind::PAULI_Z;
    int qubit = 1;
};

/// (g1, g2) = (P(|0>), P(|1>)) on the measured qubit; class 1 is spin +1.
struct ClassProbabilities {
    double g1 = 0.0;
    double g2 = 0.0;
};

/// Pure n-qubit state as 2^n double-precision amplitudes.
///
/// Qubit 1 is the most-significant bit of the amplitude index, so basis
/// bitstrings read left-to-right as qubits 1..n. Gates act in place using
/// stride arithmetic; no full operator is ever formed.
class StateVector {
   public:
    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits);

    /// Takes ownership of explicit amplitudes; the norm must be 1 within 1e-10.
    static StateVector from_amplitudes(int n_qubits, std::vector<Amplitude> amplitudes);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }

    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> mutable_amplitudes() { return amps_; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    void apply(const Gate& gate);
    void apply_single(int qubit, const Mat2& m);
    void apply_pauli(int qubit, Pauli p);

    double norm_squared() const;
    void normalize();

    double expectation_z(int qubit) const;
    double expectation(const Observable& obs) const;
    ClassProbabilities class_probabilities(int qubit) const;

    /// Probability of each computational basis state.
    std::vector<double> probabilities() const;

    /// Bit position (from the least-significant end) of a one-based qubit.
    std::size_t stride(int qubit) const { return std::size_t{1} << (n_ - qubit); }

   private:
    StateVector(int n_qubits, std::vector<Amplitude> amplitudes);
    void check_qubit(int qubit) const;

    void apply_rx(std::size_t stride, double angle);
    void apply_ry(std::size_t stride, double angle);
    void apply_rz(std::size_t stride, double angle);
    void apply_cnot(std::size_t control, std::size_t target);
    void apply_cz(std::size_t a, std::size_t b);

    int n_;
    std::vector<Amplitude> amps_;
};

/// Computational basis state; `bits[k-1]` is qubit k.
StateVector init_basis_state(int n_qubits, std::string_view bits);

/// |<a|b>|^2.
double overlap_fidelity(const StateVector& a, const StateVector& b);

/// Applies each gate in order.
void apply_all(StateVector& state, std::span<const Gate> gates);

/// Bitstring indices drawn from |amplitude|^2.
std::vector<std::uint64_t> sample_bitstrings(const StateVector& state, std::size_t shots, Rng& rng);

/// Shot-noise estimate of <Z_k> from `shots` projective measurements.
double sample_expectation_z(const StateVector& state, int qubit, std::size_t shots, Rng& rng);

}  // namespace qadv::sim
