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

#include <array>
#include <complex>
#include <string_view>

namespace qadv::sim {

using Amplitude = std::complex<double>;

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<Amplitude, 4>;

enum class GateKind { RX, RY, RZ, RPHI, H, CNOT, CZ };

std::string_view gate_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

bool is_rotation(GateKind kind);
bool is_two_qubit(GateKind kind);

/// A gate instance. Qubit indices are one-based; for CNOT `q0` is the
/// control and `q1` the target. `angle` is used by the rotations, `phase`
/// (the equatorial axis angle) only by RPHI.
struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 1;
    int q1 = 0;
    double angle = 0.0;
    double phase = 0.0;

    static Gate rx(int q, double theta) { return {GateKind::RX, q, 0, theta, 0.0}; }
    static Gate ry(int q, double theta) { return {GateKind::RY, q, 0, theta, 0.0}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, 0, theta, 0.0}; }
    static Gate rphi(int q, double theta, double phi) { return {GateKind::RPHI, q, 0, theta, phi}; }
    static Gate h(int q) { return {GateKind::H, q, 0, 0.0, 0.0}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0, 0.0}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, a, b, 0.0, 0.0}; }

    bool operator==(const Gate&) const = default;
};

/// The inverse gate: rotation angles negated, H/CNOT/CZ self-inverse.
Gate inverse(const Gate& gate);

/// Matrix of a single-qubit gate.
///   RX(t) = exp(-i t X / 2), RY, RZ analogous,
///   RPHI(t, p) = exp(-i t (cos p X + sin p Y) / 2)
///              = RZ(p) RX(t) RZ(-p) as an operator product.
Mat2 single_qubit_matrix(const Gate& gate);

Mat2 multiply(const Mat2& a, const Mat2& b);

}  // namespace qadv::sim
