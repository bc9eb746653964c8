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

#include "qadv/sim/gate.hpp"

#include <cmath>
#include <string>

#include "qadv/util/error.hpp"

namespace qadv::sim {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return "RX";
        case GateKind::RY:
            return "RY";
        case GateKind::RZ:
            return "RZ";
        case GateKind::RPHI:
            return "RPHI";
        case GateKind::H:
            return "H";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::CZ:
            return "CZ";
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view name) {
    for (auto k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RPHI, GateKind::H, GateKind::CNOT,
                   GateKind::CZ}) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    throw FormatError("unknown gate kind '" + std::string(name) + "'");
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::RPHI;
}

bool is_two_qubit(GateKind kind) { return kind == GateKind::CNOT || kind == GateKind::CZ; }

Gate inverse(const Gate& gate) {
    Gate g = gate;
    if (is_rotation(gate.kind)) {
        g.angle = -gate.angle;
    }
    return g;
}

Mat2 single_qubit_matrix(const Gate& gate) {
    using namespace std::complex_literals;
    const double c = std::cos(gate.angle / 2);
    const double s = std::sin(gate.angle / 2);
    switch (gate.kind) {
        case GateKind::RX:
            return {c, -1i * s, -1i * s, c};
        case GateKind::RY:
            return {c, -s, s, c};
        case GateKind::RZ:
            return {std::polar(1.0, -gate.angle / 2), 0.0, 0.0, std::polar(1.0, gate.angle / 2)};
        case GateKind::RPHI:
            return {c, -1i * std::polar(s, -gate.phase), -1i * std::polar(s, gate.phase), c};
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            return {r, r, r, -r};
        }
        default:
            throw InputError("single_qubit_matrix: " + std::string(gate_name(gate.kind)) + " is a two-qubit gate");
    }
}

Mat2 multiply(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

}  // namespace qadv::sim
