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
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qadv/circuits/circuit_template.hpp"
#include "qadv/grad/loss.hpp"
#include "qadv/sim/state_vector.hpp"

namespace qadv::grad {

/// Maps the state after a gate list to a scalar observable value. It may
/// modify the state (e.g. evolve it further before measuring).
using Readout = std::function<double(sim::StateVector&)>;

Readout z_readout(int qubit);

/// Shot-sampled <Z>. The rng is shared, so use with threads = 1 only.
Readout sampled_z_readout(int qubit, std::size_t shots, Rng& rng);

/// d readout / d angle for the rotation at each listed gate position, by the
/// two-term shift rule (f(a + pi/2) - f(a - pi/2)) / 2.
///
/// The state before each shifted gate is built incrementally from
/// `initial`, so every evaluation performs exactly the same floating-point
/// operations as a full simulation of the shifted circuit.
std::vector<double> shift_derivatives(const sim::StateVector& initial, std::span<const sim::Gate> gates,
                                      std::span<const std::size_t> positions, const Readout& readout,
                                      int threads = 1);

/// Shift derivative of <Z_qubit> with respect to the bound angle of the
/// template's k-th angle slot, for a circuit started in |0...0>.
double param_shift(const circuits::CircuitTemplate& tmpl, std::span<const double> x_encoded,
                   std::span<const double> theta, int qubit, std::size_t slot);

/// A template read out on one qubit with a loss.
struct Classifier {
    std::shared_ptr<const circuits::CircuitTemplate> circuit;
    int readout_qubit = 5;
    LossSpec loss;
};

/// Either classical features (bound into data slots, circuit starts in
/// |0...0>) or a prepared input state (amplitude input).
struct Example {
    std::vector<double> x;
    std::shared_ptr<const sim::StateVector> input;
    int label = 0;
    std::string id;
};

sim::StateVector initial_state(const Classifier& model, const Example& ex);

/// <Z> on the readout qubit.
double forward_z(const Classifier& model, const Example& ex, std::span<const double> theta);

/// dL/dtheta_j for each requested j, in the order given.
std::vector<double> loss_grad_theta(const Classifier& model, const Example& ex, std::span<const double> theta,
                                    std::span<const int> indices, int threads = 1);

/// dL/dx_i over every data index i; a slot contributes weight * (shift
/// derivative). Entries for padding indices are returned but carry no
/// meaning for the original features.
std::vector<double> loss_grad_input(const Classifier& model, const Example& ex, std::span<const double> theta,
                                    int threads = 1);

/// Perturbation layer in front of a fixed evolution and a classifier:
/// state = C(theta) E U(delta) |base>, delta_i = kappa sin(psi_i).
struct PerturbedModel {
    std::shared_ptr<const circuits::CircuitTemplate> perturbation;
    double kappa = 0.5;
    std::shared_ptr<const sim::StateVector> base;
    std::function<void(sim::StateVector&)> evolution;
    Classifier classifier;
};

std::vector<double> perturbation_angles(double kappa, std::span<const double> psi);

/// The prepared state E U(delta) |base>, before the classifier.
sim::StateVector perturbed_state(const PerturbedModel& model, std::span<const double> psi);

double perturbed_forward_z(const PerturbedModel& model, std::span<const double> psi, std::span<const double> theta);

/// dL/dpsi_i = kappa cos(psi_i) * dL/ddelta_i.
std::vector<double> loss_grad_psi(const PerturbedModel& model, std::span<const double> psi,
                                  std::span<const double> theta, int label, int threads = 1);

}  // namespace qadv::grad
