// Copyright 2026 The blgi Authors
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

#ifndef BLGI_QCORE_CHANNELS_HPP
#define BLGI_QCORE_CHANNELS_HPP

#include "qcore/rng.hpp"
#include "qcore/state.hpp"
#include "qcore/types.hpp"

namespace blgi::qcore {

/// sigma(theta) = cos(theta)·Z + sin(theta)·X.
Matrix2 bloch_observable(MeasurementAxis axis);

/// Eigenprojector of sigma(theta) for eigenvalue `sign` (+1 or -1).
Matrix2 eigenprojector(MeasurementAxis axis, int sign);

/// k± = sqrt((I ± V·sigma(theta)) / 2), the square root taken through the
/// eigendecomposition of the 2x2 operand. Outcome probabilities are
/// p± = (1 ± V·<sigma(theta)>) / 2.
KrausPair weak_kraus(CouplingStrength v, MeasurementAxis axis);

struct MeasurementOutcome {
  int raw;             // +1 or -1
  double probability;  // probability of the realized branch
  QuantumState post_state;
};

/// Samples a two-outcome weak measurement of `qubit` and returns the
/// normalized conditional state. Throws MeasurementError if the sampled
/// branch has probability below kMinOutcomeProbability.
MeasurementOutcome weak_measure(const QuantumState& state, int qubit, MeasurementAxis axis, CouplingStrength v,
                                SeedStream& rng);

/// weak_measure at V = 1.
MeasurementOutcome projective_measure(const QuantumState& state, int qubit, MeasurementAxis axis, SeedStream& rng);

/// Deterministic branch: probability of `outcome` and the conditional state.
/// Throws MeasurementError when the branch probability is below
/// kMinOutcomeProbability.
MeasurementOutcome measure_branch(const QuantumState& state, int qubit, MeasurementAxis axis, CouplingStrength v,
                                  int outcome);

/// Non-selective channel rho -> k+ rho k+† + k- rho k-†. Always returns a
/// density operator.
QuantumState apply_nonselective(const QuantumState& state, int qubit, MeasurementAxis axis, CouplingStrength v);

/// alpha = raw / V.
inline double rescale(double raw, CouplingStrength v) { return raw / v.value(); }

/// raw + bias + N(0, sigma). Applied to the raw signal, before rescale().
double apply_readout_noise(double raw, const NoiseModel& model, SeedStream& rng);

/// Unitary coupling of a system qubit (more significant) to an ancilla in |0>
/// (less significant): the system's sigma(theta) eigenstate |e±> rotates the
/// ancilla to a state with <Z> = ±V. Reading the ancilla in Z reproduces
/// weak_kraus(v, axis) on the system.
Eigen::Matrix4cd ancilla_coupling_unitary(CouplingStrength v, MeasurementAxis axis);

/// Apply a 4x4 operator to qubits (first, second), `first` being the more
/// significant factor of the operator.
QuantumState apply_two_qubit(const QuantumState& state, int first, int second, const Eigen::Matrix4cd& op);

}  // namespace blgi::qcore

#endif  // BLGI_QCORE_CHANNELS_HPP
