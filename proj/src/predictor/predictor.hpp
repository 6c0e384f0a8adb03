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

#ifndef BLGI_PREDICTOR_PREDICTOR_HPP
#define BLGI_PREDICTOR_PREDICTOR_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "protocol/protocol.hpp"
#include "qcore/rng.hpp"

namespace blgi::predictor {

using protocol::ChshReport;
using qcore::CouplingStrength;
using qcore::MeasurementAxis;
using qcore::QuantumState;

/// How a sequential readout draws its record.
enum class ReadoutSampling {
  /// One weak measurement per step, `steps` draws.
  stepwise,
  /// Collapsed eigenvalue z ~ populations, then the +1 count ~
  /// Binomial(steps, (1 + z·v)/2). Same law for (mean, post_state) as
  /// stepwise, in O(1) draws.
  aggregated,
};

/// Per-step strength and length of a sequential weak readout.
struct SequentialReadoutParams {
  CouplingStrength v{0.05};
  std::uint64_t steps = 10000;
  ReadoutSampling sampling = ReadoutSampling::aggregated;

  void validate() const;
  /// steps·v² >= 25: the running mean resolves the collapsed eigenvalue.
  bool saturated() const;
};

struct SequenceResult {
  double mean;
  QuantumState post_state;
};

/// `steps` successive weak measurements of `qubit` along a fixed axis.
/// Returns the arithmetic mean of the ±1 outcomes and the conditioned state.
///
/// All steps share the eigenbasis of sigma(axis), so the conditioned state
/// is fixed by the two eigen-populations alone; the walk is run on those and
/// the accumulated diagonal Kraus product is applied once at the end. In
/// stepwise mode outcome probabilities and the final state match repeated
/// weak_measure calls draw for draw.
SequenceResult sequential_weak_sequence(const QuantumState& state, int qubit, MeasurementAxis axis,
                                        const SequentialReadoutParams& params, qcore::SeedStream& rng);

/// +1 for mean >= 0, -1 otherwise (a zero mean predicts +1).
inline int predict(double mean) { return mean < 0.0 ? -1 : 1; }

struct PredictionRecord {
  std::uint64_t trial_index = 0;
  std::uint32_t settings_id = 0;
  double trajectory_mean1 = 0.0;
  double trajectory_mean2 = 0.0;
  int predicted1 = 1;
  int predicted2 = 1;
  int actual1 = 1;
  int actual2 = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Same-axis prediction protocol. Each Bell qubit i is coupled with strength
/// system_v along axis_i to its own ancilla qubit, the ancillas are read out
/// sequentially in Z, and the Bell qubits are then measured projectively
/// along the same axis_i.
struct PredictionSetup {
  protocol::BellKind bell = protocol::BellKind::phi_plus;
  MeasurementAxis axis1;
  MeasurementAxis axis2;
  CouplingStrength system_v{0.3};
  SequentialReadoutParams readout;
  std::uint32_t settings_id = 0;

  void validate() const;
};

/// Builds a setup from protocol settings; requires a_i == b_i.
PredictionSetup prediction_setup(const protocol::Settings& settings, CouplingStrength system_v,
                                 const SequentialReadoutParams& readout);

/// Bell pair (qubits 0, 1) coupled to ancillas (qubits 2, 3), before readout.
QuantumState coupled_state(const PredictionSetup& setup);

PredictionRecord run_prediction_experiment(const PredictionSetup& setup, std::uint64_t trial_index,
                                           std::uint64_t master_seed);

std::vector<PredictionRecord> run_prediction_experiments(const PredictionSetup& setup, std::uint64_t count,
                                                         std::uint64_t master_seed, unsigned workers = 0);

struct AccuracyEstimate {
  double accuracy = 0.0;
  double lower = 0.0;  // Wilson 95%
  double upper = 0.0;
  std::size_t matches = 0;
  std::size_t total = 0;
};

/// Fraction of predicted_i == actual_i pooled over both qubits.
AccuracyEstimate prediction_accuracy(std::span<const PredictionRecord> records);

/// Wilson score interval for k successes out of n at normal quantile z.
AccuracyEstimate wilson_interval(std::size_t matches, std::size_t total, double z = 1.959963984540054);

/// Expected pooled accuracy by enumeration of the ancilla Z values and Bell
/// outcomes, including the finite-length readout's sign error.
double exact_prediction_accuracy(const PredictionSetup& setup);

/// Probability that the running mean of `steps` readouts has the wrong sign
/// given the ancilla sits in the Z eigenstate `z`.
double readout_sign_error(const SequentialReadoutParams& readout, int z);

/// Standard CHSH angles for the follow-up Bell test on the Bell qubits.
struct BellTestAngles {
  MeasurementAxis x1 = MeasurementAxis::degrees(0.0);
  MeasurementAxis x2 = MeasurementAxis::degrees(90.0);
  MeasurementAxis y1 = MeasurementAxis::degrees(45.0);
  MeasurementAxis y2 = MeasurementAxis::degrees(-45.0);
};

enum class PostSelection {
  none,
  /// Keep only trials in which both ancilla readouts predicted +1.
  both_predicted_plus,
};

/// Runs the coupling and sequential readout, then a 4-setting projective
/// CHSH test on the Bell qubits alone; trial i uses setting pair i mod 4.
/// Without post-selection the ancilla outcomes are marginalized.
ChshReport post_protocol_chsh(const PredictionSetup& setup, std::uint64_t trials, std::uint64_t master_seed,
                              unsigned workers = 0, PostSelection post_selection = PostSelection::none,
                              const BellTestAngles& angles = {});

/// CHSH of the Bell-qubit marginal after coupling (marginalized readout).
double exact_post_protocol_chsh(const PredictionSetup& setup, const BellTestAngles& angles = {});

}  // namespace blgi::predictor

#endif  // BLGI_PREDICTOR_PREDICTOR_HPP
