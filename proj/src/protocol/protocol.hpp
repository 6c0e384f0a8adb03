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

#ifndef BLGI_PROTOCOL_PROTOCOL_HPP
#define BLGI_PROTOCOL_PROTOCOL_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcore/channels.hpp"
#include "qcore/state.hpp"

namespace blgi::protocol {

using qcore::CouplingStrength;
using qcore::MeasurementAxis;
using qcore::NoiseModel;
using qcore::QuantumState;

enum class BellKind { phi_plus, psi_minus };

/// Accepts "phi+", "phi_plus", "psi-", "psi_minus".
BellKind parse_bell_kind(std::string_view name);
std::string_view to_string(BellKind kind);

/// One experimental configuration. a1/a2 are the weak (ancilla) axes of Bell
/// qubits 1 and 2, b1/b2 their projective axes.
struct Settings {
  MeasurementAxis a1;
  MeasurementAxis a2;
  MeasurementAxis b1;
  MeasurementAxis b2;
  CouplingStrength v{1.0};
  NoiseModel noise;
  BellKind bell = BellKind::phi_plus;
  std::uint32_t id = 0;

  void validate() const;
};

/// Phi+, a1 = 0°, a2 = 90°, b1 = 45°, b2 = -45°: maximal violation as V -> 0.
Settings default_settings(CouplingStrength v);

struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::uint32_t settings_id = 0;
  double raw1 = 0.0;
  double raw2 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  int beta1 = 1;
  int beta2 = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

enum class Field { alpha1, alpha2, beta1, beta2 };

Field parse_field(std::string_view name);
std::string_view to_string(Field field);
double field_value(const TrialRecord& record, Field field);

struct CorrelatorEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// chsh = e11 + e12 + e21 - e22, stderr combined in quadrature.
struct ChshReport {
  CorrelatorEstimate e11;
  CorrelatorEstimate e12;
  CorrelatorEstimate e21;
  CorrelatorEstimate e22;
  double chsh = 0.0;
  double chsh_std_error = 0.0;
};

struct FieldPair {
  Field left;
  Field right;
};

/// The four correlators entering the CHSH combination, in the order
/// (e11, e12, e21, e22).
using Pairing = std::array<FieldPair, 4>;

/// e_ij correlates alpha_i with beta_j.
inline constexpr Pairing kDefaultPairing{{{Field::alpha1, Field::beta1},
                                          {Field::alpha1, Field::beta2},
                                          {Field::alpha2, Field::beta1},
                                          {Field::alpha2, Field::beta2}}};

QuantumState prepare_bell(BellKind kind);

/// Weak on qubit 1 along a1, weak on qubit 2 along a2, readout noise on both
/// raw signals, projective on qubit 1 along b1 and qubit 2 along b2, then
/// rescale. Deterministic in (master_seed, trial_index).
TrialRecord run_trial(const Settings& settings, std::uint64_t trial_index, std::uint64_t master_seed);

/// Trials [0, count); the result is independent of `workers`.
std::vector<TrialRecord> run_trials(const Settings& settings, std::uint64_t count, std::uint64_t master_seed,
                                    unsigned workers = 0);

CorrelatorEstimate estimate_correlator(std::span<const TrialRecord> records, Field left, Field right);

ChshReport chsh_combine(const CorrelatorEstimate& e11, const CorrelatorEstimate& e12, const CorrelatorEstimate& e21,
                        const CorrelatorEstimate& e22);

ChshReport estimate_chsh(std::span<const TrialRecord> records, const Pairing& pairing = kDefaultPairing);

/// E[left·right] from the 16 measurement branches of one trial on the density
/// operator, including the exact contribution of the readout noise model.
double exact_correlator(const Settings& settings, Field left, Field right);

/// E[field].
double exact_mean(const Settings& settings, Field field);

double exact_chsh(const Settings& settings, const Pairing& pairing = kDefaultPairing);

struct ChshPoint {
  double v;
  double chsh;
};

/// Exact CHSH value of `base` with V replaced by each grid value.
std::vector<ChshPoint> chsh_curve(const Settings& base, std::span<const double> v_grid,
                                  const Pairing& pairing = kDefaultPairing);

/// Bell pair after the non-selective weak channels on both qubits (a1 on
/// qubit 1, a2 on qubit 2), before any projective measurement.
QuantumState post_coupling_state(const Settings& settings);

}  // namespace blgi::protocol

#endif  // BLGI_PROTOCOL_PROTOCOL_HPP
