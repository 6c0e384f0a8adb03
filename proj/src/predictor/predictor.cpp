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

#include "predictor/predictor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "common/parallel.hpp"
#include "qcore/entanglement.hpp"

namespace blgi::predictor {

using qcore::ContractError;
using qcore::SeedStream;

namespace {

constexpr int kAncilla1 = 2;
constexpr int kAncilla2 = 3;
const MeasurementAxis kReadoutAxis = MeasurementAxis::degrees(0.0);

}  // namespace

void SequentialReadoutParams::validate() const {
  if (steps < 1) throw ContractError("sequential readout needs at least one step");
}

bool SequentialReadoutParams::saturated() const {
  return static_cast<double>(steps) * v.value() * v.value() >= 25.0;
}

SequenceResult sequential_weak_sequence(const QuantumState& state, int qubit, MeasurementAxis axis,
                                        const SequentialReadoutParams& params, SeedStream& rng) {
  params.validate();
  state.check_qubit(qubit);
  const double v = params.v.value();
  const qcore::Matrix2 proj_plus = qcore::eigenprojector(axis, 1);
  const qcore::Matrix2 proj_minus = qcore::eigenprojector(axis, -1);
  const double init_plus = std::clamp(state.expectation(proj_plus, qubit).real(), 0.0, 1.0);
  const double init_minus = std::clamp(state.expectation(proj_minus, qubit).real(), 0.0, 1.0);

  // Populations are tracked separately so a collapsed branch keeps its
  // relative precision instead of vanishing into 1 - p.
  double pop_plus = init_plus;
  double pop_minus = init_minus;
  std::int64_t sum = 0;
  {
    const double inv = 1.0 / (pop_plus + pop_minus);
    pop_plus *= inv;
    pop_minus *= inv;
  }
  if (params.sampling == ReadoutSampling::stepwise) {
    for (std::uint64_t k = 0; k < params.steps; ++k) {
      const double up = 0.5 * (1.0 + v * (pop_plus - pop_minus));
      const int r = rng.uniform() < up ? 1 : -1;
      const double p = r > 0 ? up : 1.0 - up;
      if (p < qcore::kMinOutcomeProbability) {
        throw qcore::MeasurementError("sequential readout sampled a vanishing branch; resample");
      }
      pop_plus *= 1.0 + r * v;
      pop_minus *= 1.0 - r * v;
      const double inv = 1.0 / (pop_plus + pop_minus);
      pop_plus *= inv;
      pop_minus *= inv;
      sum += r;
    }
  } else {
    const int z = rng.uniform() < pop_plus ? 1 : -1;
    std::binomial_distribution<std::uint64_t> count(params.steps, 0.5 * (1.0 + z * v));
    const std::uint64_t n_plus = count(rng.engine());
    const auto n_minus = static_cast<double>(params.steps - n_plus);
    const auto k = static_cast<double>(n_plus);
    auto log_or_inf = [](double x) { return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity(); };
    // 0·log(0) terms are dropped so that v = 1 stays finite on the realized branch.
    auto weighted = [](double count_, double log_p) { return count_ == 0.0 ? 0.0 : count_ * log_p; };
    const double log_up = log_or_inf(0.5 * (1.0 + v));
    const double log_down = log_or_inf(0.5 * (1.0 - v));
    const double lp = log_or_inf(pop_plus) + weighted(k, log_up) + weighted(n_minus, log_down);
    const double lm = log_or_inf(pop_minus) + weighted(k, log_down) + weighted(n_minus, log_up);
    const double top = std::max(lp, lm);
    if (!std::isfinite(top)) throw qcore::MeasurementError("sequential readout sampled a vanishing branch; resample");
    pop_plus = std::exp(lp - top);
    pop_minus = std::exp(lm - top);
    const double inv = 1.0 / (pop_plus + pop_minus);
    pop_plus *= inv;
    pop_minus *= inv;
    sum = static_cast<std::int64_t>(n_plus) - static_cast<std::int64_t>(params.steps - n_plus);
  }

  const double amp_plus = init_plus > 0.0 ? std::sqrt(pop_plus / init_plus) : 0.0;
  const double amp_minus = init_minus > 0.0 ? std::sqrt(pop_minus / init_minus) : 0.0;
  const qcore::Matrix2 kraus_product = amp_plus * proj_plus + amp_minus * proj_minus;
  return SequenceResult{static_cast<double>(sum) / static_cast<double>(params.steps),
                        state.conjugated_by(kraus_product, qubit).normalized()};
}

void PredictionSetup::validate() const { readout.validate(); }

PredictionSetup prediction_setup(const protocol::Settings& settings, CouplingStrength system_v,
                                 const SequentialReadoutParams& readout) {
  if (!(settings.a1 == settings.b1) || !(settings.a2 == settings.b2)) {
    throw ContractError("prediction protocol couples along the projective axes: a_i must equal b_i");
  }
  PredictionSetup s;
  s.bell = settings.bell;
  s.axis1 = settings.b1;
  s.axis2 = settings.b2;
  s.system_v = system_v;
  s.readout = readout;
  s.settings_id = settings.id;
  s.validate();
  return s;
}

QuantumState coupled_state(const PredictionSetup& setup) {
  const QuantumState ancillas = QuantumState::basis(2, 0);
  QuantumState state = protocol::prepare_bell(setup.bell).tensor(ancillas);
  state = qcore::apply_two_qubit(state, 0, kAncilla1, qcore::ancilla_coupling_unitary(setup.system_v, setup.axis1));
  state = qcore::apply_two_qubit(state, 1, kAncilla2, qcore::ancilla_coupling_unitary(setup.system_v, setup.axis2));
  return state;
}

PredictionRecord run_prediction_experiment(const PredictionSetup& setup, std::uint64_t trial_index,
                                           std::uint64_t master_seed) {
  const std::uint64_t seed = qcore::derive_seed(master_seed, trial_index);
  SeedStream rng(seed);
  QuantumState state = coupled_state(setup);
  auto read1 = sequential_weak_sequence(state, kAncilla1, kReadoutAxis, setup.readout, rng);
  auto read2 = sequential_weak_sequence(read1.post_state, kAncilla2, kReadoutAxis, setup.readout, rng);
  auto bell1 = qcore::projective_measure(read2.post_state, 0, setup.axis1, rng);
  auto bell2 = qcore::projective_measure(bell1.post_state, 1, setup.axis2, rng);

  PredictionRecord r;
  r.trial_index = trial_index;
  r.settings_id = setup.settings_id;
  r.trajectory_mean1 = read1.mean;
  r.trajectory_mean2 = read2.mean;
  r.predicted1 = predict(read1.mean);
  r.predicted2 = predict(read2.mean);
  r.actual1 = bell1.raw;
  r.actual2 = bell2.raw;
  r.seed = seed;
  return r;
}

std::vector<PredictionRecord> run_prediction_experiments(const PredictionSetup& setup, std::uint64_t count,
                                                         std::uint64_t master_seed, unsigned workers) {
  setup.validate();
  std::vector<PredictionRecord> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = run_prediction_experiment(setup, i, master_seed); });
  return out;
}

AccuracyEstimate wilson_interval(std::size_t matches, std::size_t total, double z) {
  if (total == 0) throw ContractError("accuracy needs at least one prediction");
  if (matches > total) throw ContractError("matches cannot exceed total");
  const auto n = static_cast<double>(total);
  const double p = static_cast<double>(matches) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return AccuracyEstimate{p, std::max(0.0, centre - half), std::min(1.0, centre + half), matches, total};
}

AccuracyEstimate prediction_accuracy(std::span<const PredictionRecord> records) {
  if (records.empty()) throw ContractError("accuracy needs at least one record");
  std::size_t matches = 0;
  for (const auto& r : records) {
    matches += (r.predicted1 == r.actual1) + (r.predicted2 == r.actual2);
  }
  return wilson_interval(matches, 2 * records.size());
}

double readout_sign_error(const SequentialReadoutParams& readout, int z) {
  readout.validate();
  if (z != 1 && z != -1) throw ContractError("ancilla Z value must be +1 or -1");
  const double v = readout.v.value();
  const double q = (1.0 + z * v) / 2.0;  // P(step outcome = +1)
  const auto n = readout.steps;
  // Wrong sign: z = +1 needs 2·n_plus < n; z = -1 needs 2·n_plus >= n.
  auto wrong = [&](std::uint64_t n_plus) { return z > 0 ? 2 * n_plus < n : 2 * n_plus >= n; };
  if (q <= 0.0 || q >= 1.0) return wrong(q >= 1.0 ? n : 0) ? 1.0 : 0.0;
  const double log_q = std::log(q);
  const double log_1q = std::log1p(-q);
  const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
  double err = 0.0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (!wrong(k)) continue;
    const double kd = static_cast<double>(k);
    const double log_pmf = lg_n - std::lgamma(kd + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) +
                           kd * log_q + static_cast<double>(n - k) * log_1q;
    err += std::exp(log_pmf);
  }
  return std::min(err, 1.0);
}

double exact_prediction_accuracy(const PredictionSetup& setup) {
  setup.validate();
  const QuantumState state = coupled_state(setup);
  const std::array<double, 2> eps{readout_sign_error(setup.readout, 1), readout_sign_error(setup.readout, -1)};
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    const int ancilla = i == 0 ? kAncilla1 : kAncilla2;
    const MeasurementAxis axis = i == 0 ? setup.axis1 : setup.axis2;
    for (int z : {1, -1}) {
      const QuantumState after_z = state.conjugated_by(qcore::eigenprojector(kReadoutAxis, z), ancilla);
      const double e = eps[z > 0 ? 0 : 1];
      for (int beta : {1, -1}) {
        const double p = after_z.conjugated_by(qcore::eigenprojector(axis, beta), i).weight();
        acc += p * (beta == z ? 1.0 - e : e);
      }
    }
  }
  return acc / 2.0;
}

namespace {

std::pair<MeasurementAxis, MeasurementAxis> setting_pair(const BellTestAngles& a, std::size_t index) {
  switch (index % 4) {
    case 0:
      return {a.x1, a.y1};
    case 1:
      return {a.x1, a.y2};
    case 2:
      return {a.x2, a.y1};
    default:
      return {a.x2, a.y2};
  }
}

struct BellTestOutcome {
  bool kept;
  double product;
};

}  // namespace

ChshReport post_protocol_chsh(const PredictionSetup& setup, std::uint64_t trials, std::uint64_t master_seed,
                              unsigned workers, PostSelection post_selection, const BellTestAngles& angles) {
  setup.validate();
  if (trials < 8) throw ContractError("post-protocol CHSH needs at least 8 trials");
  std::vector<BellTestOutcome> outcomes(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    SeedStream rng(qcore::derive_seed(master_seed, i));
    QuantumState state = coupled_state(setup);
    auto read1 = sequential_weak_sequence(state, kAncilla1, kReadoutAxis, setup.readout, rng);
    auto read2 = sequential_weak_sequence(read1.post_state, kAncilla2, kReadoutAxis, setup.readout, rng);
    const auto [x, y] = setting_pair(angles, i);
    auto m1 = qcore::projective_measure(read2.post_state, 0, x, rng);
    auto m2 = qcore::projective_measure(m1.post_state, 1, y, rng);
    const bool kept = post_selection == PostSelection::none || (predict(read1.mean) > 0 && predict(read2.mean) > 0);
    outcomes[i] = BellTestOutcome{kept, static_cast<double>(m1.raw * m2.raw)};
  });

  std::array<protocol::CorrelatorEstimate, 4> est;
  for (std::size_t c = 0; c < 4; ++c) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = c; i < trials; i += 4) {
      if (!outcomes[i].kept) continue;
      sum += outcomes[i].product;
      ++n;
    }
    if (n < 2) throw ContractError("too few trials survive post-selection for a CHSH estimate");
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = c; i < trials; i += 4) {
      if (!outcomes[i].kept) continue;
      const double d = outcomes[i].product - mean;
      ss += d * d;
    }
    const auto nd = static_cast<double>(n);
    est[c] = protocol::CorrelatorEstimate{mean, std::sqrt(ss / nd) / std::sqrt(nd), n};
  }
  return protocol::chsh_combine(est[0], est[1], est[2], est[3]);
}

double exact_post_protocol_chsh(const PredictionSetup& setup, const BellTestAngles& angles) {
  setup.validate();
  const QuantumState bell = qcore::partial_trace(coupled_state(setup), {0, 1});
  auto correlator = [&](MeasurementAxis x, MeasurementAxis y) {
    const qcore::Matrix op = qcore::embed(qcore::bloch_observable(x), 0, 2) * qcore::embed(qcore::bloch_observable(y), 1, 2);
    return (op * bell.density_matrix()).trace().real();
  };
  return correlator(angles.x1, angles.y1) + correlator(angles.x1, angles.y2) + correlator(angles.x2, angles.y1) -
         correlator(angles.x2, angles.y2);
}

}  // namespace blgi::predictor
