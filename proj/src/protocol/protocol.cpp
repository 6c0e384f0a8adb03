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

#include "protocol/protocol.hpp"

#include <cmath>

#include "common/parallel.hpp"
#include "qcore/rng.hpp"

namespace blgi::protocol {

using qcore::ContractError;
using qcore::SeedStream;

BellKind parse_bell_kind(std::string_view name) {
  if (name == "phi+" || name == "phi_plus") return BellKind::phi_plus;
  if (name == "psi-" || name == "psi_minus") return BellKind::psi_minus;
  throw ContractError("unknown Bell state kind: " + std::string(name));
}

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::phi_plus:
      return "phi+";
    case BellKind::psi_minus:
      return "psi-";
  }
  return "?";
}

void Settings::validate() const {
  noise.validate();
  if (bell != BellKind::phi_plus && bell != BellKind::psi_minus) throw ContractError("unknown Bell state kind");
}

Settings default_settings(CouplingStrength v) {
  Settings s;
  s.a1 = MeasurementAxis::degrees(0.0);
  s.a2 = MeasurementAxis::degrees(90.0);
  s.b1 = MeasurementAxis::degrees(45.0);
  s.b2 = MeasurementAxis::degrees(-45.0);
  s.v = v;
  return s;
}

Field parse_field(std::string_view name) {
  if (name == "alpha1") return Field::alpha1;
  if (name == "alpha2") return Field::alpha2;
  if (name == "beta1") return Field::beta1;
  if (name == "beta2") return Field::beta2;
  throw ContractError("unknown record field: " + std::string(name));
}

std::string_view to_string(Field field) {
  switch (field) {
    case Field::alpha1:
      return "alpha1";
    case Field::alpha2:
      return "alpha2";
    case Field::beta1:
      return "beta1";
    case Field::beta2:
      return "beta2";
  }
  return "?";
}

double field_value(const TrialRecord& r, Field field) {
  switch (field) {
    case Field::alpha1:
      return r.alpha1;
    case Field::alpha2:
      return r.alpha2;
    case Field::beta1:
      return r.beta1;
    case Field::beta2:
      return r.beta2;
  }
  throw ContractError("unknown record field");
}

QuantumState prepare_bell(BellKind kind) {
  const double h = M_SQRT1_2;
  qcore::Vector amps = qcore::Vector::Zero(4);
  switch (kind) {
    case BellKind::phi_plus:
      amps(0) = h;
      amps(3) = h;
      break;
    case BellKind::psi_minus:
      amps(1) = h;
      amps(2) = -h;
      break;
    default:
      throw ContractError("unknown Bell state kind");
  }
  return QuantumState::pure(std::move(amps));
}

TrialRecord run_trial(const Settings& settings, std::uint64_t trial_index, std::uint64_t master_seed) {
  const std::uint64_t seed = qcore::derive_seed(master_seed, trial_index);
  SeedStream rng(seed);

  QuantumState state = prepare_bell(settings.bell);
  auto weak1 = qcore::weak_measure(state, 0, settings.a1, settings.v, rng);
  auto weak2 = qcore::weak_measure(weak1.post_state, 1, settings.a2, settings.v, rng);
  const double raw1 = qcore::apply_readout_noise(weak1.raw, settings.noise, rng);
  const double raw2 = qcore::apply_readout_noise(weak2.raw, settings.noise, rng);
  auto strong1 = qcore::projective_measure(weak2.post_state, 0, settings.b1, rng);
  auto strong2 = qcore::projective_measure(strong1.post_state, 1, settings.b2, rng);

  TrialRecord r;
  r.trial_index = trial_index;
  r.settings_id = settings.id;
  r.raw1 = raw1;
  r.raw2 = raw2;
  r.alpha1 = qcore::rescale(raw1, settings.v);
  r.alpha2 = qcore::rescale(raw2, settings.v);
  r.beta1 = strong1.raw;
  r.beta2 = strong2.raw;
  r.seed = seed;
  return r;
}

std::vector<TrialRecord> run_trials(const Settings& settings, std::uint64_t count, std::uint64_t master_seed,
                                    unsigned workers) {
  settings.validate();
  std::vector<TrialRecord> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = run_trial(settings, i, master_seed); });
  return out;
}

CorrelatorEstimate estimate_correlator(std::span<const TrialRecord> records, Field left, Field right) {
  if (records.size() < 2) throw ContractError("correlator estimate needs at least 2 records");
  const auto n = static_cast<double>(records.size());
  double sum = 0.0;
  for (const auto& r : records) sum += field_value(r, left) * field_value(r, right);
  const double mean = sum / n;
  double ss = 0.0;
  for (const auto& r : records) {
    const double d = field_value(r, left) * field_value(r, right) - mean;
    ss += d * d;
  }
  return CorrelatorEstimate{mean, std::sqrt(ss / n) / std::sqrt(n), records.size()};
}

ChshReport chsh_combine(const CorrelatorEstimate& e11, const CorrelatorEstimate& e12, const CorrelatorEstimate& e21,
                        const CorrelatorEstimate& e22) {
  ChshReport rep{e11, e12, e21, e22, 0.0, 0.0};
  rep.chsh = e11.value + e12.value + e21.value - e22.value;
  rep.chsh_std_error = std::sqrt(e11.std_error * e11.std_error + e12.std_error * e12.std_error +
                                 e21.std_error * e21.std_error + e22.std_error * e22.std_error);
  return rep;
}

ChshReport estimate_chsh(std::span<const TrialRecord> records, const Pairing& pairing) {
  return chsh_combine(estimate_correlator(records, pairing[0].left, pairing[0].right),
                      estimate_correlator(records, pairing[1].left, pairing[1].right),
                      estimate_correlator(records, pairing[2].left, pairing[2].right),
                      estimate_correlator(records, pairing[3].left, pairing[3].right));
}

namespace {

struct Branch {
  double probability;
  int s1, s2, beta1, beta2;
};

// Joint distribution of the four binary outcomes of one noiseless trial.
std::vector<Branch> enumerate_branches(const Settings& settings) {
  const QuantumState bell = prepare_bell(settings.bell);
  const auto k1 = qcore::weak_kraus(settings.v, settings.a1);
  const auto k2 = qcore::weak_kraus(settings.v, settings.a2);
  std::vector<Branch> out;
  out.reserve(16);
  for (int s1 : {1, -1}) {
    const QuantumState after1 = bell.conjugated_by(k1[s1], 0);
    for (int s2 : {1, -1}) {
      const QuantumState after2 = after1.conjugated_by(k2[s2], 1);
      for (int beta1 : {1, -1}) {
        const QuantumState after3 = after2.conjugated_by(qcore::eigenprojector(settings.b1, beta1), 0);
        for (int beta2 : {1, -1}) {
          const double p = after3.conjugated_by(qcore::eigenprojector(settings.b2, beta2), 1).weight();
          out.push_back(Branch{p, s1, s2, beta1, beta2});
        }
      }
    }
  }
  return out;
}

// Noise-averaged value of a field in a branch; alpha carries the bias shift.
double branch_value(const Branch& b, Field field, const Settings& settings) {
  const double v = settings.v.value();
  switch (field) {
    case Field::alpha1:
      return (b.s1 + settings.noise.bias) / v;
    case Field::alpha2:
      return (b.s2 + settings.noise.bias) / v;
    case Field::beta1:
      return b.beta1;
    case Field::beta2:
      return b.beta2;
  }
  return 0.0;
}

}  // namespace

double exact_correlator(const Settings& settings, Field left, Field right) {
  settings.validate();
  double e = 0.0;
  for (const auto& b : enumerate_branches(settings)) {
    e += b.probability * branch_value(b, left, settings) * branch_value(b, right, settings);
  }
  // Noise draws are independent across fields, so only a squared alpha
  // picks up the noise variance.
  if (left == right && (left == Field::alpha1 || left == Field::alpha2)) {
    const double s = settings.noise.sigma / settings.v.value();
    e += s * s;
  }
  return e;
}

double exact_mean(const Settings& settings, Field field) {
  settings.validate();
  double e = 0.0;
  for (const auto& b : enumerate_branches(settings)) e += b.probability * branch_value(b, field, settings);
  return e;
}

double exact_chsh(const Settings& settings, const Pairing& pairing) {
  return exact_correlator(settings, pairing[0].left, pairing[0].right) +
         exact_correlator(settings, pairing[1].left, pairing[1].right) +
         exact_correlator(settings, pairing[2].left, pairing[2].right) -
         exact_correlator(settings, pairing[3].left, pairing[3].right);
}

std::vector<ChshPoint> chsh_curve(const Settings& base, std::span<const double> v_grid, const Pairing& pairing) {
  if (v_grid.empty()) throw ContractError("V grid must be nonempty");
  std::vector<ChshPoint> out;
  out.reserve(v_grid.size());
  for (double v : v_grid) {
    Settings s = base;
    s.v = CouplingStrength(v);
    out.push_back(ChshPoint{v, exact_chsh(s, pairing)});
  }
  return out;
}

QuantumState post_coupling_state(const Settings& settings) {
  const QuantumState bell = prepare_bell(settings.bell);
  return qcore::apply_nonselective(qcore::apply_nonselective(bell, 0, settings.a1, settings.v), 1, settings.a2,
                                   settings.v);
}

}  // namespace blgi::protocol
