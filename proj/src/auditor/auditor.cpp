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

#include "auditor/auditor.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "common/parallel.hpp"
#include "qcore/rng.hpp"

namespace blgi::auditor {

void BinaryTuple::validate() const {
  for (int x : {a1, a2, b1, b2}) {
    if (x != 1 && x != -1) throw qcore::ContractError("binary tuple entries must be +1 or -1");
  }
}

int per_trial_term(const BinaryTuple& t) {
  t.validate();
  return t.a1 * t.b1 + t.a1 * t.b2 + t.a2 * t.b1 - t.a2 * t.b2;
}

TheoremReport exhaustive_verify() {
  TheoremReport rep;
  int sum = 0;
  for (int bits = 0; bits < 16; ++bits) {
    auto pm = [bits](int k) { return (bits >> (3 - k)) & 1 ? -1 : 1; };
    const BinaryTuple t{pm(0), pm(1), pm(2), pm(3)};
    const int term = per_trial_term(t);
    if (term == 2) {
      ++rep.plus_two;
    } else if (term == -2) {
      ++rep.minus_two;
    } else {
      throw std::logic_error("per-trial CHSH term outside {-2, +2}");
    }
    rep.rows[static_cast<std::size_t>(bits)] = TheoremRow{t, term};
    sum += term;
  }
  rep.mean_term = sum / 16.0;
  return rep;
}

double chsh_bound_check(std::span<const BinaryTuple> sequence) {
  if (sequence.empty()) throw qcore::ContractError("CHSH bound check needs a nonempty sequence");
  std::int64_t s11 = 0, s12 = 0, s21 = 0, s22 = 0;
  for (const auto& t : sequence) {
    t.validate();
    s11 += t.a1 * t.b1;
    s12 += t.a1 * t.b2;
    s21 += t.a2 * t.b1;
    s22 += t.a2 * t.b2;
  }
  const std::int64_t total = s11 + s12 + s21 - s22;
  const auto n = static_cast<std::int64_t>(sequence.size());
  if (std::llabs(total) > 2 * n) throw std::logic_error("binary sequence exceeds the CHSH bound");
  return static_cast<double>(std::llabs(total)) / static_cast<double>(n);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent:
      return "CONSISTENT";
    case Verdict::reject:
      return "REJECT";
    case Verdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

void validate_record(const TrialRecord& r, double v, double tol) {
  if (r.beta1 != 1 && r.beta1 != -1) throw MalformedRecords("beta1 must be +1 or -1");
  if (r.beta2 != 1 && r.beta2 != -1) throw MalformedRecords("beta2 must be +1 or -1");
  for (double x : {r.raw1, r.raw2, r.alpha1, r.alpha2}) {
    if (!std::isfinite(x)) throw MalformedRecords("record values must be finite");
  }
  auto consistent = [&](double raw, double alpha) {
    return std::abs(alpha * v - raw) <= tol * std::max(1.0, std::abs(raw));
  };
  if (!consistent(r.raw1, r.alpha1) || !consistent(r.raw2, r.alpha2)) {
    throw MalformedRecords("record " + std::to_string(r.trial_index) + " has alpha*V != raw");
  }
}

}  // namespace

AuditVerdict decomposition_test(std::span<const TrialRecord> records, qcore::CouplingStrength v,
                                const AuditConfig& config) {
  if (!(config.threshold_sigmas >= 0.0)) throw qcore::ContractError("threshold_sigmas must be >= 0");
  for (const auto& r : records) validate_record(r, v.value(), config.rescale_tolerance);

  AuditVerdict out;
  out.threshold_sigmas = config.threshold_sigmas;
  out.count = records.size();
  if (records.size() >= 2) {
    out.report = protocol::estimate_chsh(records, config.pairing);
    out.chsh_value = std::abs(out.report.chsh);
    out.chsh_stderr = out.report.chsh_std_error;
  }
  if (records.size() < config.min_count || out.chsh_stderr > config.stderr_cap) {
    out.verdict = Verdict::inconclusive;
  } else if (out.chsh_value - 2.0 > config.threshold_sigmas * out.chsh_stderr) {
    out.verdict = Verdict::reject;
  } else {
    out.verdict = Verdict::consistent;
  }
  return out;
}

std::string verdict_json(const AuditVerdict& verdict) {
  auto corr = [](const protocol::CorrelatorEstimate& e) {
    return nlohmann::json{{"value", e.value}, {"stderr", e.std_error}, {"count", e.count}};
  };
  nlohmann::json j = {
      {"chsh_value", verdict.chsh_value},
      {"chsh_stderr", verdict.chsh_stderr},
      {"threshold_sigmas", verdict.threshold_sigmas},
      {"verdict", std::string(to_string(verdict.verdict))},
      {"count", verdict.count},
      {"correlators",
       {{"e11", corr(verdict.report.e11)},
        {"e12", corr(verdict.report.e12)},
        {"e21", corr(verdict.report.e21)},
        {"e22", corr(verdict.report.e22)}}},
  };
  return j.dump();
}

TrialRecord synthetic_binary_trial(const HiddenVariableSource& source, std::uint64_t trial_index,
                                   std::uint64_t master_seed) {
  const auto& s = source.settings;
  const std::uint64_t seed = qcore::derive_seed(master_seed, trial_index);
  qcore::SeedStream rng(seed);
  const double lambda = 2.0 * M_PI * rng.uniform();
  auto respond = [lambda](qcore::MeasurementAxis axis, double threshold) {
    return std::cos(lambda - axis.theta()) + threshold >= 0.0 ? 1 : -1;
  };

  TrialRecord r;
  r.trial_index = trial_index;
  r.settings_id = s.id;
  // Weak binary signal of amplitude V plus detector noise, so the rescaled
  // alpha is the binary signal plus noise/V.
  r.raw1 = qcore::apply_readout_noise(s.v.value() * respond(s.a1, source.threshold_a), s.noise, rng);
  r.raw2 = qcore::apply_readout_noise(s.v.value() * respond(s.a2, source.threshold_a), s.noise, rng);
  r.alpha1 = qcore::rescale(r.raw1, s.v);
  r.alpha2 = qcore::rescale(r.raw2, s.v);
  r.beta1 = respond(s.b1, source.threshold_b);
  r.beta2 = respond(s.b2, source.threshold_b);
  r.seed = seed;
  return r;
}

std::vector<TrialRecord> synthetic_binary_trials(const HiddenVariableSource& source, std::uint64_t count,
                                                 std::uint64_t master_seed, unsigned workers) {
  source.settings.validate();
  std::vector<TrialRecord> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = synthetic_binary_trial(source, i, master_seed); });
  return out;
}

}  // namespace blgi::auditor
