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

#ifndef BLGI_AUDITOR_AUDITOR_HPP
#define BLGI_AUDITOR_AUDITOR_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "protocol/protocol.hpp"

namespace blgi::auditor {

using protocol::TrialRecord;

/// Four outcomes of one trial, each strictly +1 or -1.
struct BinaryTuple {
  int a1;
  int a2;
  int b1;
  int b2;

  void validate() const;
  friend bool operator==(const BinaryTuple&, const BinaryTuple&) = default;
};

/// a1·b1 + a1·b2 + a2·b1 - a2·b2 = a1·(b1 + b2) + a2·(b1 - b2), always ±2.
int per_trial_term(const BinaryTuple& t);

struct TheoremRow {
  BinaryTuple tuple;
  int term;
};

struct TheoremReport {
  std::array<TheoremRow, 16> rows;
  int plus_two = 0;
  int minus_two = 0;
  double mean_term = 0.0;
};

/// All 16 binary tuples with their per-trial term. Throws std::logic_error if
/// any term falls outside {-2, +2}.
TheoremReport exhaustive_verify();

/// (1/N)|Σ a1·b1 + Σ a1·b2 + Σ a2·b1 - Σ a2·b2| over a binary sequence,
/// accumulated in integers. A value above 2 is a bug and throws
/// std::logic_error.
double chsh_bound_check(std::span<const BinaryTuple> sequence);

enum class Verdict { consistent, reject, inconclusive };

std::string_view to_string(Verdict v);

struct AuditConfig {
  double threshold_sigmas = 3.0;
  /// Combined standard error above which no verdict is issued.
  double stderr_cap = 0.2;
  std::size_t min_count = 100;
  protocol::Pairing pairing = protocol::kDefaultPairing;
  /// Relative tolerance on alpha·V == raw when validating records.
  double rescale_tolerance = 1e-9;
};

struct AuditVerdict {
  double chsh_value = 0.0;  // |e11 + e12 + e21 - e22|
  double chsh_stderr = 0.0;
  double threshold_sigmas = 3.0;
  Verdict verdict = Verdict::inconclusive;
  std::size_t count = 0;
  protocol::ChshReport report;
};

/// Thrown for records that cannot come from the trial pipeline (beta not ±1,
/// alpha·V != raw, non-finite values).
class MalformedRecords : public qcore::ContractError {
 public:
  using qcore::ContractError::ContractError;
};

/// Tests whether the records admit a "binary signal + setting-independent
/// zero-mean noise" decomposition {V·alpha_i, beta_j}. Any such source obeys
/// the CHSH bound of 2 in expectation; REJECT means the estimate exceeds 2 by
/// more than threshold_sigmas combined standard errors.
AuditVerdict decomposition_test(std::span<const TrialRecord> records, qcore::CouplingStrength v,
                                const AuditConfig& config = {});

/// Single JSON object mirroring AuditVerdict.
std::string verdict_json(const AuditVerdict& verdict);

/// Deterministic-response hidden-variable source: a shared uniform angle
/// lambda, each outcome sign(cos(lambda - setting) + threshold). The raw
/// ancilla signal is V times the binary outcome plus the settings' noise, so
/// alpha_i is binary plus zero-mean noise.
struct HiddenVariableSource {
  protocol::Settings settings;
  double threshold_a = 0.0;
  double threshold_b = 0.0;
};

TrialRecord synthetic_binary_trial(const HiddenVariableSource& source, std::uint64_t trial_index,
                                   std::uint64_t master_seed);

std::vector<TrialRecord> synthetic_binary_trials(const HiddenVariableSource& source, std::uint64_t count,
                                                 std::uint64_t master_seed, unsigned workers = 0);

}  // namespace blgi::auditor

#endif  // BLGI_AUDITOR_AUDITOR_HPP
