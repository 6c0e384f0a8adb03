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

#ifndef BLGI_HARNESS_SWEEP_HPP
#define BLGI_HARNESS_SWEEP_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "auditor/auditor.hpp"
#include "protocol/protocol.hpp"

namespace blgi::harness {

struct SweepSpec {
  std::vector<double> v_values;
  std::uint64_t trials_per_point = 1;

  void validate() const;
};

struct SweepRow {
  double v = 0.0;
  std::uint32_t settings_id = 0;
  double exact_chsh = 0.0;
  double empirical_chsh = 0.0;
  double chsh_stderr = 0.0;
  auditor::Verdict verdict = auditor::Verdict::inconclusive;
};

/// Seed of one sweep point. Depends on the V value rather than its grid
/// position, so reordering the grid reorders rows without changing them.
std::uint64_t sweep_point_seed(std::uint64_t master_seed, double v);

/// One row per grid value, in grid order. Row k uses settings_id = k.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const protocol::Settings& base, std::uint64_t master_seed,
                                unsigned workers = 0, const auditor::AuditConfig& audit = {});

inline constexpr const char* kSweepCsvHeader = "v,settings_id,exact_chsh,empirical_chsh,chsh_stderr,verdict";

void emit_sweep(std::span<const SweepRow> rows, const std::string& path);

}  // namespace blgi::harness

#endif  // BLGI_HARNESS_SWEEP_HPP
