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

#include "harness/sweep.hpp"

#include <bit>
#include <fstream>

#include "harness/records_io.hpp"
#include "qcore/rng.hpp"

namespace blgi::harness {

void SweepSpec::validate() const {
  if (v_values.empty()) throw qcore::ContractError("sweep grid must be nonempty");
  for (double v : v_values) qcore::CouplingStrength{v};
  if (trials_per_point < 1) throw qcore::ContractError("sweep needs at least one trial per point");
}

std::uint64_t sweep_point_seed(std::uint64_t master_seed, double v) {
  return qcore::derive_seed(master_seed, std::bit_cast<std::uint64_t>(v));
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const protocol::Settings& base, std::uint64_t master_seed,
                                unsigned workers, const auditor::AuditConfig& audit) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.v_values.size());
  for (std::size_t k = 0; k < spec.v_values.size(); ++k) {
    protocol::Settings s = base;
    s.v = qcore::CouplingStrength(spec.v_values[k]);
    s.id = static_cast<std::uint32_t>(k);
    const auto records = protocol::run_trials(s, spec.trials_per_point, sweep_point_seed(master_seed, s.v.value()),
                                              workers);
    const auto verdict = auditor::decomposition_test(records, s.v, audit);
    SweepRow row;
    row.v = s.v.value();
    row.settings_id = s.id;
    row.exact_chsh = protocol::exact_chsh(s, audit.pairing);
    row.empirical_chsh = verdict.report.chsh;
    row.chsh_stderr = verdict.report.chsh_std_error;
    row.verdict = verdict.verdict;
    rows.push_back(row);
  }
  return rows;
}

void emit_sweep(std::span<const SweepRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_real(r.v) << ',' << r.settings_id << ',' << format_real(r.exact_chsh) << ','
        << format_real(r.empirical_chsh) << ',' << format_real(r.chsh_stderr) << ',' << auditor::to_string(r.verdict)
        << '\n';
  }
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace blgi::harness
