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

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "harness/manifest.hpp"
#include "harness/records_io.hpp"
#include "harness/sweep.hpp"

namespace blgi::harness {
namespace {

using protocol::TrialRecord;

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::path(::testing::TempDir()) / "blgi_harness_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

TEST(FormatReal, RoundTripsAwkwardValues) {
  std::mt19937_64 gen(1);
  std::vector<double> values{0.1, -0.0, 1.0 / 3.0, 5e-324, std::numeric_limits<double>::max(), -1.0 / 0.2};
  for (int i = 0; i < 1000; ++i) {
    double d;
    std::uint64_t bits = gen();
    std::memcpy(&d, &bits, sizeof d);
    if (std::isfinite(d)) values.push_back(d);
  }
  for (double x : values) {
    const double back = std::strtod(format_real(x).c_str(), nullptr);
    EXPECT_EQ(std::memcmp(&back, &x, sizeof x), 0) << format_real(x);
  }
}

TEST(TrialCsv, RoundTripIsBitExact) {
  auto s = protocol::default_settings(qcore::CouplingStrength(0.3));
  s.noise = qcore::NoiseModel{0.01, 0.3};
  s.id = 4;
  const auto records = protocol::run_trials(s, 1000, 17, 1);
  const auto path = temp_path("trials.csv");
  emit_records(records, path);
  const auto back = read_records(path);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(back[i], records[i]);
    EXPECT_EQ(std::memcmp(&back[i].alpha1, &records[i].alpha1, sizeof(double)), 0);
  }
}

TEST(TrialCsv, LineCounts) {
  const auto path = temp_path("two.csv");
  const auto records = protocol::run_trials(protocol::default_settings(qcore::CouplingStrength(0.3)), 2, 1, 1);
  emit_records(records, path);
  const auto l = lines(path);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], kTrialCsvHeader);

  const auto empty_path = temp_path("empty.csv");
  emit_records(std::vector<TrialRecord>{}, empty_path);
  EXPECT_EQ(slurp(empty_path), std::string(kTrialCsvHeader) + "\n");
  EXPECT_TRUE(read_records(empty_path).empty());
}

TEST(TrialCsv, ParsingIsStrict) {
  const std::string header = std::string(kTrialCsvHeader) + "\n";
  const auto path = temp_path("bad.csv");
  write_file(path, "trial,settings\n");
  EXPECT_THROW(read_records(path), IoError);
  write_file(path, header + "0,0,1,1,5,5,1\n");
  EXPECT_THROW(read_records(path), IoError);
  write_file(path, header + "0,0,1,1,5,5,1,1,abc\n");
  EXPECT_THROW(read_records(path), IoError);
  write_file(path, header + "0,0,1,1,5x,5,1,1,3\n");
  EXPECT_THROW(read_records(path), IoError);
  write_file(path, header + "0,0,1,1,5,5,1,1,3\n");
  EXPECT_EQ(read_records(path).size(), 1u);
  EXPECT_THROW(read_records(temp_path("does_not_exist.csv")), IoError);
  EXPECT_THROW(emit_records(std::vector<TrialRecord>{}, "/nonexistent_dir/x.csv"), IoError);
}

TEST(PredictionCsv, RoundTrip) {
  auto s = protocol::default_settings(qcore::CouplingStrength(0.5));
  s.a1 = s.b1;
  s.a2 = s.b2;
  const auto setup = predictor::prediction_setup(s, qcore::CouplingStrength(0.3), {});
  const auto records = predictor::run_prediction_experiments(setup, 300, 2, 1);
  const auto path = temp_path("pred.csv");
  emit_prediction_records(records, path);
  EXPECT_EQ(lines(path).front(), kPredictionCsvHeader);
  EXPECT_EQ(read_prediction_records(path), records);
}

TEST(Manifest, JsonRoundTrip) {
  RunManifest m;
  m.command = "sweep";
  m.master_seed = 18446744073709551615ull;
  m.parameters = {{"v_grid", "0.1,0.5"}, {"trials", "100"}};
  m.started = utc_timestamp();
  m.finished = utc_timestamp();
  m.output_paths = {"a.csv"};
  const auto j = nlohmann::json::parse(manifest_json(m));
  EXPECT_TRUE(j.contains("master_seed"));
  EXPECT_EQ(j.at("master_seed").get<std::uint64_t>(), m.master_seed);
  EXPECT_EQ(j.at("parameters").at("v_grid").get<std::string>(), "0.1,0.5");
  EXPECT_EQ(j.at("tool_version").get<std::string>(), kToolVersion);

  const auto path = temp_path("m.json");
  emit_manifest(m, path);
  const auto back = read_manifest(path);
  EXPECT_EQ(back.command, m.command);
  EXPECT_EQ(back.master_seed, m.master_seed);
  EXPECT_EQ(back.parameters, m.parameters);
  EXPECT_EQ(back.output_paths, m.output_paths);
  EXPECT_EQ(back.started, m.started);

  write_file(path, "{not json");
  EXPECT_THROW(read_manifest(path), IoError);
}

TEST(Manifest, TimestampFormat) {
  const auto ts = utc_timestamp();
  ASSERT_EQ(ts.size(), 20u);
  EXPECT_EQ(ts[4], '-');
  EXPECT_EQ(ts[10], 'T');
  EXPECT_EQ(ts.back(), 'Z');
}

TEST(Sweep, VerdictsAcrossViolationWindow) {
  SweepSpec spec{{0.1, 0.5, 0.95}, 100000};
  const auto rows = run_sweep(spec, protocol::default_settings(qcore::CouplingStrength(0.5)), 42);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].verdict, auditor::Verdict::reject);
  EXPECT_EQ(rows[1].verdict, auditor::Verdict::reject);
  EXPECT_EQ(rows[2].verdict, auditor::Verdict::consistent);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].settings_id, k);
    EXPECT_EQ(rows[k].v, spec.v_values[k]);
    EXPECT_LT(std::abs(rows[k].empirical_chsh - rows[k].exact_chsh), 4 * rows[k].chsh_stderr);
  }
}

TEST(Sweep, DeterministicAndOrderInsensitive) {
  const auto base = protocol::default_settings(qcore::CouplingStrength(0.5));
  SweepSpec spec{{0.2, 0.7, 0.4}, 2000};
  const auto a = run_sweep(spec, base, 9, 1);
  const auto b = run_sweep(spec, base, 9, 5);
  const auto pa = temp_path("sweep_a.csv");
  const auto pb = temp_path("sweep_b.csv");
  emit_sweep(a, pa);
  emit_sweep(b, pb);
  EXPECT_EQ(slurp(pa), slurp(pb));
  EXPECT_EQ(lines(pa).front(), kSweepCsvHeader);

  SweepSpec reversed{{0.4, 0.7, 0.2}, 2000};
  const auto c = run_sweep(reversed, base, 9, 2);
  EXPECT_EQ(c[0].empirical_chsh, a[2].empirical_chsh);
  EXPECT_EQ(c[2].empirical_chsh, a[0].empirical_chsh);
  EXPECT_NE(sweep_point_seed(9, 0.2), sweep_point_seed(9, 0.4));
}

TEST(Sweep, RejectsInvalidSpec) {
  const auto base = protocol::default_settings(qcore::CouplingStrength(0.5));
  EXPECT_THROW(run_sweep(SweepSpec{{}, 10}, base, 1), qcore::ContractError);
  EXPECT_THROW(run_sweep(SweepSpec{{0.5}, 0}, base, 1), qcore::ContractError);
  EXPECT_THROW(run_sweep(SweepSpec{{0.5, 1.5}, 10}, base, 1), qcore::ContractError);
}

}  // namespace
}  // namespace blgi::harness
