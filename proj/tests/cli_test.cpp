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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace blgi::cli {
namespace {

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::path(::testing::TempDir()) / "blgi_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseResult parse(std::vector<std::string> args) {
  args.insert(args.begin(), "blgi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_invocation(static_cast<int>(argv.size()), argv.data());
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "blgi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Parse, Examples) {
  auto r = parse({"verify-theorem"});
  ASSERT_TRUE(r.invocation);
  EXPECT_EQ(r.invocation->kind, CommandKind::verify_theorem);

  r = parse({"simulate", "--v", "0.2", "--trials", "1000000", "--seed", "42"});
  ASSERT_TRUE(r.invocation);
  EXPECT_EQ(r.invocation->kind, CommandKind::simulate);
  EXPECT_EQ(r.invocation->v, 0.2);
  EXPECT_EQ(r.invocation->trials, 1000000u);
  EXPECT_EQ(r.invocation->seed, 42u);

  r = parse({"simulate", "--v", "1.5"});
  EXPECT_FALSE(r.invocation);
  EXPECT_EQ(r.exit_code, kExitUsage);
  EXPECT_NE(r.message.find("--v"), std::string::npos);

  r = parse({"sweep", "--v-grid", "0.1,0.5,0.95", "--angles=-30,60,15,-75"});
  ASSERT_TRUE(r.invocation);
  EXPECT_EQ(r.invocation->v_grid, (std::vector<double>{0.1, 0.5, 0.95}));
  EXPECT_EQ(r.invocation->angles[0], -30.0);
}

TEST(Parse, UsageErrors) {
  EXPECT_EQ(parse({}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"simulate", "--bogus"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"frobnicate"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"audit", "--v", "0.2"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"simulate", "--angles", "1,2,3"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"simulate", "--bell", "ghz"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"simulate", "--noise-sigma", "-1"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"sweep", "--v-grid", "0.1,0"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"predict", "--readout-v", "2"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"predict", "--steps", "0"}).exit_code, kExitUsage);
}

TEST(Parse, HelpExitsZero) {
  const auto r = parse({"--help"});
  EXPECT_FALSE(r.invocation);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_NE(r.message.find("simulate"), std::string::npos);
}

TEST(Run, VerifyTheorem) {
  const auto r = run_cli({"verify-theorem"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\"plus_two\":8,\"minus_two\":8"), std::string::npos) << r.out;
}

TEST(Run, SimulateThenAudit) {
  const auto csv = temp_path("sim.csv");
  const auto r = run_cli({"simulate", "--v", "0.2", "--trials", "20000", "--seed", "42", "--out", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(csv + ".manifest.json"));
  const auto a = run_cli({"audit", "--in", csv, "--v", "0.2"});
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_NE(a.out.find("REJECT"), std::string::npos) << a.out;
  const auto wrong_v = run_cli({"audit", "--in", csv, "--v", "0.3"});
  EXPECT_EQ(wrong_v.code, kExitRuntime);
  const auto missing = run_cli({"audit", "--in", temp_path("nope.csv"), "--v", "0.2"});
  EXPECT_EQ(missing.code, kExitRuntime);
}

TEST(Run, UnwritableOutputIsRuntimeError) {
  const auto r = run_cli({"simulate", "--trials", "10", "--out", "/nonexistent_dir/x.csv"});
  EXPECT_EQ(r.code, kExitRuntime);
}

class Replay : public ::testing::TestWithParam<std::vector<std::string>> {};

TEST_P(Replay, ManifestRerunIsByteIdentical) {
  const auto& args = GetParam();
  const std::string tag = args.front();
  const auto first = temp_path(tag + "_first.csv");
  auto a = args;
  a.push_back("--out");
  a.push_back(first);
  const auto r1 = run_cli(a);
  ASSERT_EQ(r1.code, kExitOk) << r1.err;

  const auto second = temp_path(tag + "_second.csv");
  auto replay = replay_arguments(first + ".manifest.json", second);
  replay.insert(replay.begin(), "--workers=3");
  const auto r2 = run_cli(replay);
  ASSERT_EQ(r2.code, kExitOk) << r2.err;
  EXPECT_EQ(slurp(first), slurp(second));
  EXPECT_FALSE(slurp(first).empty());
}

INSTANTIATE_TEST_SUITE_P(
    Commands, Replay,
    ::testing::Values(std::vector<std::string>{"simulate", "--v", "0.3", "--trials", "3000", "--seed", "5",
                                               "--angles=-20,70,25,-65", "--noise-sigma", "0.3", "--workers=1"},
                      std::vector<std::string>{"predict", "--v", "0.4", "--trials", "500", "--seed", "6",
                                               "--steps", "400", "--readout-v", "0.3", "--workers=1"},
                      std::vector<std::string>{"sweep", "--v-grid", "0.3,0.9", "--trials", "2000", "--seed", "7",
                                               "--workers=1"}));

}  // namespace
}  // namespace blgi::cli
