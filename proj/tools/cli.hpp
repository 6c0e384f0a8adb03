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

#ifndef BLGI_TOOLS_CLI_HPP
#define BLGI_TOOLS_CLI_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blgi::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitUsage = 2,
  kExitCheckFailed = 3,
};

enum class CommandKind { verify_theorem, simulate, audit, predict, sweep };

const char* command_name(CommandKind kind);

struct Invocation {
  CommandKind kind = CommandKind::verify_theorem;
  unsigned workers = 0;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  double v = 0.2;
  std::array<double, 4> angles{0.0, 90.0, 45.0, -45.0};  // a1, a2, b1, b2 in degrees
  std::string bell = "phi+";
  double noise_sigma = 0.0;
  double noise_bias = 0.0;
  double threshold_sigmas = 3.0;
  double readout_v = 0.05;
  std::uint64_t steps = 10000;
  bool postselect = false;
  std::vector<double> v_grid;
  std::string in;
  std::string out;
  std::string manifest;  // defaults to <out>.manifest.json when --out is given
};

struct ParseResult {
  std::optional<Invocation> invocation;  // empty when the process should exit
  int exit_code = kExitOk;
  std::string message;  // usage or error text
};

ParseResult parse_invocation(int argc, const char* const* argv);

/// Parameters that reproduce the invocation's record outputs, as flag -> value.
std::map<std::string, std::string> reproduction_parameters(const Invocation& inv);

/// argv (without program name) that reruns a manifest's command with the
/// recorded parameters, writing records to `out`.
std::vector<std::string> replay_arguments(const std::string& manifest_path, const std::string& out);

int run(const Invocation& inv, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace blgi::cli

#endif  // BLGI_TOOLS_CLI_HPP
