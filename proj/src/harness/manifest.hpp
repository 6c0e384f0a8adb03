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

#ifndef BLGI_HARNESS_MANIFEST_HPP
#define BLGI_HARNESS_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace blgi::harness {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to regenerate a run's record files byte for byte.
/// Timestamps are informational only.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string command;
  std::uint64_t master_seed = 0;
  std::map<std::string, std::string> parameters;
  std::string started;
  std::string finished;
  std::vector<std::string> output_paths;
};

/// UTC, ISO 8601 with seconds.
std::string utc_timestamp();

std::string manifest_json(const RunManifest& manifest);
void emit_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);

}  // namespace blgi::harness

#endif  // BLGI_HARNESS_MANIFEST_HPP
