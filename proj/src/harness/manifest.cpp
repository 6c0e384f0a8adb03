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

#include "harness/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "harness/records_io.hpp"

namespace blgi::harness {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["master_seed"] = m.master_seed;
  j["parameters"] = m.parameters;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["output_paths"] = m.output_paths;
  return j.dump(2);
}

void emit_manifest(const RunManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << manifest_json(manifest) << '\n';
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  try {
    const auto j = nlohmann::json::parse(in);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.started = j.value("started", "");
    m.finished = j.value("finished", "");
    m.output_paths = j.value("output_paths", std::vector<std::string>{});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": malformed manifest: " + e.what());
  }
}

}  // namespace blgi::harness
