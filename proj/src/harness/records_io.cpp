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

#include "harness/records_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace blgi::harness {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_real(const std::string& s, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw IoError("line " + std::to_string(line_no) + ": bad real '" + s + "'");
  }
  return x;
}

std::uint64_t parse_u64(const std::string& s, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
    throw IoError("line " + std::to_string(line_no) + ": bad unsigned integer '" + s + "'");
  }
  return x;
}

int parse_sign(const std::string& s, std::size_t line_no) {
  if (s == "1") return 1;
  if (s == "-1") return -1;
  throw IoError("line " + std::to_string(line_no) + ": expected 1 or -1, got '" + s + "'");
}

template <class Row>
std::vector<Row> read_csv(const std::string& path, const char* header, Row (*parse)(const std::vector<std::string>&,
                                                                                       std::size_t)) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw IoError(path + ": unexpected header '" + line + "'");
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 9) throw IoError("line " + std::to_string(line_no) + ": expected 9 columns");
    rows.push_back(parse(cells, line_no));
  }
  return rows;
}

protocol::TrialRecord parse_trial(const std::vector<std::string>& c, std::size_t ln) {
  protocol::TrialRecord r;
  r.trial_index = parse_u64(c[0], ln);
  r.settings_id = static_cast<std::uint32_t>(parse_u64(c[1], ln));
  r.raw1 = parse_real(c[2], ln);
  r.raw2 = parse_real(c[3], ln);
  r.alpha1 = parse_real(c[4], ln);
  r.alpha2 = parse_real(c[5], ln);
  r.beta1 = parse_sign(c[6], ln);
  r.beta2 = parse_sign(c[7], ln);
  r.seed = parse_u64(c[8], ln);
  return r;
}

predictor::PredictionRecord parse_prediction(const std::vector<std::string>& c, std::size_t ln) {
  predictor::PredictionRecord r;
  r.trial_index = parse_u64(c[0], ln);
  r.settings_id = static_cast<std::uint32_t>(parse_u64(c[1], ln));
  r.trajectory_mean1 = parse_real(c[2], ln);
  r.trajectory_mean2 = parse_real(c[3], ln);
  r.predicted1 = parse_sign(c[4], ln);
  r.predicted2 = parse_sign(c[5], ln);
  r.actual1 = parse_sign(c[6], ln);
  r.actual2 = parse_sign(c[7], ln);
  r.seed = parse_u64(c[8], ln);
  return r;
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit_records(std::span<const protocol::TrialRecord> records, const std::string& path) {
  auto out = open_out(path);
  out << kTrialCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.trial_index << ',' << r.settings_id << ',' << format_real(r.raw1) << ',' << format_real(r.raw2) << ','
        << format_real(r.alpha1) << ',' << format_real(r.alpha2) << ',' << r.beta1 << ',' << r.beta2 << ',' << r.seed
        << '\n';
  }
  finish(out, path);
}

std::vector<protocol::TrialRecord> read_records(const std::string& path) {
  return read_csv<protocol::TrialRecord>(path, kTrialCsvHeader, &parse_trial);
}

void emit_prediction_records(std::span<const predictor::PredictionRecord> records, const std::string& path) {
  auto out = open_out(path);
  out << kPredictionCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.trial_index << ',' << r.settings_id << ',' << format_real(r.trajectory_mean1) << ','
        << format_real(r.trajectory_mean2) << ',' << r.predicted1 << ',' << r.predicted2 << ',' << r.actual1 << ','
        << r.actual2 << ',' << r.seed << '\n';
  }
  finish(out, path);
}

std::vector<predictor::PredictionRecord> read_prediction_records(const std::string& path) {
  return read_csv<predictor::PredictionRecord>(path, kPredictionCsvHeader, &parse_prediction);
}

}  // namespace blgi::harness
