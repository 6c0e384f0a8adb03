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

#ifndef BLGI_HARNESS_RECORDS_IO_HPP
#define BLGI_HARNESS_RECORDS_IO_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "predictor/predictor.hpp"
#include "protocol/protocol.hpp"

namespace blgi::harness {

/// File could not be opened, written, or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kTrialCsvHeader = "trial_index,settings_id,raw1,raw2,alpha1,alpha2,beta1,beta2,seed";
inline constexpr const char* kPredictionCsvHeader =
    "trial_index,settings_id,trajectory_mean1,trajectory_mean2,predicted1,predicted2,actual1,actual2,seed";

/// %.17g, which round-trips every double.
std::string format_real(double x);

void emit_records(std::span<const protocol::TrialRecord> records, const std::string& path);
std::vector<protocol::TrialRecord> read_records(const std::string& path);

void emit_prediction_records(std::span<const predictor::PredictionRecord> records, const std::string& path);
std::vector<predictor::PredictionRecord> read_prediction_records(const std::string& path);

}  // namespace blgi::harness

#endif  // BLGI_HARNESS_RECORDS_IO_HPP
