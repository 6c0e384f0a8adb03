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

#ifndef BLGI_QCORE_RNG_HPP
#define BLGI_QCORE_RNG_HPP

#include <cstdint>
#include <random>

namespace blgi::qcore {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-trial seed as a pure function of (master_seed, trial_index), so that
/// trials can run in any order on any worker.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
  return mix64(mix64(master_seed) ^ mix64(trial_index + 0x632be59bd9b4e019ULL));
}

/// The explicit random stream threaded through every sampling operation.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1) from the top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double gaussian(double mean, double sigma) {
    std::normal_distribution<double> dist(mean, sigma);
    return dist(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace blgi::qcore

#endif  // BLGI_QCORE_RNG_HPP
