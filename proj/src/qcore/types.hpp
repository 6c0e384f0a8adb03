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

#ifndef BLGI_QCORE_TYPES_HPP
#define BLGI_QCORE_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace blgi::qcore {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance for algebraic identities (norms, traces, completeness).
inline constexpr double kAlgebraTol = 1e-12;
/// Slack allowed below zero for density-operator eigenvalues.
inline constexpr double kPositivityTol = 1e-10;
/// Outcome probabilities below this cannot be renormalized.
inline constexpr double kMinOutcomeProbability = 1e-15;

/// Thrown when a caller violates an operation's precondition.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a sampled measurement branch has vanishing probability.
class MeasurementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Measurement direction in the x-z plane, angle from +z towards +x.
class MeasurementAxis {
 public:
  constexpr MeasurementAxis() = default;
  explicit MeasurementAxis(double theta) : theta_(theta) {
    if (!std::isfinite(theta)) throw ContractError("measurement axis angle must be finite");
  }
  static MeasurementAxis degrees(double deg) { return MeasurementAxis(deg * M_PI / 180.0); }

  double theta() const { return theta_; }
  double degrees() const { return theta_ * 180.0 / M_PI; }

  friend bool operator==(const MeasurementAxis&, const MeasurementAxis&) = default;

 private:
  double theta_ = 0.0;
};

/// Coupling strength V in (0, 1]; V = 1 is a projective measurement.
class CouplingStrength {
 public:
  explicit CouplingStrength(double v) : v_(v) {
    if (!(v > 0.0 && v <= 1.0)) {
      throw ContractError("coupling strength must lie in (0, 1], got " + std::to_string(v));
    }
  }
  static CouplingStrength strong() { return CouplingStrength(1.0); }

  double value() const { return v_; }
  bool is_projective() const { return v_ == 1.0; }

  friend bool operator==(const CouplingStrength&, const CouplingStrength&) = default;

 private:
  double v_;
};

/// Additive detector noise on the raw (unrescaled) ancilla signal.
struct NoiseModel {
  double bias = 0.0;
  double sigma = 0.0;

  void validate() const {
    if (!std::isfinite(bias)) throw ContractError("noise bias must be finite");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ContractError("noise sigma must be finite and >= 0");
  }
  bool is_off() const { return bias == 0.0 && sigma == 0.0; }
};

/// Two-outcome measurement channel {k+, k-}.
struct KrausPair {
  Matrix2 k_plus;
  Matrix2 k_minus;

  const Matrix2& operator[](int outcome) const { return outcome > 0 ? k_plus : k_minus; }
};

}  // namespace blgi::qcore

#endif  // BLGI_QCORE_TYPES_HPP
