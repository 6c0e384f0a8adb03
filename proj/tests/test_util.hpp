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

#ifndef BLGI_TESTS_TEST_UTIL_HPP
#define BLGI_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <complex>
#include <random>

#include "qcore/state.hpp"

namespace blgi::testing {

/// Haar-ish random pure state: normalized complex Gaussian amplitudes.
inline qcore::QuantumState random_pure(int num_qubits, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  qcore::Vector v(Eigen::Index{1} << num_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = qcore::Complex(g(gen), g(gen));
  v.normalize();
  return qcore::QuantumState::pure(v);
}

/// Random full-rank mixed state G·G† / tr.
inline qcore::QuantumState random_mixed(int num_qubits, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  qcore::Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = qcore::Complex(g(gen), g(gen));
  }
  qcore::Matrix rho = m * m.adjoint();
  rho /= rho.trace();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return qcore::QuantumState::density(rho);
}

inline double max_abs_diff(const qcore::Matrix& a, const qcore::Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace blgi::testing

#endif  // BLGI_TESTS_TEST_UTIL_HPP
