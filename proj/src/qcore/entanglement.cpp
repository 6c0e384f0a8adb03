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

#include "qcore/entanglement.hpp"

#include <algorithm>
#include <functional>

#include <Eigen/Eigenvalues>

namespace blgi::qcore {

QuantumState partial_trace(const QuantumState& state, std::vector<int> keep) {
  if (keep.empty()) throw ContractError("partial_trace needs at least one kept qubit");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw ContractError("partial_trace keep set has duplicates");
  }
  for (int q : keep) state.check_qubit(q);
  const int n = state.num_qubits();
  if (static_cast<int>(keep.size()) == n) return state;

  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);
  }
  // Scatter the bits of a reduced index onto the listed qubit positions.
  auto scatter = [n](Eigen::Index bits, const std::vector<int>& qubits) {
    Eigen::Index full = 0;
    const auto k = static_cast<int>(qubits.size());
    for (int i = 0; i < k; ++i) {
      if (bits & (Eigen::Index{1} << (k - 1 - i))) full |= Eigen::Index{1} << (n - 1 - qubits[i]);
    }
    return full;
  };

  const Matrix rho = state.density_matrix();
  const Eigen::Index kept_dim = Eigen::Index{1} << keep.size();
  const Eigen::Index traced_dim = Eigen::Index{1} << traced.size();
  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i) {
    const Eigen::Index fi = scatter(i, keep);
    for (Eigen::Index j = 0; j < kept_dim; ++j) {
      const Eigen::Index fj = scatter(j, keep);
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        const Eigen::Index ft = scatter(t, traced);
        acc += rho(fi | ft, fj | ft);
      }
      out(i, j) = acc;
    }
  }
  out = (0.5 * (out + out.adjoint())).eval();
  return QuantumState::density(std::move(out));
}

double concurrence(const QuantumState& state) {
  if (state.num_qubits() != 2) throw ContractError("concurrence is defined for exactly 2 qubits");
  const Matrix rho = state.density_matrix();
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix rho_tilde = yy * rho.conjugate() * yy;

  // lambda_i are the square roots of the eigenvalues of
  // sqrt(rho)·rho_tilde·sqrt(rho), which is Hermitian PSD.
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_rho = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  Matrix r = sqrt_rho * rho_tilde * sqrt_rho;
  r = (0.5 * (r + r.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> rs(r, Eigen::EigenvaluesOnly);
  Eigen::VectorXd lambda = rs.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(lambda.data(), lambda.data() + lambda.size(), std::greater<>());
  return std::clamp(lambda(0) - lambda(1) - lambda(2) - lambda(3), 0.0, 1.0);
}

}  // namespace blgi::qcore
