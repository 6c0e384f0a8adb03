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

#include "qcore/state.hpp"

#include <string>

#include <Eigen/Eigenvalues>

namespace blgi::qcore {
namespace {

int qubits_for_dim(Eigen::Index dim) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (dim == (Eigen::Index{1} << n)) return n;
  }
  throw ContractError("state dimension " + std::to_string(dim) + " is not 2^n for n in [1,4]");
}

}  // namespace

QuantumState QuantumState::pure(Vector amplitudes) {
  const int n = qubits_for_dim(amplitudes.size());
  QuantumState s(n, std::move(amplitudes));
  s.check_invariants();
  return s;
}

QuantumState QuantumState::density(Matrix rho) {
  if (rho.rows() != rho.cols()) throw ContractError("density operator must be square");
  const int n = qubits_for_dim(rho.rows());
  QuantumState s(n, std::move(rho));
  s.check_invariants();
  return s;
}

QuantumState QuantumState::basis(int num_qubits, std::size_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw ContractError("num_qubits must be in [1,4]");
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw ContractError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(num_qubits, std::move(v));
}

QuantumState QuantumState::maximally_mixed(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw ContractError("num_qubits must be in [1,4]");
  const auto dim = Eigen::Index{1} << num_qubits;
  return QuantumState(num_qubits, Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

const Vector& QuantumState::amplitudes() const {
  if (!is_pure()) throw ContractError("state is not held as an amplitude vector");
  return std::get<Vector>(rep_);
}

Matrix QuantumState::density_matrix() const {
  if (const auto* v = std::get_if<Vector>(&rep_)) return (*v) * v->adjoint();
  return std::get<Matrix>(rep_);
}

void QuantumState::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw ContractError("qubit index " + std::to_string(qubit) + " out of range for " +
                        std::to_string(num_qubits_) + "-qubit state");
  }
}

void QuantumState::check_invariants() const {
  if (const auto* v = std::get_if<Vector>(&rep_)) {
    if (!v->allFinite()) throw ContractError("amplitudes must be finite");
    if (std::abs(v->norm() - 1.0) > kAlgebraTol) throw ContractError("amplitude vector is not normalized");
    return;
  }
  const auto& rho = std::get<Matrix>(rep_);
  if (!rho.allFinite()) throw ContractError("density operator must be finite");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol) {
    throw ContractError("density operator is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > kAlgebraTol) throw ContractError("density operator trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPositivityTol) {
    throw ContractError("density operator has a negative eigenvalue");
  }
}

void apply_to_vector(Vector& v, const Matrix2& op, int qubit, int num_qubits) {
  const Eigen::Index mask = Eigen::Index{1} << (num_qubits - 1 - qubit);
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  for (Eigen::Index i0 = 0; i0 < dim; ++i0) {
    if (i0 & mask) continue;
    const Eigen::Index i1 = i0 | mask;
    const Complex x0 = v(i0);
    const Complex x1 = v(i1);
    v(i0) = op(0, 0) * x0 + op(0, 1) * x1;
    v(i1) = op(1, 0) * x0 + op(1, 1) * x1;
  }
}

Matrix embed(const Matrix2& op, int qubit, int num_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Matrix full = Matrix::Identity(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Vector col = full.col(c);
    apply_to_vector(col, op, qubit, num_qubits);
    full.col(c) = col;
  }
  return full;
}

Complex QuantumState::expectation(const Matrix2& op, int qubit) const {
  check_qubit(qubit);
  if (const auto* v = std::get_if<Vector>(&rep_)) {
    Vector w = *v;
    apply_to_vector(w, op, qubit, num_qubits_);
    return v->dot(w);
  }
  return (embed(op, qubit, num_qubits_) * std::get<Matrix>(rep_)).trace();
}

QuantumState QuantumState::tensor(const QuantumState& other) const {
  const int n = num_qubits_ + other.num_qubits_;
  if (n > kMaxQubits) throw ContractError("tensor product exceeds 4 qubits");
  if (is_pure() && other.is_pure()) {
    const auto& a = amplitudes();
    const auto& b = other.amplitudes();
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return QuantumState(n, std::move(out));
  }
  const Matrix a = density_matrix();
  const Matrix b = other.density_matrix();
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return QuantumState(n, std::move(out));
}

QuantumState QuantumState::conjugated_by(const Matrix2& op, int qubit) const {
  check_qubit(qubit);
  if (const auto* v = std::get_if<Vector>(&rep_)) {
    Vector w = *v;
    apply_to_vector(w, op, qubit, num_qubits_);
    return QuantumState(num_qubits_, std::move(w));
  }
  const Matrix full = embed(op, qubit, num_qubits_);
  return QuantumState(num_qubits_, Matrix(full * std::get<Matrix>(rep_) * full.adjoint()));
}

double QuantumState::weight() const {
  if (const auto* v = std::get_if<Vector>(&rep_)) return v->squaredNorm();
  return std::get<Matrix>(rep_).trace().real();
}

QuantumState QuantumState::normalized() const {
  const double w = weight();
  if (!(w > 0.0)) throw MeasurementError("cannot normalize a zero-weight state");
  if (const auto* v = std::get_if<Vector>(&rep_)) return QuantumState(num_qubits_, Vector(*v / std::sqrt(w)));
  Matrix rho = std::get<Matrix>(rep_) / w;
  // Restore exact Hermiticity lost to roundoff in the conjugation.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return QuantumState(num_qubits_, std::move(rho));
}

}  // namespace blgi::qcore
