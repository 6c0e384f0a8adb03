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

#ifndef BLGI_QCORE_STATE_HPP
#define BLGI_QCORE_STATE_HPP

#include <cstddef>
#include <variant>

#include "qcore/types.hpp"

namespace blgi::qcore {

inline constexpr int kMaxQubits = 4;

/// Dense state of 1-4 qubits, held either as an amplitude vector or as a
/// density operator. Qubit 0 is the most significant bit of the basis index,
/// so |q0 q1 ...> has index q0*2^(n-1) + q1*2^(n-2) + ...
///
/// Construction validates the representation invariants (unit norm, or
/// Hermitian / unit trace / positive semidefinite); operations that produce
/// new states renormalize and keep them.
class QuantumState {
 public:
  static QuantumState pure(Vector amplitudes);
  static QuantumState density(Matrix rho);
  /// Computational basis state |index> on n qubits.
  static QuantumState basis(int num_qubits, std::size_t index);
  static QuantumState maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }
  bool is_pure() const { return std::holds_alternative<Vector>(rep_); }

  /// Requires is_pure().
  const Vector& amplitudes() const;
  /// Density operator; |psi><psi| for pure states.
  Matrix density_matrix() const;

  /// <op> for a single-qubit operator acting on `qubit`.
  Complex expectation(const Matrix2& op, int qubit) const;

  /// this ⊗ other, with this occupying the leading qubits.
  QuantumState tensor(const QuantumState& other) const;

  /// Throws ContractError if any representation invariant is violated.
  void check_invariants() const;

  void check_qubit(int qubit) const;

  // Unnormalized building blocks used by the channel layer.
  /// op applied to `qubit` on the ket side only (pure) or as op·rho·op† (mixed).
  QuantumState conjugated_by(const Matrix2& op, int qubit) const;
  /// Squared norm for pure states, trace for mixed ones.
  double weight() const;
  /// Rescale so that weight() == 1.
  QuantumState normalized() const;

 private:
  QuantumState(int num_qubits, std::variant<Vector, Matrix> rep)
      : num_qubits_(num_qubits), rep_(std::move(rep)) {}

  int num_qubits_;
  std::variant<Vector, Matrix> rep_;
};

/// op acting on `qubit` of an n-qubit register, embedded into the full space.
Matrix embed(const Matrix2& op, int qubit, int num_qubits);

/// Apply a single-qubit operator to the ket index space in place.
void apply_to_vector(Vector& v, const Matrix2& op, int qubit, int num_qubits);

}  // namespace blgi::qcore

#endif  // BLGI_QCORE_STATE_HPP
