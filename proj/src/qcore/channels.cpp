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

#include "qcore/channels.hpp"

#include <algorithm>
#include <variant>

#include <Eigen/Eigenvalues>

namespace blgi::qcore {
namespace {

Matrix2 ry(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  Matrix2 r;
  r << c, -s, s, c;
  return r;
}

}  // namespace

Matrix2 bloch_observable(MeasurementAxis axis) {
  const double c = std::cos(axis.theta());
  const double s = std::sin(axis.theta());
  Matrix2 m;
  m << c, s, s, -c;
  return m;
}

Matrix2 eigenprojector(MeasurementAxis axis, int sign) {
  return 0.5 * (Matrix2::Identity() + static_cast<double>(sign) * bloch_observable(axis));
}

KrausPair weak_kraus(CouplingStrength v, MeasurementAxis axis) {
  // (I ± V sigma)/2 share the eigenprojectors of sigma, so the square root is
  // taken on the spectrum directly.
  const Matrix2 pp = eigenprojector(axis, 1);
  const Matrix2 pm = eigenprojector(axis, -1);
  const double hi = std::sqrt(0.5 * (1.0 + v.value()));
  const double lo = std::sqrt(0.5 * (1.0 - v.value()));
  return KrausPair{hi * pp + lo * pm, lo * pp + hi * pm};
}

MeasurementOutcome measure_branch(const QuantumState& state, int qubit, MeasurementAxis axis, CouplingStrength v,
                                  int outcome) {
  if (outcome != 1 && outcome != -1) throw ContractError("measurement outcome must be +1 or -1");
  state.check_qubit(qubit);
  const KrausPair k = weak_kraus(v, axis);
  QuantumState branch = state.conjugated_by(k[outcome], qubit);
  const double p = branch.weight();
  if (p < kMinOutcomeProbability) {
    throw MeasurementError("measurement branch has vanishing probability; resample");
  }
  return MeasurementOutcome{outcome, p, branch.normalized()};
}

MeasurementOutcome weak_measure(const QuantumState& state, int qubit, MeasurementAxis axis, CouplingStrength v,
                                SeedStream& rng) {
  state.check_qubit(qubit);
  const KrausPair k = weak_kraus(v, axis);
  QuantumState plus = state.conjugated_by(k.k_plus, qubit);
  const double p_plus = plus.weight();
  const bool up = rng.uniform() < p_plus;
  QuantumState branch = up ? std::move(plus) : state.conjugated_by(k.k_minus, qubit);
  const double p = up ? p_plus : branch.weight();
  if (p < kMinOutcomeProbability) {
    throw MeasurementError("measurement branch has vanishing probability; resample");
  }
  return MeasurementOutcome{up ? 1 : -1, p, branch.normalized()};
}

MeasurementOutcome projective_measure(const QuantumState& state, int qubit, MeasurementAxis axis, SeedStream& rng) {
  return weak_measure(state, qubit, axis, CouplingStrength::strong(), rng);
}

QuantumState apply_nonselective(const QuantumState& state, int qubit, MeasurementAxis axis, CouplingStrength v) {
  state.check_qubit(qubit);
  const KrausPair k = weak_kraus(v, axis);
  Matrix rho = state.conjugated_by(k.k_plus, qubit).density_matrix() +
               state.conjugated_by(k.k_minus, qubit).density_matrix();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return QuantumState::density(std::move(rho));
}

double apply_readout_noise(double raw, const NoiseModel& model, SeedStream& rng) {
  model.validate();
  if (model.sigma == 0.0) return raw + model.bias;
  return raw + model.bias + rng.gaussian(0.0, model.sigma);
}

Eigen::Matrix4cd ancilla_coupling_unitary(CouplingStrength v, MeasurementAxis axis) {
  const double phi_plus = std::acos(v.value());
  const double phi_minus = M_PI - phi_plus;
  const Matrix2 p_plus = eigenprojector(axis, 1);
  const Matrix2 p_minus = eigenprojector(axis, -1);
  const Matrix2 r_plus = ry(phi_plus);
  const Matrix2 r_minus = ry(phi_minus);
  Eigen::Matrix4cd u;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      u.block<2, 2>(2 * i, 2 * j) = p_plus(i, j) * r_plus + p_minus(i, j) * r_minus;
    }
  }
  return u;
}

QuantumState apply_two_qubit(const QuantumState& state, int first, int second, const Eigen::Matrix4cd& op) {
  state.check_qubit(first);
  state.check_qubit(second);
  if (first == second) throw ContractError("two-qubit operator needs distinct qubits");
  const int n = state.num_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index m1 = Eigen::Index{1} << (n - 1 - first);
  const Eigen::Index m2 = Eigen::Index{1} << (n - 1 - second);
  Matrix full = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int c = ((col & m1) ? 2 : 0) + ((col & m2) ? 1 : 0);
    const Eigen::Index base = col & ~(m1 | m2);
    for (int r = 0; r < 4; ++r) {
      const Eigen::Index row = base | ((r & 2) ? m1 : 0) | ((r & 1) ? m2 : 0);
      full(row, col) = op(r, c);
    }
  }
  if (state.is_pure()) return QuantumState::pure(full * state.amplitudes());
  Matrix rho = full * state.density_matrix() * full.adjoint();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return QuantumState::density(std::move(rho));
}

}  // namespace blgi::qcore
