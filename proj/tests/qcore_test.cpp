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

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "qcore/channels.hpp"
#include "qcore/entanglement.hpp"
#include "qcore/rng.hpp"
#include "qcore/state.hpp"
#include "test_util.hpp"

namespace blgi::qcore {
namespace {

using blgi::testing::max_abs_diff;
using blgi::testing::random_mixed;
using blgi::testing::random_pure;

constexpr double kTol = 1e-12;

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

QuantumState phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = M_SQRT1_2;
  v(3) = M_SQRT1_2;
  return QuantumState::pure(v);
}

QuantumState ket_plus() {
  Vector v(2);
  v << M_SQRT1_2, M_SQRT1_2;
  return QuantumState::pure(v);
}

void expect_valid(const QuantumState& s) { EXPECT_NO_THROW(s.check_invariants()); }

TEST(QuantumState, RejectsInvalidRepresentations) {
  Vector bad(2);
  bad << 1.0, 1.0;
  EXPECT_THROW(QuantumState::pure(bad), ContractError);
  EXPECT_THROW(QuantumState::pure(Vector::Zero(3)), ContractError);
  EXPECT_THROW(QuantumState::pure(Vector::Zero(32)), ContractError);

  Matrix not_hermitian = Matrix::Identity(2, 2) / 2.0;
  not_hermitian(0, 1) = 0.1;
  EXPECT_THROW(QuantumState::density(not_hermitian), ContractError);
  EXPECT_THROW(QuantumState::density(Matrix::Identity(2, 2)), ContractError);  // trace 2
  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(QuantumState::density(negative), ContractError);
  EXPECT_THROW(QuantumState::basis(5, 0), ContractError);
}

TEST(QuantumState, BasisOrderingPutsQubitZeroFirst) {
  // |10> on two qubits: qubit 0 is excited.
  const auto s = QuantumState::basis(2, 2);
  EXPECT_NEAR(s.expectation(pauli_z(), 0).real(), -1.0, kTol);
  EXPECT_NEAR(s.expectation(pauli_z(), 1).real(), 1.0, kTol);
}

TEST(BlochObservable, AxisCases) {
  EXPECT_LT(max_abs_diff(bloch_observable(MeasurementAxis(0.0)), pauli_z()), kTol);
  EXPECT_LT(max_abs_diff(bloch_observable(MeasurementAxis(M_PI / 2)), pauli_x()), kTol);
  const Matrix2 diag = bloch_observable(MeasurementAxis(M_PI / 4));
  EXPECT_LT(max_abs_diff(diag, (pauli_z() + pauli_x()) / std::sqrt(2.0)), kTol);
  Eigen::SelfAdjointEigenSolver<Matrix2> es(diag);
  EXPECT_NEAR(es.eigenvalues()(0), -1.0, kTol);
  EXPECT_NEAR(es.eigenvalues()(1), 1.0, kTol);
}

TEST(BlochObservable, HermitianTracelessInvolutory) {
  for (double theta = -7.0; theta < 7.0; theta += 0.37) {
    const Matrix2 s = bloch_observable(MeasurementAxis(theta));
    EXPECT_LT(max_abs_diff(s, s.adjoint()), kTol);
    EXPECT_NEAR(std::abs(s.trace()), 0.0, kTol);
    EXPECT_LT(max_abs_diff(s * s, Matrix2::Identity()), kTol);
  }
  EXPECT_THROW(MeasurementAxis(std::nan("")), ContractError);
  EXPECT_THROW(MeasurementAxis{std::numeric_limits<double>::infinity()}, ContractError);
}

TEST(WeakKraus, RejectsStrengthOutsideUnitInterval) {
  EXPECT_THROW(CouplingStrength(0.0), ContractError);
  EXPECT_THROW(CouplingStrength(-0.1), ContractError);
  EXPECT_THROW(CouplingStrength(1.0000001), ContractError);
  EXPECT_THROW(CouplingStrength(std::nan("")), ContractError);
  EXPECT_NO_THROW(CouplingStrength(1.0));
  EXPECT_NO_THROW(CouplingStrength(1e-12));
}

TEST(WeakKraus, StrongLimitGivesProjectors) {
  const auto k = weak_kraus(CouplingStrength(1.0), MeasurementAxis(0.0));
  Matrix2 p0 = Matrix2::Zero();
  p0(0, 0) = 1.0;
  Matrix2 p1 = Matrix2::Zero();
  p1(1, 1) = 1.0;
  EXPECT_LT(max_abs_diff(k.k_plus, p0), kTol);
  EXPECT_LT(max_abs_diff(k.k_minus, p1), kTol);
}

TEST(WeakKraus, VanishingStrengthApproachesScaledIdentity) {
  const auto k = weak_kraus(CouplingStrength(1e-9), MeasurementAxis(0.8));
  const Matrix2 target = Matrix2::Identity() / std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(k.k_plus, target), 1e-9);
  EXPECT_LT(max_abs_diff(k.k_minus, target), 1e-9);
}

TEST(WeakKraus, MatchesClosedFormSquareRoot) {
  // sqrt((I ± V sigma)/2) = sqrt((1±V)/2) P+ + sqrt((1∓V)/2) P-.
  for (double v : {0.1, 0.45, 0.99}) {
    for (double theta : {0.0, 0.3, 2.0}) {
      const MeasurementAxis axis(theta);
      const auto k = weak_kraus(CouplingStrength(v), axis);
      const Matrix2 pp = eigenprojector(axis, 1);
      const Matrix2 pm = eigenprojector(axis, -1);
      EXPECT_LT(max_abs_diff(k.k_plus, std::sqrt((1 + v) / 2) * pp + std::sqrt((1 - v) / 2) * pm), kTol);
      EXPECT_LT(max_abs_diff(k.k_minus, std::sqrt((1 - v) / 2) * pp + std::sqrt((1 + v) / 2) * pm), kTol);
    }
  }
}

TEST(WeakKraus, CompletenessAndPositivityOnGrid) {
  for (int i = 1; i <= 10; ++i) {
    const double v = i / 10.0;
    for (int j = 0; j < 10; ++j) {
      const MeasurementAxis axis(-M_PI + j * (2 * M_PI / 10));
      const auto k = weak_kraus(CouplingStrength(v), axis);
      const Matrix2 sum = k.k_plus.adjoint() * k.k_plus + k.k_minus.adjoint() * k.k_minus;
      EXPECT_LT((sum - Matrix2::Identity()).norm(), kTol) << "V=" << v << " j=" << j;
      for (const Matrix2* op : {&k.k_plus, &k.k_minus}) {
        EXPECT_LT(max_abs_diff(*op, op->adjoint()), kTol);
        Eigen::SelfAdjointEigenSolver<Matrix2> es(*op);
        EXPECT_GE(es.eigenvalues().minCoeff(), -kTol);
      }
    }
  }
}

TEST(WeakMeasure, EigenstateHasNoBackAction) {
  const auto zero = QuantumState::basis(1, 0);
  const auto plus = measure_branch(zero, 0, MeasurementAxis(0.0), CouplingStrength(0.5), 1);
  EXPECT_NEAR(plus.probability, 0.75, kTol);
  EXPECT_LT(max_abs_diff(plus.post_state.density_matrix(), zero.density_matrix()), kTol);
  const auto minus = measure_branch(zero, 0, MeasurementAxis(0.0), CouplingStrength(0.5), -1);
  EXPECT_NEAR(minus.probability, 0.25, kTol);
  EXPECT_LT(max_abs_diff(minus.post_state.density_matrix(), zero.density_matrix()), kTol);
}

TEST(WeakMeasure, MaximallyMixedQubitConditionalStates) {
  // Frozen from tests/oracles/compute_oracles.py: p = 1/2 and post state
  // (I ± V sigma)/2 for each branch.
  const auto mixed = QuantumState::maximally_mixed(1);
  for (double v : {0.2, 0.37, 1.0}) {
    const MeasurementAxis axis(0.7);
    for (int s : {1, -1}) {
      const auto b = measure_branch(mixed, 0, axis, CouplingStrength(v), s);
      EXPECT_NEAR(b.probability, 0.5, kTol);
      const Matrix2 expected = 0.5 * (Matrix2::Identity() + s * v * bloch_observable(axis));
      EXPECT_LT(max_abs_diff(b.post_state.density_matrix(), expected), kTol);
    }
  }
}

TEST(WeakMeasure, VanishingBranchIsAContractViolation) {
  const auto zero = QuantumState::basis(1, 0);
  EXPECT_THROW(measure_branch(zero, 0, MeasurementAxis(0.0), CouplingStrength(1.0), -1), MeasurementError);
  EXPECT_THROW(measure_branch(zero, 1, MeasurementAxis(0.0), CouplingStrength(0.5), 1), ContractError);
  SeedStream rng(7);
  EXPECT_THROW(weak_measure(zero, 3, MeasurementAxis(0.0), CouplingStrength(0.5), rng), ContractError);
}

TEST(WeakMeasure, ExpectationLawOnRandomStates) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const auto state = trial % 2 ? random_pure(n, gen) : random_mixed(n, gen);
    const int qubit = static_cast<int>(gen() % static_cast<unsigned>(n));
    const double v = std::max(1e-6, unit(gen));
    const MeasurementAxis axis(2 * M_PI * unit(gen));
    const double sigma = state.expectation(bloch_observable(axis), qubit).real();
    const double p_plus = measure_branch(state, qubit, axis, CouplingStrength(v), 1).probability;
    const double p_minus = measure_branch(state, qubit, axis, CouplingStrength(v), -1).probability;
    EXPECT_NEAR(p_plus + p_minus, 1.0, kTol);
    EXPECT_NEAR(p_plus - p_minus, v * sigma, kTol);
    // E[rescale(raw)] = <sigma>.
    EXPECT_NEAR((p_plus * rescale(1, CouplingStrength(v)) + p_minus * rescale(-1, CouplingStrength(v))), sigma,
                kTol / v);
  }
}

TEST(WeakMeasure, StatesStayValidAfterEveryOperation) {
  std::mt19937_64 gen(99);
  SeedStream rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    auto state = trial % 2 ? random_pure(n, gen) : random_mixed(n, gen);
    for (int step = 0; step < 6; ++step) {
      const int q = step % n;
      state = weak_measure(state, q, MeasurementAxis(0.3 * step), CouplingStrength(0.1 + 0.15 * step), rng).post_state;
      expect_valid(state);
      state = apply_nonselective(state, q, MeasurementAxis(1.1 * step), CouplingStrength(0.5));
      expect_valid(state);
    }
    state = projective_measure(state, 0, MeasurementAxis(0.2), rng).post_state;
    expect_valid(state);
    expect_valid(partial_trace(state, {0}));
  }
}

TEST(NonSelective, BackActionDampsOffDiagonalInMeasurementBasis) {
  // Frozen from tests/oracles/compute_oracles.py: |+> under a Z channel keeps
  // populations and multiplies the coherence by sqrt(1 - V^2).
  for (double v : {0.3, 0.6, 0.9}) {
    const auto out = apply_nonselective(ket_plus(), 0, MeasurementAxis(0.0), CouplingStrength(v));
    const Matrix rho = out.density_matrix();
    EXPECT_NEAR(rho(0, 0).real(), 0.5, kTol);
    EXPECT_NEAR(rho(1, 1).real(), 0.5, kTol);
    EXPECT_NEAR(rho(0, 1).real(), 0.5 * std::sqrt(1 - v * v), kTol);
  }
}

// Analytic channel: in the sigma(theta) eigenbasis, populations are kept and
// every coherence between the two eigenspaces of `qubit` is scaled by
// sqrt(1 - V^2): rho -> P+ rho P+ + P- rho P- + c (P+ rho P- + P- rho P+).
Matrix analytic_damped(const QuantumState& s, int qubit, MeasurementAxis axis, double v) {
  const int n = s.num_qubits();
  const Matrix pp = embed(eigenprojector(axis, 1), qubit, n);
  const Matrix pm = embed(eigenprojector(axis, -1), qubit, n);
  const Matrix rho = s.density_matrix();
  const double c = std::sqrt(1 - v * v);
  return pp * rho * pp + pm * rho * pm + c * (pp * rho * pm + pm * rho * pp);
}

TEST(NonSelective, MatchesAnalyticDampingForRandomInputs) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const auto state = trial % 2 ? random_pure(n, gen) : random_mixed(n, gen);
    const int qubit = static_cast<int>(gen() % static_cast<unsigned>(n));
    const double v = std::max(1e-6, unit(gen));
    const MeasurementAxis axis(2 * M_PI * unit(gen));
    const auto out = apply_nonselective(state, qubit, axis, CouplingStrength(v));
    EXPECT_LT(max_abs_diff(out.density_matrix(), analytic_damped(state, qubit, axis, v)), kTol);
  }
}

TEST(NonSelective, StrongChannelEqualsProjectiveChannel) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto state = random_mixed(2, gen);
    const MeasurementAxis axis(0.17 * trial);
    const auto out = apply_nonselective(state, 1, axis, CouplingStrength(1.0));
    const Matrix pp = embed(eigenprojector(axis, 1), 1, 2);
    const Matrix pm = embed(eigenprojector(axis, -1), 1, 2);
    const Matrix rho = state.density_matrix();
    EXPECT_LT(max_abs_diff(out.density_matrix(), pp * rho * pp + pm * rho * pm), kTol);
  }
}

TEST(ProjectiveMeasure, BellCorrelations) {
  SeedStream rng(31);
  Vector singlet = Vector::Zero(4);
  singlet(1) = M_SQRT1_2;
  singlet(2) = -M_SQRT1_2;
  const auto psi_minus = QuantumState::pure(singlet);
  for (int i = 0; i < 200; ++i) {
    auto a = projective_measure(phi_plus(), 0, MeasurementAxis(0.0), rng);
    auto b = projective_measure(a.post_state, 1, MeasurementAxis(0.0), rng);
    EXPECT_EQ(a.raw, b.raw);
    const MeasurementAxis axis(0.1 * i);
    auto c = projective_measure(psi_minus, 0, axis, rng);
    auto d = projective_measure(c.post_state, 1, axis, rng);
    EXPECT_EQ(c.raw, -d.raw);
  }
}

TEST(ProjectiveMeasure, PostStateIsEigenprojection) {
  SeedStream rng(3);
  const MeasurementAxis axis(0.9);
  const auto out = projective_measure(QuantumState::maximally_mixed(1), 0, axis, rng);
  EXPECT_LT(max_abs_diff(out.post_state.density_matrix(), eigenprojector(axis, out.raw)), kTol);
}

TEST(Sampling, ChiSquareOnBellOutcomeDistribution) {
  // Phi+ measured at (0, 60 deg): P(equal) = (1 + cos 60)/2 = 3/4, each of the
  // four joint outcomes is 3/8, 1/8, 1/8, 3/8. Critical value chi2(3 dof) at
  // 1e-3 = 16.266236 (scipy.stats.chi2.ppf).
  SeedStream rng(20240601);
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    auto a = projective_measure(phi_plus(), 0, MeasurementAxis(0.0), rng);
    auto b = projective_measure(a.post_state, 1, MeasurementAxis::degrees(60.0), rng);
    ++counts[(a.raw > 0 ? 0 : 2) + (b.raw > 0 ? 0 : 1)];
  }
  const std::array<double, 4> expected{3.0 / 8, 1.0 / 8, 1.0 / 8, 3.0 / 8};
  double chi2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double e = expected[k] * n;
    chi2 += (counts[k] - e) * (counts[k] - e) / e;
  }
  EXPECT_LT(chi2, 16.266236);
}

TEST(Sampling, MaximallyMixedOutcomesAreFair) {
  // chi2(1 dof) at 1e-3 = 10.827566.
  SeedStream rng(8);
  int plus = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) plus += projective_measure(QuantumState::maximally_mixed(1), 0, MeasurementAxis(1.3), rng).raw > 0;
  const double e = n / 2.0;
  const double chi2 = 2 * (plus - e) * (plus - e) / e;
  EXPECT_LT(chi2, 10.827566);
}

TEST(ReadoutNoise, Cases) {
  SeedStream rng(1);
  EXPECT_EQ(apply_readout_noise(1.0, NoiseModel{}, rng), 1.0);
  EXPECT_EQ(apply_readout_noise(-1.0, NoiseModel{}, rng), -1.0);
  EXPECT_DOUBLE_EQ(apply_readout_noise(1.0, NoiseModel{0.5, 0.0}, rng), 1.5);
  EXPECT_THROW(apply_readout_noise(1.0, NoiseModel{0.0, -1.0}, rng), ContractError);
}

TEST(ReadoutNoise, UnbiasedGaussianMean) {
  SeedStream rng(77);
  const NoiseModel model{0.0, 0.3};
  double sum = 0.0;
  double sq = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double d = apply_readout_noise(1.0, model, rng) - 1.0;
    sum += d;
    sq += d * d;
  }
  EXPECT_LT(std::abs(sum / n), 4 * 0.3 / 1000.0);
  EXPECT_NEAR(std::sqrt(sq / n), 0.3, 0.003);
}

TEST(Rescale, Cases) {
  EXPECT_DOUBLE_EQ(rescale(1.0, CouplingStrength(0.5)), 2.0);
  EXPECT_DOUBLE_EQ(rescale(-1.0, CouplingStrength(1.0)), -1.0);
  EXPECT_DOUBLE_EQ(rescale(1.0, CouplingStrength(0.1)), 10.0);
}

TEST(PartialTrace, Cases) {
  const auto reduced = partial_trace(phi_plus(), {0});
  EXPECT_EQ(reduced.num_qubits(), 1);
  EXPECT_LT(max_abs_diff(reduced.density_matrix(), Matrix::Identity(2, 2) / 2.0), kTol);

  const auto same = partial_trace(phi_plus(), {0, 1});
  EXPECT_LT(max_abs_diff(same.density_matrix(), phi_plus().density_matrix()), kTol);

  const auto product = QuantumState::basis(1, 0).tensor(ket_plus());
  const auto second = partial_trace(product, {1});
  EXPECT_LT(max_abs_diff(second.density_matrix(), ket_plus().density_matrix()), kTol);

  EXPECT_THROW(partial_trace(phi_plus(), {}), ContractError);
  EXPECT_THROW(partial_trace(phi_plus(), {2}), ContractError);
  EXPECT_THROW(partial_trace(phi_plus(), {0, 0}), ContractError);
}

TEST(PartialTrace, PreservesTraceAndPicksCorrectFactor) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_mixed(1, gen);
    const auto b = random_pure(2, gen);
    const auto c = random_mixed(1, gen);
    const auto abc = a.tensor(b).tensor(c);
    EXPECT_LT(max_abs_diff(partial_trace(abc, {1, 2}).density_matrix(), b.density_matrix()), kTol);
    EXPECT_LT(max_abs_diff(partial_trace(abc, {3}).density_matrix(), c.density_matrix()), kTol);
    EXPECT_LT(max_abs_diff(partial_trace(abc, {0, 3}).density_matrix(), a.tensor(c).density_matrix()), kTol);
    EXPECT_NEAR(partial_trace(abc, {2}).density_matrix().trace().real(), 1.0, kTol);
  }
}

TEST(Concurrence, Cases) {
  EXPECT_NEAR(concurrence(phi_plus()), 1.0, kTol);
  EXPECT_NEAR(concurrence(QuantumState::maximally_mixed(2)), 0.0, kTol);
  EXPECT_NEAR(concurrence(QuantumState::basis(2, 1)), 0.0, kTol);
  // Frozen from tests/oracles/compute_oracles.py (eigen-spectrum route).
  const auto damped = apply_nonselective(phi_plus(), 0, MeasurementAxis(0.0), CouplingStrength(0.6));
  EXPECT_NEAR(concurrence(damped), 0.8, 1e-12);
  EXPECT_THROW(concurrence(QuantumState::basis(1, 0)), ContractError);
  EXPECT_THROW(concurrence(QuantumState::basis(3, 0)), ContractError);
}

TEST(Concurrence, PureStatesMatchDeterminantFormula) {
  // For |psi> = a|00> + b|01> + c|10> + d|11>, C = 2|ad - bc|. The spectral
  // route takes square roots of eigenvalues that vanish for pure states, so
  // rounding at 1e-16 shows up at the 1e-8 level.
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_pure(2, gen);
    const Vector& a = s.amplitudes();
    EXPECT_NEAR(concurrence(s), 2 * std::abs(a(0) * a(3) - a(1) * a(2)), 1e-7);
  }
}

TEST(AncillaCoupling, ReadingAncillaReproducesWeakKraus) {
  std::mt19937_64 gen(23);
  for (double v : {0.05, 0.3, 0.8, 1.0}) {
    const MeasurementAxis axis(0.4 + v);
    const auto u = ancilla_coupling_unitary(CouplingStrength(v), axis);
    EXPECT_LT((u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), kTol);
    const auto k = weak_kraus(CouplingStrength(v), axis);
    for (int trial = 0; trial < 5; ++trial) {
      const auto sys = random_mixed(1, gen);
      const auto coupled = apply_two_qubit(sys.tensor(QuantumState::basis(1, 0)), 0, 1, u);
      for (int s : {1, -1}) {
        // Ancilla outcome +1 <-> |0>.
        const auto branch = coupled.conjugated_by(eigenprojector(MeasurementAxis(0.0), s), 1);
        const Matrix sys_branch = partial_trace(branch.normalized(), {0}).density_matrix() * branch.weight();
        const Matrix expected = k[s] * sys.density_matrix() * k[s].adjoint();
        EXPECT_LT(max_abs_diff(sys_branch, expected), kTol);
      }
    }
  }
}

TEST(ApplyTwoQubit, RejectsBadQubits) {
  const auto s = QuantumState::basis(2, 0);
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  EXPECT_THROW(apply_two_qubit(s, 0, 0, id), ContractError);
  EXPECT_THROW(apply_two_qubit(s, 0, 2, id), ContractError);
}

TEST(SeedDerivation, DistinctAndStable) {
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
  EXPECT_NE(derive_seed(42, 7), derive_seed(42, 8));
  EXPECT_NE(derive_seed(42, 7), derive_seed(43, 7));
  SeedStream a(derive_seed(1, 2));
  SeedStream b(derive_seed(1, 2));
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

}  // namespace
}  // namespace blgi::qcore
