// Copyright 2026 The cvwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvwit/fock.hpp"

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "cvwit/errors.hpp"

namespace cvwit {
namespace {

using namespace std::complex_literals;

// Largest-magnitude entry of the upper-left block, where truncation
// artifacts from operator products cannot reach.
double interior_max(const CMat& M, int block) {
  return M.topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

TEST(FockOperators, LadderAlgebra) {
  FockOperatorSet ops = make_fock_operators(32);
  EXPECT_NEAR(std::abs(ops.a(0, 1) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ops.a(3, 4) - 2.0), 0.0, 1e-14);
  // n = a^dag a exactly, even at the truncation edge.
  EXPECT_NEAR((ops.n - ops.adag * ops.a).cwiseAbs().maxCoeff(), 0.0, 1e-13);
}

TEST(FockOperators, CanonicalCommutator) {
  FockOperatorSet ops = make_fock_operators(48);
  CMat comm = ops.q * ops.p - ops.p * ops.q;
  CMat want = 0.5i * CMat::Identity(48, 48);
  EXPECT_LT(interior_max(comm - want, 40), 1e-12);
}

TEST(FockOperators, EnergyIdentity) {
  FockOperatorSet ops = make_fock_operators(48);
  // q^2 + p^2 = n + 1/2 away from the truncation edge.
  CMat lhs = ops.q * ops.q + ops.p * ops.p;
  CMat rhs = ops.n + 0.5 * CMat::Identity(48, 48);
  EXPECT_LT(interior_max(lhs - rhs, 40), 1e-12);
}

TEST(CoherentFock, PhotonStatistics) {
  std::complex<double> alpha{1.0, -0.5};
  CVec c = coherent_fock(alpha, 48);
  EXPECT_NEAR(c.squaredNorm(), 1.0, 1e-12);
  FockOperatorSet ops = make_fock_operators(48);
  EXPECT_NEAR(fock_expectation(c, ops.n), std::norm(alpha), 1e-10);
  // |<0|alpha>|^2 = exp(-|alpha|^2).
  EXPECT_NEAR(std::norm(c(0)), std::exp(-std::norm(alpha)), 1e-12);
}

TEST(CoherentFock, RejectsTruncatingCutoff) {
  EXPECT_THROW(coherent_fock({4.0, 0.0}, 8), NumericError);
}

TEST(DisplacementUnitary, GeneratesCoherentStates) {
  std::complex<double> alpha{0.7, 0.4};
  int cutoff = 48;
  CMat D = displacement_unitary(alpha, cutoff);
  CVec vac = CVec::Zero(cutoff);
  vac(0) = 1.0;
  CVec got = D * vac;
  CVec want = coherent_fock(alpha, cutoff);
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(DisplacementUnitary, InteriorUnitarity) {
  CMat D = displacement_unitary({0.5, -0.3}, 48);
  CMat gram = D.adjoint() * D;
  EXPECT_LT(interior_max(gram - CMat::Identity(48, 48), 36), 1e-8);
}

TEST(CubicPhaseUnitary, ZeroStrengthIsIdentity) {
  CMat U = cubic_phase_unitary(0.0, 24);
  EXPECT_LT((U - CMat::Identity(24, 24)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CubicPhaseUnitary, UnitaryAndNontrivial) {
  CMat U = cubic_phase_unitary(0.1, 64);
  CMat gram = U.adjoint() * U;
  EXPECT_LT((gram - CMat::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_GT((U - CMat::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(FockCubicState, ConvergedAndNormalized) {
  CVec psi = fock_cubic_state({0.3, 0.1}, 0.1, 64);
  EXPECT_NEAR(psi.squaredNorm(), 1.0, 1e-10);
}

TEST(FockExpectation, GuardsInputs) {
  FockOperatorSet ops = make_fock_operators(16);
  CVec bad = CVec::Ones(16);  // not normalized
  EXPECT_THROW(fock_expectation(bad, ops.n), std::invalid_argument);
  // <alpha| a |alpha> = alpha is complex for alpha = i: flagged as non-real.
  CVec coh = coherent_fock({0.0, 1.0}, 16);
  EXPECT_THROW(fock_expectation(coh, ops.a), NumericError);
  CVec vac = CVec::Zero(16);
  vac(0) = 1.0;
  EXPECT_NEAR(fock_expectation(vac, ops.n), 0.0, 1e-14);
}

TEST(RotatedQuadraturePower, MatchesComposition) {
  FockOperatorSet ops = make_fock_operators(32);
  CMat q1 = rotated_quadrature_power(ops, 0.0, 1);
  EXPECT_LT((q1 - ops.q).cwiseAbs().maxCoeff(), 1e-13);
  CMat p2 = rotated_quadrature_power(ops, 1.5707963267948966, 2);
  EXPECT_LT(interior_max(p2 - ops.p * ops.p, 28), 1e-12);
  double theta = 0.6;
  CMat r = std::cos(theta) * ops.q + std::sin(theta) * ops.p;
  CMat r3 = rotated_quadrature_power(ops, theta, 3);
  EXPECT_LT(interior_max(r3 - r * r * r, 26), 1e-11);
}

TEST(CubicWitnessOperator, SaturatesOnTheExactState) {
  std::complex<double> alpha{0.2, -0.1};
  double gamma = 0.1;
  int cutoff = 64;
  CVec psi = fock_cubic_state(alpha, gamma, cutoff);
  CMat W = cubic_witness_operator(gamma, alpha, cutoff);
  EXPECT_NEAR(fock_expectation(psi, W), 1.0, 1e-9);
}

TEST(CubicWitnessOperator, PenalizesOrthogonalExcitation) {
  // On U D |1> the witness evaluates to 1 - <1|n|1> = 0.
  int cutoff = 64;
  std::complex<double> alpha{0.0, 0.0};
  double gamma = 0.08;
  CMat U = cubic_phase_unitary(gamma, cutoff);
  CVec one = CVec::Zero(cutoff);
  one(1) = 1.0;
  CVec psi = U * one;
  psi /= psi.norm();
  CMat W = cubic_witness_operator(gamma, alpha, cutoff);
  EXPECT_NEAR(fock_expectation(psi, W), 0.0, 1e-8);
}

TEST(ProjectToFock, CoherentGridMatchesAnalyticCoefficients) {
  GridSpec spec;
  std::complex<double> alpha{0.9, 0.35};
  GridWavefunction psi = make_coherent_wavefunction(spec, alpha);
  CVec got = project_to_fock(psi, 32);
  CVec want = coherent_fock(alpha, 32);
  // The grid builder's exp(2 i p0 (q - q0)) convention differs from
  // D(alpha)|0> by the global phase e^{-i q0 p0}; compare as rays.
  std::complex<double> overlap = want.dot(got);
  ASSERT_NEAR(std::abs(overlap), 1.0, 1e-8);
  got *= std::conj(overlap) / std::abs(overlap);
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ProjectToFock, VacuumIsGroundState) {
  GridSpec spec;
  GridWavefunction vac = make_coherent_wavefunction(spec, {0.0, 0.0});
  CVec c = project_to_fock(vac, 16);
  EXPECT_NEAR(std::abs(c(0)), 1.0, 1e-10);
  EXPECT_LT(c.tail(15).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ProjectToFock, CubicGridStateMatchesFockConstruction) {
  // The same state built through the grid pipeline and through truncated
  // matrices must agree: cross-validation of two independent backends.
  GridSpec spec;
  std::complex<double> alpha{0.4, 0.2};
  double gamma = 0.12;
  GridWavefunction grid_state = apply_cubic_phase(
      make_coherent_wavefunction(spec, alpha), gamma);
  CVec via_grid = project_to_fock(grid_state, 64);
  CVec via_fock = fock_cubic_state(alpha, gamma, 64);
  std::complex<double> ov = via_fock.adjoint() * via_grid;
  EXPECT_NEAR(std::norm(ov), 1.0, 1e-8);
}

}  // namespace
}  // namespace cvwit
