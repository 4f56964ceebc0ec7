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
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cvwit/errors.hpp"

namespace cvwit {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// exp(i H) for Hermitian H, exact in the truncated space.
CMat unitary_from_hermitian(const CMat& H) {
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  if (es.info() != Eigen::Success) {
    throw NumericError("unitary_from_hermitian: eigendecomposition failed");
  }
  const Vec& lam = es.eigenvalues();
  CVec phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); i++) {
    phases(i) = std::exp(std::complex<double>(0.0, lam(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FockOperatorSet make_fock_operators(int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("make_fock_operators: cutoff too small");
  FockOperatorSet ops;
  ops.cutoff = cutoff;
  ops.a = CMat::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; n++) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ops.adag = ops.a.adjoint();
  ops.n = ops.adag * ops.a;
  ops.q = 0.5 * (ops.a + ops.adag);
  ops.p = std::complex<double>(0.0, -0.5) * (ops.a - ops.adag);
  return ops;
}

CVec coherent_fock(std::complex<double> alpha, int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("coherent_fock: cutoff too small");
  CVec c(cutoff);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < cutoff; n++) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  double deficiency = 1.0 - c.squaredNorm();
  if (deficiency > 1e-10) {
    throw NumericError("coherent_fock: cutoff truncates the coherent state; increase it");
  }
  return c / c.norm();
}

CMat cubic_phase_unitary(double gamma, int cutoff) {
  FockOperatorSet ops = make_fock_operators(cutoff);
  CMat q3 = ops.q * ops.q * ops.q;
  return unitary_from_hermitian(gamma * q3);
}

CMat displacement_unitary(std::complex<double> alpha, int cutoff) {
  FockOperatorSet ops = make_fock_operators(cutoff);
  // alpha a^dag - conj(alpha) a = i H with Hermitian H.
  CMat G = alpha * ops.adag - std::conj(alpha) * ops.a;
  CMat H = std::complex<double>(0.0, -1.0) * G;
  return unitary_from_hermitian(H);
}

CVec fock_cubic_state(std::complex<double> alpha, double gamma, int cutoff,
                      bool check_convergence) {
  CVec state = cubic_phase_unitary(gamma, cutoff) * coherent_fock(alpha, cutoff);
  if (std::abs(state.norm() - 1.0) > 1e-8) {
    throw NumericError("fock_cubic_state: norm drift beyond tolerance");
  }
  if (check_convergence) {
    CVec big = cubic_phase_unitary(gamma, 2 * cutoff) * coherent_fock(alpha, 2 * cutoff);
    std::complex<double> overlap = big.head(cutoff).adjoint() * state;
    if (std::abs(overlap) < 1.0 - 1e-8) {
      throw NumericError(
          "fock_cubic_state: cutoff not converged (doubling changed the state); "
          "increase the Fock cutoff");
    }
  }
  return state;
}

double fock_expectation(const CVec& state, const CMat& obs) {
  if (std::abs(state.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("fock_expectation: state is not normalized");
  }
  if (obs.rows() != obs.cols() || obs.rows() != state.size()) {
    throw std::invalid_argument("fock_expectation: dimension mismatch");
  }
  std::complex<double> val = state.adjoint() * (obs * state);
  double scale = std::max(1.0, std::abs(val));
  if (std::abs(val.imag()) > 1e-8 * scale) {
    throw NumericError("fock_expectation: expectation has a non-real part; observable not Hermitian?");
  }
  return val.real();
}

CMat rotated_quadrature_power(const FockOperatorSet& ops, double theta, int power) {
  if (power < 0) throw std::invalid_argument("rotated_quadrature_power: negative power");
  CMat base = std::cos(theta) * ops.q + std::sin(theta) * ops.p;
  CMat out = CMat::Identity(ops.cutoff, ops.cutoff);
  for (int i = 0; i < power; i++) out = out * base;
  return out;
}

CMat cubic_witness_operator(double gamma, std::complex<double> alpha, int cutoff) {
  FockOperatorSet ops = make_fock_operators(cutoff);
  CMat U = cubic_phase_unitary(gamma, cutoff);
  CMat D = displacement_unitary(alpha, cutoff);
  CMat UD = U * D;
  return CMat::Identity(cutoff, cutoff) - UD * ops.n * UD.adjoint();
}

CVec project_to_fock(const GridWavefunction& psi, int cutoff) {
  // Oscillator eigenfunctions for vacuum variance 1/4: phi_n(q) =
  // 2^{1/4} h_n(sqrt(2) q), with h_n the standard orthonormal Hermite
  // functions, via the stable recurrence
  // h_{n+1}(u) = u sqrt(2/(n+1)) h_n(u) - sqrt(n/(n+1)) h_{n-1}(u).
  const int ngrid = psi.size();
  const double dq = psi.dq();
  CVec coeff = CVec::Zero(cutoff);
  Vec h_prev = Vec::Zero(ngrid), h_cur(ngrid);
  for (int j = 0; j < ngrid; j++) {
    double u = std::sqrt(2.0) * psi.q_at(j);
    h_cur(j) = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
  }
  const double scale = std::pow(2.0, 0.25);
  for (int n = 0; n < cutoff; n++) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < ngrid; j++) acc += scale * h_cur(j) * psi.samples()(j);
    coeff(n) = acc * dq;
    Vec h_next(ngrid);
    double c1 = std::sqrt(2.0 / (n + 1.0));
    double c2 = std::sqrt(n / (n + 1.0));
    for (int j = 0; j < ngrid; j++) {
      double u = std::sqrt(2.0) * psi.q_at(j);
      h_next(j) = u * c1 * h_cur(j) - c2 * h_prev(j);
    }
    h_prev.swap(h_cur);
    h_cur.swap(h_next);
  }
  return coeff;
}

}  // namespace cvwit
