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

#include "cvwit/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "cvwit/errors.hpp"

namespace cvwit {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kUncertaintyTol = 1e-9;
constexpr double kCpTol = 1e-9;
constexpr double kSymplecticTol = 1e-10;

int checked_modes(Eigen::Index dim, const char* what) {
  if (dim <= 0 || dim % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": phase-space dimension must be even and positive");
  }
  return static_cast<int>(dim / 2);
}

void check_symmetric(const Mat& M, double tol, const char* what) {
  if (M.rows() != M.cols() || (M - M.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
  }
}

// Minimum eigenvalue of the Hermitian matrix A + (i/4) B with A, B real,
// B antisymmetric.
double min_eig_hermitian_part(const Mat& A, const Mat& B) {
  CMat H = A.cast<std::complex<double>>() +
           std::complex<double>(0.0, 0.25) * B.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  return es.eigenvalues().minCoeff();
}

}  // namespace

GaussianState make_state(const Vec& x, const Mat& V) {
  int m = checked_modes(V.rows(), "make_state");
  if (x.size() != V.rows()) throw std::invalid_argument("make_state: x/V size mismatch");
  check_symmetric(V, kSymmetryTol, "make_state");
  Mat J = symplectic_form(m);
  if (min_eig_hermitian_part(V, J) < -kUncertaintyTol) {
    throw std::invalid_argument("make_state: covariance violates the uncertainty relation");
  }
  return GaussianState{x, V, m};
}

GaussianUnitary make_unitary(const Mat& S, const Vec& d) {
  int m = checked_modes(S.rows(), "make_unitary");
  if (S.rows() != S.cols() || d.size() != S.rows()) {
    throw std::invalid_argument("make_unitary: S/d size mismatch");
  }
  Mat J = symplectic_form(m);
  if ((S * J * S.transpose() - J).cwiseAbs().maxCoeff() > kSymplecticTol) {
    throw std::invalid_argument("make_unitary: S is not symplectic");
  }
  return GaussianUnitary{S, d, m};
}

GaussianChannelMap make_channel(const Mat& X, const Mat& Y, const Vec& d) {
  int m = checked_modes(X.rows(), "make_channel");
  if (X.rows() != X.cols() || Y.rows() != X.rows() || d.size() != X.rows()) {
    throw std::invalid_argument("make_channel: X/Y/d size mismatch");
  }
  check_symmetric(Y, 1e-10, "make_channel(Y)");
  Mat J = symplectic_form(m);
  Mat B = J - X * J * X.transpose();
  if (min_eig_hermitian_part(Y, B) < -kCpTol) {
    throw ConfigError("make_channel: map is not completely positive");
  }
  return GaussianChannelMap{X, Y, d, m};
}

GaussianState vacuum_state(int modes) {
  if (modes <= 0) throw std::invalid_argument("vacuum_state: bad mode count");
  return GaussianState{Vec::Zero(2 * modes),
                       kVacuumVariance * Mat::Identity(2 * modes, 2 * modes), modes};
}

Vec coherent_means(const std::vector<std::complex<double>>& alpha) {
  if (alpha.empty()) throw std::invalid_argument("coherent_means: empty amplitude vector");
  Vec x(2 * static_cast<int>(alpha.size()));
  for (size_t j = 0; j < alpha.size(); j++) {
    x(2 * j) = alpha[j].real();
    x(2 * j + 1) = alpha[j].imag();
  }
  return x;
}

GaussianState coherent_state(const std::vector<std::complex<double>>& alpha) {
  int m = static_cast<int>(alpha.size());
  if (m == 0) throw std::invalid_argument("coherent_state: empty amplitude vector");
  return GaussianState{coherent_means(alpha),
                       kVacuumVariance * Mat::Identity(2 * m, 2 * m), m};
}

GaussianState apply_unitary(const GaussianUnitary& U, const GaussianState& rho) {
  if (U.modes != rho.modes) throw std::invalid_argument("apply_unitary: mode mismatch");
  return GaussianState{U.S * rho.x + U.d, U.S * rho.V * U.S.transpose(), rho.modes};
}

GaussianState apply_channel(const GaussianChannelMap& C, const GaussianState& rho) {
  if (C.modes != rho.modes) throw std::invalid_argument("apply_channel: mode mismatch");
  return GaussianState{C.X * rho.x + C.d,
                       C.X * rho.V * C.X.transpose() + C.Y, rho.modes};
}

GaussianChannelMap compose_channels(const GaussianChannelMap& c2,
                                    const GaussianChannelMap& c1) {
  if (c2.modes != c1.modes) throw std::invalid_argument("compose_channels: mode mismatch");
  return GaussianChannelMap{c2.X * c1.X,
                            c2.X * c1.Y * c2.X.transpose() + c2.Y,
                            c2.X * c1.d + c2.d, c1.modes};
}

GaussianChannelMap identity_channel(int modes) {
  int n = 2 * modes;
  return make_channel(Mat::Identity(n, n), Mat::Zero(n, n), Vec::Zero(n));
}

GaussianChannelMap loss_channel(int modes, double eta) {
  if (eta < 0.0 || eta > 1.0) throw ConfigError("loss_channel: eta must lie in [0, 1]");
  int n = 2 * modes;
  return make_channel(std::sqrt(eta) * Mat::Identity(n, n),
                      (1.0 - eta) * kVacuumVariance * Mat::Identity(n, n),
                      Vec::Zero(n));
}

GaussianChannelMap thermal_noise_channel(int modes, double nbar) {
  if (nbar < 0.0) throw ConfigError("thermal_noise_channel: nbar must be >= 0");
  int n = 2 * modes;
  return make_channel(Mat::Identity(n, n),
                      (nbar / 2.0) * Mat::Identity(n, n), Vec::Zero(n));
}

Vec symplectic_spectrum(const Mat& V) {
  int m = checked_modes(V.rows(), "symplectic_spectrum");
  Mat JV = symplectic_form(m) * V;
  Eigen::EigenSolver<Mat> es(JV);
  // Eigenvalues come in +-i nu pairs; collect magnitudes and fold the pairs.
  std::vector<double> mags(2 * m);
  for (int i = 0; i < 2 * m; i++) mags[i] = std::abs(es.eigenvalues()(i));
  std::sort(mags.begin(), mags.end());
  Vec nu(m);
  for (int k = 0; k < m; k++) nu(k) = 0.5 * (mags[2 * k] + mags[2 * k + 1]);
  return nu;
}

bool is_pure(const GaussianState& rho, double tol) {
  Vec nu = symplectic_spectrum(rho.V);
  return (nu.array() - kVacuumVariance).abs().maxCoeff() <= tol;
}

double overlap_pure(const GaussianState& target, const GaussianState& prep) {
  if (target.modes != prep.modes) throw std::invalid_argument("overlap_pure: mode mismatch");
  if (!is_pure(target)) throw std::domain_error("overlap_pure: target state is not pure");
  const int m = target.modes;
  Mat sum = target.V + prep.V;
  Eigen::LLT<Mat> llt(sum);
  if (llt.info() != Eigen::Success) {
    throw NumericError("overlap_pure: V_t + V_p is not positive definite");
  }
  Vec delta = target.x - prep.x;
  double quad = delta.dot(llt.solve(delta));
  double logdet = 0.0;
  for (int i = 0; i < sum.rows(); i++) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  return std::exp(-m * std::log(2.0) - 0.5 * logdet - 0.5 * quad);
}

OverlapTraces exact_overlap_traces(const GaussianState& target,
                                   const GaussianState& prep) {
  if (target.modes != prep.modes) throw std::invalid_argument("exact_overlap_traces: mode mismatch");
  if (!is_pure(target)) throw std::domain_error("exact_overlap_traces: target state is not pure");
  Mat Vt_inv = target.V.llt().solve(Mat::Identity(target.V.rows(), target.V.cols()));
  OverlapTraces t;
  t.t1 = (Vt_inv * prep.second_moments()).trace();
  t.t2 = target.x.dot(Vt_inv * prep.x);
  t.t3 = target.x.dot(Vt_inv * target.x);
  return t;
}

double trace_second_moments(const GaussianState& rho) {
  return rho.second_moments().trace();
}

double max_mode_energy(const GaussianState& rho) {
  Mat gamma = rho.second_moments();
  double best = 0.0;
  for (int j = 0; j < rho.modes; j++) {
    best = std::max(best, gamma(2 * j, 2 * j) + gamma(2 * j + 1, 2 * j + 1));
  }
  return best;
}

}  // namespace cvwit
