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

#include "cvwit/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "cvwit/errors.hpp"

namespace cvwit {

namespace {

constexpr double kPurityTol = 1e-6;    // allowed deviation of nu_k from 1/4
constexpr double kPairTol = 1e-8;      // reciprocal-pair product tolerance
constexpr double kZeroXiTol = 1e-9;    // below this a mode counts as unsqueezed

void require_even_square(const Mat& M, const char* what) {
  if (M.rows() != M.cols() || M.rows() == 0 || M.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(what) +
                                ": expected a square matrix of even dimension");
  }
}

}  // namespace

Mat SymplecticDecomposition::D() const {
  int m = static_cast<int>(xi.size());
  Mat d = Mat::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; j++) {
    d(2 * j, 2 * j) = std::exp(-xi[j]);
    d(2 * j + 1, 2 * j + 1) = std::exp(xi[j]);
  }
  return d;
}

Mat SymplecticDecomposition::reconstruct() const { return O * D() * Oprime; }

bool is_symplectic(const Mat& M, double tol) {
  require_even_square(M, "is_symplectic");
  Mat J = symplectic_form(static_cast<int>(M.rows()) / 2);
  return ((M * J * M.transpose() - J).cwiseAbs().maxCoeff() <= tol);
}

SymplecticDecomposition williamson_euler(const Mat& V) {
  require_even_square(V, "williamson_euler");
  const int n = static_cast<int>(V.rows());
  const int m = n / 2;
  if ((V - V.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::domain_error("williamson_euler: covariance is not symmetric");
  }

  // Work with M = 4V so a pure state has reciprocal eigenvalue pairs
  // (e^-2xi, e^+2xi) and M is itself symmetric positive definite symplectic.
  Eigen::SelfAdjointEigenSolver<Mat> es(4.0 * V);
  if (es.info() != Eigen::Success) {
    throw NumericError("williamson_euler: eigendecomposition failed");
  }
  const Vec lam = es.eigenvalues();  // ascending
  const Mat U = es.eigenvectors();
  if (lam(0) <= 0.0) {
    throw std::domain_error("williamson_euler: covariance is not positive definite");
  }

  // Purity gate: every symplectic eigenvalue of V must sit at 1/4. For a
  // symmetric M the symplectic eigenvalues are the sqrt of the paired
  // products, so check those directly (pairing smallest with largest).
  double purity_dev = 0.0;
  for (int i = 0; i < m; i++) {
    double product = lam(i) * lam(n - 1 - i);
    double nu_dev = std::abs(std::sqrt(product) / 4.0 - 0.25);
    purity_dev = std::max(purity_dev, nu_dev);
    if (std::abs(product - 1.0) > kPairTol && nu_dev > kPurityTol) {
      throw NumericError(
          "williamson_euler: state is not pure (symplectic eigenvalue off 1/4)");
    }
  }

  const Mat J = symplectic_form(m);
  const Mat Jt = J.transpose();

  struct ModeBlock {
    double xi;
    Vec u, v;
  };
  std::vector<ModeBlock> blocks;
  blocks.reserve(m);

  // Squeezed modes: take each eigenvector u on the small-eigenvalue side;
  // its partner v = J^T u spans the large side (M J M = J for symplectic M,
  // so M (J^T u) = lam^-1 (J^T u)). Ascending lam order makes xi descending.
  std::vector<int> unit_indices;
  for (int i = 0; i < n; i++) {
    double xi_small = -0.5 * std::log(lam(i));
    if (xi_small > kZeroXiTol) {
      // Refine with the paired large eigenvalue for symmetric accuracy.
      double xi = 0.25 * std::log(lam(n - 1 - i) / lam(i));
      Vec u = U.col(i);
      Vec v = Jt * u;
      v.normalize();
      blocks.push_back({xi, u, v});
    } else if (xi_small > -kZeroXiTol) {
      unit_indices.push_back(i);
    }
    // Large-side eigenvectors are implied by their partners; skip them.
  }

  // Unsqueezed subspace: J-invariant, so it admits an orthonormal basis of
  // (w, J^T w) pairs. Build one by Gram-Schmidt on the J-complement.
  if (!unit_indices.empty()) {
    Mat span(n, static_cast<int>(unit_indices.size()));
    for (size_t c = 0; c < unit_indices.size(); c++) {
      span.col(static_cast<int>(c)) = U.col(unit_indices[c]);
    }
    while (span.cols() > 0) {
      Vec w = span.col(0);
      w.normalize();
      Vec v = Jt * w;
      // Project v back onto the current span to suppress numerical leakage.
      v = span * (span.transpose() * v);
      v -= w.dot(v) * w;
      double vn = v.norm();
      if (vn < 0.5) {
        throw NumericError("williamson_euler: unsqueezed subspace is not J-closed");
      }
      v /= vn;
      blocks.push_back({0.0, w, v});
      if (span.cols() == 2) break;
      // Orthogonal complement of {w, v} inside the span. Column pivoting
      // pushes the two annihilated directions to the back.
      Mat reduced = span - w * (w.transpose() * span) - v * (v.transpose() * span);
      Eigen::ColPivHouseholderQR<Mat> qr(reduced);
      Mat qfull = qr.householderQ();
      span = qfull.leftCols(span.cols() - 2);
    }
  }

  if (static_cast<int>(blocks.size()) != m) {
    throw NumericError("williamson_euler: eigenvalue pairing failed");
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const ModeBlock& a, const ModeBlock& b) { return a.xi > b.xi; });

  SymplecticDecomposition dec;
  dec.O = Mat(n, n);
  dec.Oprime = Mat::Identity(n, n);
  dec.xi = Vec(m);
  for (int j = 0; j < m; j++) {
    dec.O.col(2 * j) = blocks[j].u;
    dec.O.col(2 * j + 1) = blocks[j].v;
    dec.xi(j) = blocks[j].xi;
  }

  // Safety net: for exactly pure inputs this holds at 1e-8; states that are
  // only approximately pure (within the 1e-6 purity gate) degrade linearly.
  double recon_tol = std::max(1e-8, 40.0 * purity_dev * (1.0 + V.cwiseAbs().maxCoeff()));
  Mat rebuilt = 0.25 * dec.O * dec.D() * dec.D() * dec.O.transpose();
  if ((rebuilt - V).cwiseAbs().maxCoeff() > recon_tol) {
    throw NumericError("williamson_euler: reconstruction check failed");
  }
  return dec;
}

double max_squeezing(const SymplecticDecomposition& dec) {
  if (dec.xi.size() == 0) throw std::invalid_argument("max_squeezing: empty decomposition");
  return std::max(0.0, dec.xi.maxCoeff());
}

Mat random_orthogonal_symplectic(int m, Philox4x32& rng) {
  if (m <= 0) throw std::invalid_argument("random_orthogonal_symplectic: bad mode count");
  // Haar unitary from QR of a complex Ginibre matrix with phase fix, then
  // realified into 2x2 rotation-scaled blocks (the image of U(m) inside
  // Sp(2m) Int O(2m)).
  CMat G(m, m);
  for (int r = 0; r < m; r++) {
    for (int c = 0; c < m; c++) {
      G(r, c) = std::complex<double>(rng.normal(), rng.normal()) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<CMat> qr(G);
  CMat Q = qr.householderQ();
  CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < m; c++) {
    std::complex<double> d = R(c, c);
    double a = std::abs(d);
    Q.col(c) *= (a > 0) ? (d / a) : std::complex<double>(1.0, 0.0);
  }
  Mat S(2 * m, 2 * m);
  for (int r = 0; r < m; r++) {
    for (int c = 0; c < m; c++) {
      double re = Q(r, c).real(), im = Q(r, c).imag();
      S(2 * r, 2 * c) = re;
      S(2 * r, 2 * c + 1) = -im;
      S(2 * r + 1, 2 * c) = im;
      S(2 * r + 1, 2 * c + 1) = re;
    }
  }
  return S;
}

Mat random_symplectic(int m, double xi_max, Philox4x32& rng) {
  if (xi_max < 0) throw std::invalid_argument("random_symplectic: xi_max must be >= 0");
  Mat O = random_orthogonal_symplectic(m, rng);
  Mat Oprime = random_orthogonal_symplectic(m, rng);
  std::vector<double> xi(m);
  for (int j = 0; j < m; j++) xi[j] = rng.uniform(0.0, xi_max);
  std::sort(xi.begin(), xi.end(), std::greater<double>());
  Mat D = Mat::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; j++) {
    D(2 * j, 2 * j) = std::exp(-xi[j]);
    D(2 * j + 1, 2 * j + 1) = std::exp(xi[j]);
  }
  return O * D * Oprime;
}

Mat squeezer(int m, int mode, double xi) {
  if (mode < 0 || mode >= m) throw std::invalid_argument("squeezer: mode out of range");
  Mat S = Mat::Identity(2 * m, 2 * m);
  S(2 * mode, 2 * mode) = std::exp(-xi);
  S(2 * mode + 1, 2 * mode + 1) = std::exp(xi);
  return S;
}

Mat rotation(int m, int mode, double theta) {
  if (mode < 0 || mode >= m) throw std::invalid_argument("rotation: mode out of range");
  Mat S = Mat::Identity(2 * m, 2 * m);
  double c = std::cos(theta), s = std::sin(theta);
  S(2 * mode, 2 * mode) = c;
  S(2 * mode, 2 * mode + 1) = s;
  S(2 * mode + 1, 2 * mode) = -s;
  S(2 * mode + 1, 2 * mode + 1) = c;
  return S;
}

Mat beamsplitter(int m, int mode_a, int mode_b, double theta) {
  if (mode_a < 0 || mode_a >= m || mode_b < 0 || mode_b >= m || mode_a == mode_b) {
    throw std::invalid_argument("beamsplitter: bad mode pair");
  }
  Mat S = Mat::Identity(2 * m, 2 * m);
  double c = std::cos(theta), s = std::sin(theta);
  for (int off = 0; off < 2; off++) {  // same mixing for q and p
    int a = 2 * mode_a + off, b = 2 * mode_b + off;
    S(a, a) = c;
    S(a, b) = s;
    S(b, a) = s;
    S(b, b) = -c;
  }
  return S;
}

}  // namespace cvwit
