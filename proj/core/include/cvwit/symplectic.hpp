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

#ifndef CVWIT_SYMPLECTIC_HPP
#define CVWIT_SYMPLECTIC_HPP

#include "cvwit/conventions.hpp"
#include "cvwit/rng.hpp"

namespace cvwit {

/// Euler-style factorization S = O * D * Oprime of a symplectic matrix,
/// with O, Oprime orthogonal-symplectic and D = diag(e^-xi_1, e^xi_1, ...).
/// xi holds the per-mode squeezing parameters, sorted descending.
struct SymplecticDecomposition {
  Mat O;
  Mat Oprime;
  Vec xi;

  /// The diagonal factor rebuilt from xi.
  Mat D() const;

  /// O * D() * Oprime.
  Mat reconstruct() const;
};

/// True when M J M^T = J within entrywise tolerance `tol`.
bool is_symplectic(const Mat& M, double tol);

/// Factorize the covariance matrix of a *pure* Gaussian state as
/// V = (1/4) O D^2 O^T (Oprime of the result is the identity).
///
/// Throws std::domain_error when V is not symmetric positive definite and
/// NumericError when its symplectic spectrum deviates from purity by more
/// than 1e-6.
SymplecticDecomposition williamson_euler(const Mat& V);

/// Largest squeezing parameter xi_max of the decomposition (>= 0).
double max_squeezing(const SymplecticDecomposition& dec);

/// Haar-random orthogonal-symplectic times random squeezing: S = O D Oprime
/// with each xi_k drawn uniformly from [0, xi_max].
Mat random_symplectic(int m, double xi_max, Philox4x32& rng);

// Building blocks for targets and fixtures. Matrices act on the interleaved
// quadrature ordering (q_1, p_1, ..., q_m, p_m).

/// Single-mode squeezer diag(e^-xi, e^xi) embedded at `mode` of `m` modes.
Mat squeezer(int m, int mode, double xi);

/// Single-mode phase-space rotation by theta embedded at `mode`:
/// q -> cos(theta) q + sin(theta) p, p -> -sin(theta) q + cos(theta) p.
Mat rotation(int m, int mode, double theta);

/// Beamsplitter mixing modes a and b; theta = pi/4 gives the balanced
/// splitter with coherent (alpha, 0) -> (alpha/sqrt2, alpha/sqrt2):
/// mode_a' = cos(theta) a + sin(theta) b, mode_b' = sin(theta) a - cos(theta) b.
Mat beamsplitter(int m, int mode_a, int mode_b, double theta);

/// Haar-random orthogonal-symplectic matrix (realified Haar unitary).
Mat random_orthogonal_symplectic(int m, Philox4x32& rng);

}  // namespace cvwit

#endif
