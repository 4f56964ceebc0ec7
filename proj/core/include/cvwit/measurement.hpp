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

#ifndef CVWIT_MEASUREMENT_HPP
#define CVWIT_MEASUREMENT_HPP

#include <utility>

#include "cvwit/gaussian.hpp"
#include "cvwit/rng.hpp"

namespace cvwit {

// Quadrature indices are 0-based throughout: index 2j is q of mode j,
// index 2j+1 is p of mode j.

/// Single homodyne outcome for quadrature k: Normal(x_k, V_kk).
double homodyne_single(const GaussianState& rho, int k, Philox4x32& rng);

/// Homodyne of cos(theta) q_j + sin(theta) p_j on mode j.
double homodyne_rotated(const GaussianState& rho, int mode, double theta,
                        Philox4x32& rng);

/// Joint homodyne of quadratures k and l: bivariate Normal with the
/// corresponding sub-block of (x, V). k == l returns the same draw twice.
/// Same-mode conjugate pairs (2j, 2j+1) cannot be measured jointly; that
/// case throws std::logic_error (use sample_gamma_entry's rotated scheme).
std::pair<double, double> homodyne_pair(const GaussianState& rho, int k, int l,
                                        Philox4x32& rng);

/// Which observable produced a same-mode-conjugate second-moment shot.
enum class SubObservable { kNone, kRotated, kQSquared, kPSquared };

struct SecondMomentOutcome {
  int k = 0;
  int l = 0;
  double value = 0.0;
  SubObservable sub = SubObservable::kNone;
};

/// One-shot unbiased estimate of Gamma_kl = V_kl + x_k x_l.
///
/// Non-conjugate (k, l): value = r'_k r'_l from a joint homodyne.
/// Same-mode conjugate (2j, 2j+1): the symmetrized moment (q p + p q)/2 is
/// not directly measurable; decompose it as [(q+p)/sqrt(2)]^2 - q^2/2 -
/// p^2/2, pick one of the three observables uniformly and weight the
/// squared outcome by 3 c_y with c_y in {+1, -1/2, -1/2}.
SecondMomentOutcome sample_gamma_entry(const GaussianState& rho, int k, int l,
                                       Philox4x32& rng);

/// Exact E[value^2] of sample_gamma_entry's output, from Gaussian moment
/// identities. Oracle for unbiasedness/variance tests and the Gamma_max
/// bound input of the planner.
double exact_gamma_entry_second_moment(const GaussianState& rho, int k, int l);

/// max over (k, l) of exact_gamma_entry_second_moment.
double gamma_max_sampled(const GaussianState& rho);

}  // namespace cvwit

#endif
