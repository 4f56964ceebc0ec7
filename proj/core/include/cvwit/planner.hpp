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

#ifndef CVWIT_PLANNER_HPP
#define CVWIT_PLANNER_HPP

#include "cvwit/channels.hpp"
#include "cvwit/conventions.hpp"

namespace cvwit {

/// Worst-case shot budget for a target accuracy. Every value is an explicit
/// upper-bound budget with the chain constants written out (2^6, 2^8, the
/// batch rule N = 34 sigma^2 / eps^2, B = ceil(2 ln(2/delta))), never a
/// claim of the number of shots actually required.
struct ComplexityBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  int m = 0;
  double s = 1.0;  // exp(max squeezing) of the target

  // Scenario-dependent bound inputs (unused ones stay zero).
  double e_max_prep = 0.0;
  double e_max_target = 0.0;
  double gamma_max = 0.0;
  double r_max = 0.0;
  double q_max = 0.0;
  double s_max = 0.0;
  double s_prime_max = 0.0;

  // Per-shot second-moment bounds entering the batch sizes.
  double chi_second_moment_bound = 0.0;
  double x_second_moment_bound = 0.0;
  double single_second_moment_bound = 0.0;

  int batches = 0;
  long long per_batch_chi = 0;
  long long per_batch_x = 0;
  long long per_batch_single = 0;
  long long n_chi = 0;
  long long n_x = 0;
  long long n_total = 0;
};

/// Frobenius-bound chain for a pure target with per-mode squeezing xi_k
/// (all >= 0): exact ||V_t^-1||_F^2 = 32 sum_k cosh(4 xi_k), then the
/// Cauchy-Schwarz step [8 sum_k cosh(2 xi_k)]^2, then the final
/// 2^6 m^2 s^4 with s = exp(max xi).
struct FrobeniusChain {
  double exact = 0.0;
  double cauchy_schwarz = 0.0;
  double final_bound = 0.0;
};

FrobeniusChain frobenius_chain(const Vec& xi);

/// The final bound 2^6 m^2 s^4 of the chain above.
double bound_frobenius(const Vec& xi);

/// State-certification budget. Two estimators share the (epsilon, delta)
/// target: the final witness error is at most (err_X + 2 err_chi)/4, so
/// err_chi = epsilon, err_X = 2 epsilon and each estimator gets delta/2,
/// which makes B = ceil(2 ln(4/delta)). Per-shot bounds:
/// E(chi^2) <= 2^6 m^3 s^4 E_max ||x_t||^2, E(X^2) <= 2^8 m^4 s^4 Gamma_max.
ComplexityBudget plan_state(double epsilon, double delta, int m, double s_t,
                            double e_max_prep, double gamma_max,
                            double x_t_norm_sq);

/// Channel-benchmark budget; same split with per-shot bounds
/// 2^6 m^4 s^4 E_max_target E_max_device and 2^8 m^4 s^4 Gamma_max.
ComplexityBudget plan_channel(double epsilon, double delta, int m, double s_u,
                              double e_max_target, double e_max_device,
                              double gamma_max);

/// Amplifier budget: one estimator, N = B ceil(34 S_max^2 r_max / eps^2)
/// with B = ceil(2 ln(2/delta)).
ComplexityBudget plan_amplifier(double epsilon, double delta, double s_max,
                                double r_max);

/// Cubic-phase budget: computes S'_max from (gamma, ensemble), then
/// N = B ceil(34 S'_max^2 q_max / eps^2).
ComplexityBudget plan_cubic(double epsilon, double delta, double gamma,
                            const ProbeEnsemble& ensemble, double q_max);

/// Coherent-set size bound 2 (1 + max|Re a| + max|Im a|) over the ensemble.
/// Note: this is a bound on sum_l |tau_l| only for unit gain; see
/// amplifier_coefficient_sum_bound for the gain-corrected version.
double amplifier_set_bound(const ProbeEnsemble& ensemble);

/// Tight bound on sum_l |tau_l(a)| over the ensemble:
/// 2 (1 + g max|Re a| + g max|Im a|).
double amplifier_coefficient_sum_bound(const ProbeEnsemble& ensemble,
                                       double g);

/// Bound on sum_l |kappa_l(a)| over the ensemble:
/// 1 + 9 g^2/4 + (1 + 2 sqrt 2)|g| + max|1 + 3 g Im a|
///   + 2 max|Re a| + 2 max|Im a|   (g = gamma).
double cubic_coefficient_sum_bound(double gamma,
                                   const ProbeEnsemble& ensemble);

}  // namespace cvwit

#endif
