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

#include "cvwit/planner.hpp"

#include <cmath>
#include <stdexcept>

#include "cvwit/estimators.hpp"

namespace cvwit {

namespace {

void check_accuracy(double epsilon, double delta, const char* who) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": delta must lie in (0, 1)");
  }
}

void check_positive(double v, const char* who, const char* what) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": " + what +
                                " must be positive");
  }
}

}  // namespace

FrobeniusChain frobenius_chain(const Vec& xi) {
  if (xi.size() == 0) {
    throw std::invalid_argument("frobenius_chain: empty squeezing vector");
  }
  double sum4 = 0.0, sum2 = 0.0, xi_max = 0.0;
  for (Eigen::Index k = 0; k < xi.size(); k++) {
    if (xi(k) < 0.0) {
      throw std::invalid_argument("frobenius_chain: squeezing magnitudes must be >= 0");
    }
    sum4 += std::cosh(4.0 * xi(k));
    sum2 += std::cosh(2.0 * xi(k));
    xi_max = std::max(xi_max, xi(k));
  }
  const double m = static_cast<double>(xi.size());
  const double s = std::exp(xi_max);
  FrobeniusChain chain;
  chain.exact = 32.0 * sum4;
  chain.cauchy_schwarz = (8.0 * sum2) * (8.0 * sum2);
  chain.final_bound = 64.0 * m * m * s * s * s * s;
  return chain;
}

double bound_frobenius(const Vec& xi) { return frobenius_chain(xi).final_bound; }

ComplexityBudget plan_state(double epsilon, double delta, int m, double s_t,
                            double e_max_prep, double gamma_max,
                            double x_t_norm_sq) {
  check_accuracy(epsilon, delta, "plan_state");
  if (m < 1) throw std::invalid_argument("plan_state: m must be >= 1");
  check_positive(s_t, "plan_state", "s_t");
  check_positive(e_max_prep, "plan_state", "E_max");
  check_positive(gamma_max, "plan_state", "Gamma_max");
  if (!(x_t_norm_sq >= 0.0)) {
    throw std::invalid_argument("plan_state: ||x_t||^2 must be >= 0");
  }

  ComplexityBudget b;
  b.epsilon = epsilon;
  b.delta = delta;
  b.m = m;
  b.s = s_t;
  b.e_max_prep = e_max_prep;
  b.gamma_max = gamma_max;

  const double md = static_cast<double>(m);
  const double s4 = s_t * s_t * s_t * s_t;
  b.chi_second_moment_bound = 64.0 * md * md * md * s4 * e_max_prep * x_t_norm_sq;
  b.x_second_moment_bound = 256.0 * md * md * md * md * s4 * gamma_max;

  // Witness error <= (err_X + 2 err_chi)/4; split so both estimators
  // together meet (epsilon, delta) by union bound.
  const double eps_chi = epsilon, eps_x = 2.0 * epsilon;
  b.batches = mom_batch_count(delta / 2.0);
  b.per_batch_chi = mom_batch_size(eps_chi, b.chi_second_moment_bound);
  b.per_batch_x = mom_batch_size(eps_x, b.x_second_moment_bound);
  b.n_chi = static_cast<long long>(b.batches) * b.per_batch_chi;
  b.n_x = static_cast<long long>(b.batches) * b.per_batch_x;
  b.n_total = b.n_chi + b.n_x;
  return b;
}

ComplexityBudget plan_channel(double epsilon, double delta, int m, double s_u,
                              double e_max_target, double e_max_device,
                              double gamma_max) {
  check_accuracy(epsilon, delta, "plan_channel");
  if (m < 1) throw std::invalid_argument("plan_channel: m must be >= 1");
  check_positive(s_u, "plan_channel", "s_u");
  check_positive(e_max_target, "plan_channel", "E_max_target");
  check_positive(e_max_device, "plan_channel", "E_max_device");
  check_positive(gamma_max, "plan_channel", "Gamma_max");

  ComplexityBudget b;
  b.epsilon = epsilon;
  b.delta = delta;
  b.m = m;
  b.s = s_u;
  b.e_max_target = e_max_target;
  b.e_max_prep = e_max_device;
  b.gamma_max = gamma_max;

  const double md = static_cast<double>(m);
  const double m4 = md * md * md * md;
  const double s4 = s_u * s_u * s_u * s_u;
  b.chi_second_moment_bound = 64.0 * m4 * s4 * e_max_target * e_max_device;
  b.x_second_moment_bound = 256.0 * m4 * s4 * gamma_max;

  const double eps_chi = epsilon, eps_x = 2.0 * epsilon;
  b.batches = mom_batch_count(delta / 2.0);
  b.per_batch_chi = mom_batch_size(eps_chi, b.chi_second_moment_bound);
  b.per_batch_x = mom_batch_size(eps_x, b.x_second_moment_bound);
  b.n_chi = static_cast<long long>(b.batches) * b.per_batch_chi;
  b.n_x = static_cast<long long>(b.batches) * b.per_batch_x;
  b.n_total = b.n_chi + b.n_x;
  return b;
}

ComplexityBudget plan_amplifier(double epsilon, double delta, double s_max,
                                double r_max) {
  check_accuracy(epsilon, delta, "plan_amplifier");
  check_positive(s_max, "plan_amplifier", "S_max");
  check_positive(r_max, "plan_amplifier", "r_max");

  ComplexityBudget b;
  b.epsilon = epsilon;
  b.delta = delta;
  b.m = 1;
  b.s_max = s_max;
  b.r_max = r_max;
  b.single_second_moment_bound = s_max * s_max * r_max;
  b.batches = mom_batch_count(delta);
  b.per_batch_single = mom_batch_size(epsilon, b.single_second_moment_bound);
  b.n_total = static_cast<long long>(b.batches) * b.per_batch_single;
  return b;
}

ComplexityBudget plan_cubic(double epsilon, double delta, double gamma,
                            const ProbeEnsemble& ensemble, double q_max) {
  check_accuracy(epsilon, delta, "plan_cubic");
  check_positive(q_max, "plan_cubic", "q_max");

  ComplexityBudget b;
  b.epsilon = epsilon;
  b.delta = delta;
  b.m = 1;
  b.q_max = q_max;
  b.s_prime_max = cubic_coefficient_sum_bound(gamma, ensemble);
  b.single_second_moment_bound = b.s_prime_max * b.s_prime_max * q_max;
  b.batches = mom_batch_count(delta);
  b.per_batch_single = mom_batch_size(epsilon, b.single_second_moment_bound);
  b.n_total = static_cast<long long>(b.batches) * b.per_batch_single;
  return b;
}

double amplifier_set_bound(const ProbeEnsemble& ensemble) {
  return 2.0 * (1.0 + max_abs_re(ensemble) + max_abs_im(ensemble));
}

double amplifier_coefficient_sum_bound(const ProbeEnsemble& ensemble,
                                       double g) {
  return 2.0 * (1.0 + g * max_abs_re(ensemble) + g * max_abs_im(ensemble));
}

double cubic_coefficient_sum_bound(double gamma,
                                   const ProbeEnsemble& ensemble) {
  if (ensemble.modes != 1) {
    throw std::invalid_argument(
        "cubic_coefficient_sum_bound: single-mode ensembles only");
  }
  double max_q2_coeff = 0.0;
  for (const auto& a : ensemble.amplitudes) {
    max_q2_coeff =
        std::max(max_q2_coeff, std::abs(1.0 + 3.0 * gamma * a[0].imag()));
  }
  const double ag = std::abs(gamma);
  return 1.0 + 2.25 * gamma * gamma + (1.0 + 2.0 * std::sqrt(2.0)) * ag +
         max_q2_coeff + 2.0 * max_abs_re(ensemble) + 2.0 * max_abs_im(ensemble);
}

}  // namespace cvwit
