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

#include "cvwit/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "cvwit/errors.hpp"

namespace cvwit {

namespace {

void check_index(const GaussianState& rho, int k, const char* who) {
  if (k < 0 || k >= 2 * rho.modes) {
    throw std::invalid_argument(std::string(who) + ": quadrature index out of range");
  }
}

// Fourth moment of a scalar Gaussian: E[eta^4] = 3 s^2 + 6 mu^2 s + mu^4
// with s the variance.
double gaussian_fourth_moment(double mean, double var) {
  return 3.0 * var * var + 6.0 * mean * mean * var +
         mean * mean * mean * mean;
}

struct RotatedMarginal {
  double mean;
  double var;
};

// Marginal of (q_j + p_j)/sqrt(2) for the mode holding quadratures (k, l).
RotatedMarginal conjugate_rotated_marginal(const GaussianState& rho, int k, int l) {
  RotatedMarginal m;
  m.mean = (rho.x(k) + rho.x(l)) / std::sqrt(2.0);
  m.var = 0.5 * (rho.V(k, k) + rho.V(l, l) + 2.0 * rho.V(k, l));
  return m;
}

}  // namespace

double homodyne_single(const GaussianState& rho, int k, Philox4x32& rng) {
  check_index(rho, k, "homodyne_single");
  return rng.normal(rho.x(k), std::sqrt(rho.V(k, k)));
}

double homodyne_rotated(const GaussianState& rho, int mode, double theta,
                        Philox4x32& rng) {
  if (mode < 0 || mode >= rho.modes) {
    throw std::invalid_argument("homodyne_rotated: mode out of range");
  }
  const int kq = 2 * mode, kp = 2 * mode + 1;
  const double c = std::cos(theta), s = std::sin(theta);
  double mean = c * rho.x(kq) + s * rho.x(kp);
  double var = c * c * rho.V(kq, kq) + 2.0 * c * s * rho.V(kq, kp) +
               s * s * rho.V(kp, kp);
  return rng.normal(mean, std::sqrt(var));
}

std::pair<double, double> homodyne_pair(const GaussianState& rho, int k, int l,
                                        Philox4x32& rng) {
  check_index(rho, k, "homodyne_pair");
  check_index(rho, l, "homodyne_pair");
  if (k == l) {
    double r = homodyne_single(rho, k, rng);
    return {r, r};
  }
  if (is_conjugate_pair(k, l)) {
    throw std::logic_error(
        "homodyne_pair: conjugate quadratures of one mode cannot be "
        "homodyned jointly");
  }
  // Commuting pair: classical bivariate normal via its Cholesky factor.
  const double vkk = rho.V(k, k), vll = rho.V(l, l), vkl = rho.V(k, l);
  const double l11 = std::sqrt(vkk);
  const double l21 = vkl / l11;
  const double rest = vll - l21 * l21;
  const double l22 = std::sqrt(std::max(rest, 0.0));
  const double z1 = rng.normal(), z2 = rng.normal();
  return {rho.x(k) + l11 * z1, rho.x(l) + l21 * z1 + l22 * z2};
}

SecondMomentOutcome sample_gamma_entry(const GaussianState& rho, int k, int l,
                                       Philox4x32& rng) {
  check_index(rho, k, "sample_gamma_entry");
  check_index(rho, l, "sample_gamma_entry");
  SecondMomentOutcome out;
  out.k = k;
  out.l = l;
  if (!is_conjugate_pair(k, l)) {
    auto [rk, rl] = homodyne_pair(rho, k, l, rng);
    out.value = rk * rl;
    out.sub = SubObservable::kNone;
    return out;
  }
  switch (rng.below(3)) {
    case 0: {
      RotatedMarginal m = conjugate_rotated_marginal(rho, k, l);
      double eta = rng.normal(m.mean, std::sqrt(m.var));
      out.sub = SubObservable::kRotated;
      out.value = 3.0 * eta * eta;
      break;
    }
    case 1: {
      int kq = 2 * mode_of_index(k);
      double eta = homodyne_single(rho, kq, rng);
      out.sub = SubObservable::kQSquared;
      out.value = 3.0 * (-0.5) * eta * eta;
      break;
    }
    default: {
      int kp = 2 * mode_of_index(k) + 1;
      double eta = homodyne_single(rho, kp, rng);
      out.sub = SubObservable::kPSquared;
      out.value = 3.0 * (-0.5) * eta * eta;
      break;
    }
  }
  return out;
}

double exact_gamma_entry_second_moment(const GaussianState& rho, int k, int l) {
  check_index(rho, k, "exact_gamma_entry_second_moment");
  check_index(rho, l, "exact_gamma_entry_second_moment");
  const double xk = rho.x(k), xl = rho.x(l);
  const double vkk = rho.V(k, k), vll = rho.V(l, l), vkl = rho.V(k, l);
  if (k == l) {
    return gaussian_fourth_moment(xk, vkk);
  }
  if (!is_conjugate_pair(k, l)) {
    // Isserlis with means: E[(r_k r_l)^2].
    const double gkk = vkk + xk * xk, gll = vll + xl * xl;
    return gkk * gll + 2.0 * vkl * vkl + 4.0 * xk * xl * vkl;
  }
  RotatedMarginal m = conjugate_rotated_marginal(rho, k, l);
  const int kq = 2 * mode_of_index(k), kp = kq + 1;
  double m4_rot = gaussian_fourth_moment(m.mean, m.var);
  double m4_q = gaussian_fourth_moment(rho.x(kq), rho.V(kq, kq));
  double m4_p = gaussian_fourth_moment(rho.x(kp), rho.V(kp, kp));
  // E[(3 c_y eta^2)^2] averaged over the uniform choice of y.
  return 3.0 * (m4_rot + 0.25 * m4_q + 0.25 * m4_p);
}

double gamma_max_sampled(const GaussianState& rho) {
  double best = 0.0;
  for (int k = 0; k < 2 * rho.modes; k++) {
    for (int l = k; l < 2 * rho.modes; l++) {
      best = std::max(best, exact_gamma_entry_second_moment(rho, k, l));
    }
  }
  return best;
}

}  // namespace cvwit
