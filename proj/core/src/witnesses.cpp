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

#include "cvwit/witnesses.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "cvwit/errors.hpp"

namespace cvwit {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace

std::string scenario_name(Scenario sc) {
  switch (sc) {
    case Scenario::kGaussianState:
      return "gaussian_state";
    case Scenario::kGaussianChannel:
      return "gaussian_channel";
    case Scenario::kAmplifier:
      return "amplifier";
    case Scenario::kCubic:
      return "cubic";
  }
  return "unknown";
}

WitnessValue witness_gaussian_state(const GaussianState& target, double t1,
                                    double t2, double t3) {
  WitnessValue w;
  w.scenario = Scenario::kGaussianState;
  w.value = 1.0 + 0.5 * target.modes - 0.25 * (t1 - 2.0 * t2 + t3);
  w.components = {{"t1", t1}, {"t2", t2}, {"t3", t3}};
  return w;
}

WitnessValue witness_gaussian_channel(const GaussianUnitary& target,
                                      const ProbeEnsemble& ensemble,
                                      double e_x, double e_chi) {
  if (ensemble.modes != target.modes) {
    throw std::invalid_argument(
        "witness_gaussian_channel: ensemble/target mode mismatch");
  }
  Mat V_U = 0.25 * target.S * target.S.transpose();
  Eigen::LLT<Mat> llt(V_U);
  if (llt.info() != Eigen::Success) {
    throw NumericError("witness_gaussian_channel: target covariance not SPD");
  }
  double middle = 0.0;
  for (int i = 0; i < ensemble.size(); i++) {
    Vec x_U = target.S * coherent_means(ensemble.amplitudes[i]) + target.d;
    middle += ensemble.priors[i] * x_U.dot(llt.solve(x_U));
  }
  WitnessValue w;
  w.scenario = Scenario::kGaussianChannel;
  w.value = 1.0 + 0.5 * target.modes - 0.25 * e_x - 0.25 * middle + 0.5 * e_chi;
  w.components = {{"e_x", e_x}, {"mean_target_quad", middle}, {"e_chi", e_chi}};
  return w;
}

WitnessValue witness_amplifier(double g, const ProbeEnsemble& ensemble,
                               double e_zeta) {
  if (!(g > 1.0)) {
    throw std::domain_error("witness_amplifier: bound requires gain g > 1");
  }
  double energy = mean_abs_sq(ensemble);
  WitnessValue w;
  w.scenario = Scenario::kAmplifier;
  w.value = 1.5 - g * g * energy - e_zeta;
  w.components = {{"mean_abs_sq", energy}, {"e_zeta", e_zeta}};
  return w;
}

WitnessValue witness_cubic(double gamma, const ProbeEnsemble& ensemble,
                           double e_z) {
  (void)gamma;
  double energy = mean_abs_sq(ensemble);
  WitnessValue w;
  w.scenario = Scenario::kCubic;
  w.value = 1.5 - energy - e_z;
  w.components = {{"mean_abs_sq", energy}, {"e_z", e_z}};
  return w;
}

double ObservableDictionary::abs_sum() const {
  double total = 0.0;
  for (const auto& e : entries) total += std::abs(e.coeff);
  return total;
}

ObservableDictionary build_dictionary_amplifier(std::complex<double> alpha,
                                                double g) {
  ObservableDictionary dict;
  dict.entries = {
      {0.0, 2, 1.0},
      {kPi / 2.0, 2, 1.0},
      {0.0, 1, -2.0 * g * alpha.real()},
      {kPi / 2.0, 1, -2.0 * g * alpha.imag()},
  };
  return dict;
}

ObservableDictionary build_dictionary_cubic(std::complex<double> alpha,
                                            double gamma) {
  const double s2 = std::sqrt(2.0);
  ObservableDictionary dict;
  dict.entries = {
      {0.0, 4, 2.25 * gamma * gamma},
      {kPi / 4.0, 3, -s2 * gamma},
      {-kPi / 4.0, 3, s2 * gamma},
      {kPi / 2.0, 3, gamma},
      {0.0, 2, 1.0 + 3.0 * gamma * alpha.imag()},
      {kPi / 2.0, 2, 1.0},
      {0.0, 1, -2.0 * alpha.real()},
      {kPi / 2.0, 1, -2.0 * alpha.imag()},
  };
  return dict;
}

ObservableDictionary build_dictionary(Scenario sc, std::complex<double> alpha,
                                      double g_or_gamma) {
  switch (sc) {
    case Scenario::kAmplifier:
      return build_dictionary_amplifier(alpha, g_or_gamma);
    case Scenario::kCubic:
      return build_dictionary_cubic(alpha, g_or_gamma);
    default:
      throw std::invalid_argument(
          "build_dictionary: only the amplifier and cubic scenarios use "
          "observable dictionaries");
  }
}

double dictionary_expectation_gaussian(const ObservableDictionary& dict,
                                       const GaussianState& rho) {
  if (rho.modes != 1) {
    throw std::invalid_argument(
        "dictionary_expectation_gaussian: single-mode states only");
  }
  double total = 0.0;
  for (const auto& e : dict.entries) {
    const double c = std::cos(e.angle), s = std::sin(e.angle);
    double mean = c * rho.x(0) + s * rho.x(1);
    double var = c * c * rho.V(0, 0) + 2.0 * c * s * rho.V(0, 1) +
                 s * s * rho.V(1, 1);
    double moment;
    switch (e.power) {
      case 0:
        moment = 1.0;
        break;
      case 1:
        moment = mean;
        break;
      case 2:
        moment = var + mean * mean;
        break;
      default:
        throw std::invalid_argument(
            "dictionary_expectation_gaussian: powers above 2 need the grid "
            "or Fock route");
    }
    total += e.coeff * moment;
  }
  return total;
}

double dictionary_expectation_grid(const ObservableDictionary& dict,
                                   const GridWavefunction& psi) {
  double total = 0.0;
  for (const auto& e : dict.entries) {
    if (e.coeff == 0.0) continue;
    GridWavefunction rotated = rotate_quadrature(psi, e.angle);
    total += e.coeff * rotated.moment(e.power);
  }
  return total;
}

}  // namespace cvwit
