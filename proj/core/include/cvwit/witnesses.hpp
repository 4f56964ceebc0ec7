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

#ifndef CVWIT_WITNESSES_HPP
#define CVWIT_WITNESSES_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "cvwit/channels.hpp"
#include "cvwit/gaussian.hpp"
#include "cvwit/wavefn.hpp"

namespace cvwit {

enum class Scenario {
  kGaussianState,
  kGaussianChannel,
  kAmplifier,
  kCubic,
};

std::string scenario_name(Scenario sc);

/// A fidelity lower bound assembled from moment terms. Values at or below 1
/// for physical inputs; negative values are meaningful (bad device) and are
/// reported as-is.
struct WitnessValue {
  double value = 0.0;
  Scenario scenario = Scenario::kGaussianState;
  std::vector<std::pair<std::string, double>> components;
};

/// State witness 1 + m/2 - (t1 - 2 t2 + t3)/4 from the three trace terms
/// (exact values or estimates):
///   t1 = Tr(V_t^-1 Gamma_p), t2 = x_t^T V_t^-1 x_p, t3 = x_t^T V_t^-1 x_t.
WitnessValue witness_gaussian_state(const GaussianState& target, double t1,
                                    double t2, double t3);

/// Average-fidelity witness for a Gaussian unitary target probed with a
/// coherent ensemble:
///   1 + m/2 - E(X)/4 - sum_a P(a) x_U(a)^T V_U^-1 x_U(a)/4 + E(chi)/2,
/// where x_U(a) = S x_a + d and V_U = S S^T / 4 (alpha-independent). The
/// middle term is a known quantity and is always computed exactly here.
WitnessValue witness_gaussian_channel(const GaussianUnitary& target,
                                      const ProbeEnsemble& ensemble,
                                      double e_x, double e_chi);

/// Amplifier witness 3/2 - g^2 sum P(a)|a|^2 - E(zeta). The bound is
/// derived for gain targets g > 1; g <= 1 throws std::domain_error.
WitnessValue witness_amplifier(double g, const ProbeEnsemble& ensemble,
                               double e_zeta);

/// Cubic-phase witness 3/2 - sum P(a)|a|^2 - E(Z).
WitnessValue witness_cubic(double gamma, const ProbeEnsemble& ensemble,
                           double e_z);

/// One homodyne observable (cos(theta) q + sin(theta) p)^power with its
/// witness-expansion coefficient.
struct DictionaryEntry {
  double angle = 0.0;
  int power = 1;
  double coeff = 0.0;
};

struct ObservableDictionary {
  std::vector<DictionaryEntry> entries;

  int size() const { return static_cast<int>(entries.size()); }
  double abs_sum() const;
};

/// Amplifier expansion: observables {q^2, p^2, q, p} with coefficients
/// tau = {1, 1, -2 g Re(a), -2 g Im(a)}, so that
/// E(zeta) = <q^2> + <p^2> - 2 g Re(a) <q> - 2 g Im(a) <p>.
ObservableDictionary build_dictionary_amplifier(std::complex<double> alpha,
                                                double g);

/// Cubic-phase expansion of 1 - W: with U p U^dag = p - (3 gamma / 2) q^2
/// and q^2 p + p q^2 = [(q+p)^3 - (q-p)^3 - 2 p^3] / 3, the observables are
/// {q^4, r_{pi/4}^3, r_{-pi/4}^3, p^3, q^2, p^2, q, p} with coefficients
/// kappa = {9 g^2/4, -sqrt(2) g, sqrt(2) g, g, 1 + 3 g Im(a), 1,
///          -2 Re(a), -2 Im(a)} (g = gamma).
ObservableDictionary build_dictionary_cubic(std::complex<double> alpha,
                                            double gamma);

/// Dispatch on scenario; only the amplifier and cubic scenarios carry
/// observable dictionaries.
ObservableDictionary build_dictionary(Scenario sc, std::complex<double> alpha,
                                      double g_or_gamma);

/// Exact sum_k coeff_k <obs_k> for a Gaussian state (single mode, powers
/// <= 2 only; higher powers have no Gaussian-closed form here).
double dictionary_expectation_gaussian(const ObservableDictionary& dict,
                                       const GaussianState& rho);

/// Exact sum_k coeff_k <obs_k> for a grid wavefunction, via quadrature
/// rotation and grid moments. Handles any power.
double dictionary_expectation_grid(const ObservableDictionary& dict,
                                   const GridWavefunction& psi);

}  // namespace cvwit

#endif
