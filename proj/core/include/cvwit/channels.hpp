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

#ifndef CVWIT_CHANNELS_HPP
#define CVWIT_CHANNELS_HPP

#include <complex>
#include <vector>

#include "cvwit/gaussian.hpp"
#include "cvwit/rng.hpp"
#include "cvwit/wavefn.hpp"

namespace cvwit {

/// The simulated device under test.
enum class DeviceKind {
  kIdealGaussian,
  kLossyGaussian,
  kThermalGaussian,
  kMiscalibratedGaussian,
  kAmplifier,
  kCubicPhase,
};

/// Parameterized device model. Gaussian kinds carry the target unitary they
/// imperfectly implement; the amplifier and cubic kinds carry their own
/// parameters. Build through the factories below, which validate ranges.
struct DeviceModel {
  DeviceKind kind = DeviceKind::kIdealGaussian;
  int modes = 0;

  // Gaussian kinds: the unitary the device is supposed to apply.
  GaussianUnitary target;

  double eta = 1.0;   // lossy_gaussian transmissivity
  double nbar = 0.0;  // thermal_gaussian added occupation

  // miscalibrated_gaussian: what the device actually applies.
  GaussianUnitary actual;

  // amplifier: x -> gain * x, V = I/4 + (n_add/2) I on coherent inputs.
  double gain = 1.0;
  double n_add = 0.0;

  // cubic_phase: e^{i gamma_actual q^3} after optional pre-gate input
  // imperfections (loss on alpha, displacement offset, squeezing).
  double gamma_actual = 0.0;
  double pre_loss_eta = 1.0;
  std::complex<double> pre_displacement{0.0, 0.0};
  double pre_squeeze_xi = 0.0;
};

DeviceModel make_ideal_device(const GaussianUnitary& target);
DeviceModel make_lossy_device(const GaussianUnitary& target, double eta);
DeviceModel make_thermal_device(const GaussianUnitary& target, double nbar);
DeviceModel make_miscalibrated_device(const GaussianUnitary& target,
                                      const GaussianUnitary& actual);
/// gain >= 1 (a unit-gain "amplifier" is the identity channel and is a legal
/// test fixture); n_add >= 0.
DeviceModel make_amplifier_device(double gain, double n_add);
DeviceModel make_cubic_device(double gamma_actual, double pre_loss_eta = 1.0,
                              std::complex<double> pre_displacement = {0.0,
                                                                       0.0},
                              double pre_squeeze_xi = 0.0);

/// Finite coherent-probe ensemble {P(alpha), |alpha>}. Amplitudes are
/// per-mode coherent vectors; priors are a probability vector.
struct ProbeEnsemble {
  std::vector<std::vector<std::complex<double>>> amplitudes;
  std::vector<double> priors;
  int modes = 0;

  int size() const { return static_cast<int>(amplitudes.size()); }
};

/// Validates: nonempty, consistent mode counts, priors nonnegative and
/// summing to 1 within 1e-12. Throws ConfigError otherwise.
ProbeEnsemble make_ensemble(
    const std::vector<std::vector<std::complex<double>>>& amplitudes,
    const std::vector<double>& priors);

/// Uniform-prior convenience constructor.
ProbeEnsemble make_uniform_ensemble(
    const std::vector<std::vector<std::complex<double>>>& amplitudes);

/// Draw an ensemble element index according to the prior.
int sample_ensemble_index(const ProbeEnsemble& ens, Philox4x32& rng);

/// Sum_alpha P(alpha) sum_j |alpha_j|^2.
double mean_abs_sq(const ProbeEnsemble& ens);

/// Largest |Re alpha_j| and |Im alpha_j| over the ensemble, the inputs to
/// the coefficient-sum bounds used by the planner.
double max_abs_re(const ProbeEnsemble& ens);
double max_abs_im(const ProbeEnsemble& ens);

/// Device output state for a coherent probe, in moment form. Valid for
/// Gaussian kinds and the amplifier; the cubic kind needs a wavefunction
/// representation and throws ConfigError here.
GaussianState probe_gaussian(const DeviceModel& dev,
                             const std::vector<std::complex<double>>& alpha);

/// Device output wavefunction for a single-mode coherent probe through a
/// cubic-phase device: pre-gate imperfections on the input Gaussian, then
/// e^{i gamma_actual q^3}. Throws ConfigError for non-cubic kinds and
/// GridError when the state does not fit the grid.
GridWavefunction probe_cubic(const DeviceModel& dev,
                             std::complex<double> alpha,
                             const GridSpec& spec);

}  // namespace cvwit

#endif
