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

#include "cvwit/channels.hpp"

#include <cmath>
#include <numeric>

#include "cvwit/errors.hpp"

namespace cvwit {

namespace {

constexpr double kPriorSumTol = 1e-12;

void require_unitary_modes(const GaussianUnitary& U, const char* who) {
  if (U.modes <= 0 || U.S.rows() != 2 * U.modes || U.d.size() != 2 * U.modes) {
    throw ConfigError(std::string(who) + ": malformed target unitary");
  }
}

}  // namespace

DeviceModel make_ideal_device(const GaussianUnitary& target) {
  require_unitary_modes(target, "make_ideal_device");
  DeviceModel dev;
  dev.kind = DeviceKind::kIdealGaussian;
  dev.modes = target.modes;
  dev.target = target;
  return dev;
}

DeviceModel make_lossy_device(const GaussianUnitary& target, double eta) {
  require_unitary_modes(target, "make_lossy_device");
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw ConfigError("make_lossy_device: eta must lie in [0, 1]");
  }
  DeviceModel dev;
  dev.kind = DeviceKind::kLossyGaussian;
  dev.modes = target.modes;
  dev.target = target;
  dev.eta = eta;
  return dev;
}

DeviceModel make_thermal_device(const GaussianUnitary& target, double nbar) {
  require_unitary_modes(target, "make_thermal_device");
  if (!(nbar >= 0.0)) {
    throw ConfigError("make_thermal_device: nbar must be nonnegative");
  }
  DeviceModel dev;
  dev.kind = DeviceKind::kThermalGaussian;
  dev.modes = target.modes;
  dev.target = target;
  dev.nbar = nbar;
  return dev;
}

DeviceModel make_miscalibrated_device(const GaussianUnitary& target,
                                      const GaussianUnitary& actual) {
  require_unitary_modes(target, "make_miscalibrated_device");
  require_unitary_modes(actual, "make_miscalibrated_device");
  if (actual.modes != target.modes) {
    throw ConfigError("make_miscalibrated_device: mode count mismatch");
  }
  DeviceModel dev;
  dev.kind = DeviceKind::kMiscalibratedGaussian;
  dev.modes = target.modes;
  dev.target = target;
  dev.actual = actual;
  return dev;
}

DeviceModel make_amplifier_device(double gain, double n_add) {
  if (!(gain >= 1.0)) {
    throw ConfigError("make_amplifier_device: gain must be >= 1");
  }
  if (!(n_add >= 0.0)) {
    throw ConfigError("make_amplifier_device: n_add must be nonnegative");
  }
  DeviceModel dev;
  dev.kind = DeviceKind::kAmplifier;
  dev.modes = 1;
  dev.gain = gain;
  dev.n_add = n_add;
  return dev;
}

DeviceModel make_cubic_device(double gamma_actual, double pre_loss_eta,
                              std::complex<double> pre_displacement,
                              double pre_squeeze_xi) {
  if (!(pre_loss_eta > 0.0 && pre_loss_eta <= 1.0)) {
    throw ConfigError("make_cubic_device: pre_loss_eta must lie in (0, 1]");
  }
  if (!std::isfinite(gamma_actual) || !std::isfinite(pre_squeeze_xi)) {
    throw ConfigError("make_cubic_device: non-finite parameter");
  }
  DeviceModel dev;
  dev.kind = DeviceKind::kCubicPhase;
  dev.modes = 1;
  dev.gamma_actual = gamma_actual;
  dev.pre_loss_eta = pre_loss_eta;
  dev.pre_displacement = pre_displacement;
  dev.pre_squeeze_xi = pre_squeeze_xi;
  return dev;
}

ProbeEnsemble make_ensemble(
    const std::vector<std::vector<std::complex<double>>>& amplitudes,
    const std::vector<double>& priors) {
  if (amplitudes.empty()) throw ConfigError("make_ensemble: empty ensemble");
  if (amplitudes.size() != priors.size()) {
    throw ConfigError("make_ensemble: amplitudes/priors length mismatch");
  }
  const size_t modes = amplitudes.front().size();
  if (modes == 0) throw ConfigError("make_ensemble: zero-mode amplitude");
  for (const auto& a : amplitudes) {
    if (a.size() != modes) {
      throw ConfigError("make_ensemble: inconsistent mode counts");
    }
  }
  double total = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0)) throw ConfigError("make_ensemble: negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > kPriorSumTol) {
    throw ConfigError("make_ensemble: priors must sum to 1");
  }
  ProbeEnsemble ens;
  ens.amplitudes = amplitudes;
  ens.priors = priors;
  ens.modes = static_cast<int>(modes);
  return ens;
}

ProbeEnsemble make_uniform_ensemble(
    const std::vector<std::vector<std::complex<double>>>& amplitudes) {
  if (amplitudes.empty()) throw ConfigError("make_uniform_ensemble: empty");
  std::vector<double> priors(amplitudes.size(),
                             1.0 / static_cast<double>(amplitudes.size()));
  // Make the sum exactly 1 despite rounding.
  double partial = std::accumulate(priors.begin(), priors.end() - 1, 0.0);
  priors.back() = 1.0 - partial;
  return make_ensemble(amplitudes, priors);
}

int sample_ensemble_index(const ProbeEnsemble& ens, Philox4x32& rng) {
  double u = rng.uniform01();
  double acc = 0.0;
  for (int i = 0; i < ens.size(); i++) {
    acc += ens.priors[i];
    if (u <= acc) return i;
  }
  return ens.size() - 1;
}

double mean_abs_sq(const ProbeEnsemble& ens) {
  double total = 0.0;
  for (int i = 0; i < ens.size(); i++) {
    double e = 0.0;
    for (const auto& a : ens.amplitudes[i]) e += std::norm(a);
    total += ens.priors[i] * e;
  }
  return total;
}

double max_abs_re(const ProbeEnsemble& ens) {
  double best = 0.0;
  for (const auto& vec : ens.amplitudes) {
    for (const auto& a : vec) best = std::max(best, std::abs(a.real()));
  }
  return best;
}

double max_abs_im(const ProbeEnsemble& ens) {
  double best = 0.0;
  for (const auto& vec : ens.amplitudes) {
    for (const auto& a : vec) best = std::max(best, std::abs(a.imag()));
  }
  return best;
}

GaussianState probe_gaussian(const DeviceModel& dev,
                             const std::vector<std::complex<double>>& alpha) {
  if (static_cast<int>(alpha.size()) != dev.modes) {
    throw ConfigError("probe_gaussian: amplitude mode count mismatch");
  }
  GaussianState in = coherent_state(alpha);
  switch (dev.kind) {
    case DeviceKind::kIdealGaussian:
      return apply_unitary(dev.target, in);
    case DeviceKind::kLossyGaussian:
      return apply_channel(loss_channel(dev.modes, dev.eta),
                           apply_unitary(dev.target, in));
    case DeviceKind::kThermalGaussian:
      return apply_channel(thermal_noise_channel(dev.modes, dev.nbar),
                           apply_unitary(dev.target, in));
    case DeviceKind::kMiscalibratedGaussian:
      return apply_unitary(dev.actual, in);
    case DeviceKind::kAmplifier: {
      GaussianState out;
      out.modes = dev.modes;
      out.x = dev.gain * in.x;
      out.V = (kVacuumVariance + 0.5 * dev.n_add) *
              Mat::Identity(2 * dev.modes, 2 * dev.modes);
      return out;
    }
    case DeviceKind::kCubicPhase:
      throw ConfigError(
          "probe_gaussian: cubic-phase device output is not Gaussian; use "
          "probe_cubic");
  }
  throw ConfigError("probe_gaussian: unknown device kind");
}

GridWavefunction probe_cubic(const DeviceModel& dev,
                             std::complex<double> alpha,
                             const GridSpec& spec) {
  if (dev.kind != DeviceKind::kCubicPhase) {
    throw ConfigError("probe_cubic: device is not a cubic-phase model");
  }
  // Loss keeps a coherent input coherent: alpha -> sqrt(eta) alpha. The
  // displacement offset then shifts it, and the squeezing error maps the
  // result to a pure squeezed-coherent Gaussian.
  std::complex<double> a_eff =
      std::sqrt(dev.pre_loss_eta) * alpha + dev.pre_displacement;
  double xi = dev.pre_squeeze_xi;
  double mean_q = std::exp(-xi) * a_eff.real();
  double mean_p = std::exp(xi) * a_eff.imag();
  Eigen::Matrix2d V;
  V << kVacuumVariance * std::exp(-2.0 * xi), 0.0, 0.0,
      kVacuumVariance * std::exp(2.0 * xi);
  GridWavefunction psi = make_pure_gaussian_wavefunction(spec, mean_q, mean_p, V);
  return apply_cubic_phase(psi, dev.gamma_actual);
}

}  // namespace cvwit
