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

#include "cvwit/wavefn.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "cvwit/errors.hpp"

namespace cvwit {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kConstructionTailTol = 1e-8;
constexpr double kRotationLeakTol = 1e-6;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& fftw_mutex() {
  static std::mutex mu;
  return mu;
}

void fft_inplace(CVec& v, int direction) {
  auto* data = reinterpret_cast<fftw_complex*>(v.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(v.size()), data, data, direction,
                            FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericError("fftw plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
}

// Fractional Fourier transform restricted to |theta| in [pi/4, 3pi/4] where
// the chirp rates stay Nyquist-safe on the default grid. Uses the kernel
//   A(th) exp(i cot(th)(u^2+q^2) - 2 i u q csc(th)),
//   A(th) = e^{i th/2} / sqrt(pi i sin th),
// factored as chirp * linear-convolution * chirp:
//   cot(th) - csc(th) = -tan(th/2).
GridWavefunction frft_band(const GridWavefunction& psi, double theta) {
  const int n = psi.size();
  const int L = 2 * n;
  const double dq = psi.dq();
  const double t = std::tan(theta / 2.0);
  const double c = 1.0 / std::sin(theta);
  const std::complex<double> i_unit(0.0, 1.0);

  CVec g = CVec::Zero(L);
  for (int j = 0; j < n; j++) {
    double q = psi.q_at(j);
    g(j) = std::exp(-i_unit * t * q * q) * psi.samples()(j);
  }
  CVec w(L);
  for (int l = 0; l < L; l++) {
    double d = (l < n) ? l : l - L;  // offsets d in [-n, n-1]
    double x = d * dq;
    w(l) = std::exp(i_unit * c * x * x);
  }
  fft_inplace(g, FFTW_FORWARD);
  fft_inplace(w, FFTW_FORWARD);
  CVec conv = g.cwiseProduct(w);
  fft_inplace(conv, FFTW_BACKWARD);
  conv /= static_cast<double>(L);

  std::complex<double> A =
      std::exp(i_unit * theta / 2.0) /
      std::sqrt(std::complex<double>(0.0, kPi * std::sin(theta)));
  CVec out(n);
  for (int j = 0; j < n; j++) {
    double u = psi.q_at(j);
    out(j) = A * std::exp(-i_unit * t * u * u) * conv(j) * dq;
  }
  return GridWavefunction(psi.spec(), std::move(out));
}

}  // namespace

GridWavefunction::GridWavefunction(const GridSpec& spec, CVec samples)
    : spec_(spec), samples_(std::move(samples)) {
  if (!is_power_of_two(spec_.n)) {
    throw std::invalid_argument("GridWavefunction: grid size must be a power of two");
  }
  if (spec_.q_max <= spec_.q_min) {
    throw std::invalid_argument("GridWavefunction: empty grid range");
  }
  if (samples_.size() != spec_.n) {
    throw std::invalid_argument("GridWavefunction: sample count does not match grid");
  }
}

double GridWavefunction::norm_sq() const {
  return samples_.squaredNorm() * dq();
}

void GridWavefunction::renormalize() {
  double n2 = norm_sq();
  if (n2 <= 0.0 || !std::isfinite(n2)) {
    throw NumericError("GridWavefunction: cannot normalize zero/invalid state");
  }
  samples_ /= std::sqrt(n2);
}

double GridWavefunction::moment(int power) const {
  double acc = 0.0;
  for (int j = 0; j < size(); j++) {
    acc += std::norm(samples_(j)) * std::pow(q_at(j), power);
  }
  return acc * dq();
}

double GridWavefunction::boundary_mass() const {
  int margin = std::max(1, size() / 32);
  double acc = 0.0;
  for (int j = 0; j < margin; j++) acc += std::norm(samples_(j));
  for (int j = size() - margin; j < size(); j++) acc += std::norm(samples_(j));
  return acc * dq();
}

GridWavefunction make_pure_gaussian_wavefunction(const GridSpec& spec,
                                                 double mean_q, double mean_p,
                                                 const Eigen::Matrix2d& V) {
  double det = V(0, 0) * V(1, 1) - V(0, 1) * V(1, 0);
  if (V(0, 0) <= 0.0 || std::abs(det - 1.0 / 16.0) > 1e-9) {
    throw std::invalid_argument(
        "make_pure_gaussian_wavefunction: covariance is not a pure 2x2 Gaussian");
  }
  // psi(q) = N exp(-a (q-q0)^2 + 2 i p0 (q-q0)) with
  // Re a = 1/(4 V_qq), Im a = -V_qp / V_qq.
  std::complex<double> a(1.0 / (4.0 * V(0, 0)), -V(0, 1) / V(0, 0));
  CVec samples(spec.n);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < spec.n; j++) {
    double q = spec.q_min + j * spec.dq();
    double dqc = q - mean_q;
    samples(j) = std::exp(-a * dqc * dqc + 2.0 * i_unit * mean_p * dqc);
  }
  GridWavefunction psi(spec, std::move(samples));
  psi.renormalize();
  if (psi.boundary_mass() > kConstructionTailTol) {
    throw GridError(
        "make_pure_gaussian_wavefunction: state support exceeds the grid; "
        "widen q range or reduce displacement");
  }
  return psi;
}

GridWavefunction make_coherent_wavefunction(const GridSpec& spec,
                                            std::complex<double> alpha) {
  Eigen::Matrix2d V;
  V << kVacuumVariance, 0.0, 0.0, kVacuumVariance;
  return make_pure_gaussian_wavefunction(spec, alpha.real(), alpha.imag(), V);
}

GridWavefunction rotate_quadrature(const GridWavefunction& psi, double theta) {
  double th = std::remainder(theta, 2.0 * kPi);  // (-pi, pi]
  if (std::abs(th) < 1e-12) {
    return psi;
  }
  GridWavefunction out = psi;
  double mag = std::abs(th);
  if (mag >= kPi / 4.0 && mag <= 3.0 * kPi / 4.0) {
    out = frft_band(out, th);
  } else {
    // Compose with a quarter rotation to land in the well-conditioned band.
    double s = (th > 0) ? kPi / 2.0 : -kPi / 2.0;
    out = frft_band(out, s);
    out = frft_band(out, th - s);
  }
  out.renormalize();
  if (out.boundary_mass() > kRotationLeakTol) {
    throw GridError(
        "rotate_quadrature: rotated state leaks off the grid (aliasing); "
        "increase grid extent or resolution");
  }
  return out;
}

GridWavefunction apply_cubic_phase(const GridWavefunction& psi, double gamma) {
  GridWavefunction out = psi;
  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < out.size(); j++) {
    double q = out.q_at(j);
    out.samples()(j) *= std::exp(i_unit * gamma * q * q * q);
  }
  return out;
}

QuadratureSampler::QuadratureSampler(const GridWavefunction& rotated_psi)
    : q_min_(rotated_psi.spec().q_min), dq_(rotated_psi.dq()) {
  int n = rotated_psi.size();
  pmass_.resize(n);
  cdf_.resize(n);
  double total = 0.0;
  for (int j = 0; j < n; j++) {
    pmass_[j] = std::norm(rotated_psi.samples()(j)) * dq_;
    total += pmass_[j];
  }
  if (total <= 0.0 || !std::isfinite(total)) {
    throw NumericError("QuadratureSampler: degenerate probability mass");
  }
  double acc = 0.0;
  for (int j = 0; j < n; j++) {
    pmass_[j] /= total;
    acc += pmass_[j];
    cdf_[j] = acc;
  }
  cdf_[n - 1] = 1.0;  // guard against rounding at the top end
}

double QuadratureSampler::sample(Philox4x32& rng) const {
  double u = rng.uniform01();  // (0, 1]
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  int j = static_cast<int>(it - cdf_.begin());
  double below = (j == 0) ? 0.0 : cdf_[j - 1];
  double frac = (pmass_[j] > 0.0) ? (u - below) / pmass_[j] : 0.5;
  // Cell j is centered on q_j; interpolate linearly across it.
  return q_min_ + j * dq_ + (frac - 0.5) * dq_;
}

double QuadratureSampler::moment(int power) const {
  double acc = 0.0;
  for (size_t j = 0; j < pmass_.size(); j++) {
    acc += pmass_[j] * std::pow(q_min_ + j * dq_, power);
  }
  return acc;
}

std::vector<double> quadrature_pdf_and_sample(const GridWavefunction& psi,
                                              double theta, int count,
                                              Philox4x32& rng) {
  if (count < 1) throw std::invalid_argument("quadrature_pdf_and_sample: count >= 1");
  GridWavefunction rotated = rotate_quadrature(psi, theta);
  QuadratureSampler sampler(rotated);
  std::vector<double> out(count);
  for (int i = 0; i < count; i++) out[i] = sampler.sample(rng);
  return out;
}

}  // namespace cvwit
