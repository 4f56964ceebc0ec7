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

#ifndef CVWIT_WAVEFN_HPP
#define CVWIT_WAVEFN_HPP

#include <complex>
#include <vector>

#include "cvwit/conventions.hpp"
#include "cvwit/rng.hpp"

namespace cvwit {

/// Uniform position grid q_j = q_min + j*dq, j = 0..n-1, n a power of two.
struct GridSpec {
  int n = 4096;
  double q_min = -12.0;
  double q_max = 12.0;

  double dq() const { return (q_max - q_min) / n; }
};

/// Single-mode pure state sampled on a position grid, unit-normalized
/// (sum |psi_j|^2 dq = 1).
class GridWavefunction {
 public:
  GridWavefunction() = default;
  GridWavefunction(const GridSpec& spec, CVec samples);

  const GridSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(samples_.size()); }
  double dq() const { return spec_.dq(); }
  double q_at(int j) const { return spec_.q_min + j * spec_.dq(); }
  const CVec& samples() const { return samples_; }
  CVec& samples() { return samples_; }

  double norm_sq() const;
  void renormalize();

  /// Position-density moment: sum |psi_j|^2 q_j^power dq.
  double moment(int power) const;

  /// Probability mass in the outer 1/32 of cells on each side; an aliasing
  /// canary for transforms and a support check for construction.
  double boundary_mass() const;

 private:
  GridSpec spec_;
  CVec samples_;
};

/// Pure single-mode Gaussian with means (mean_q, mean_p) and 2x2 pure
/// covariance V (det V = 1/16). Throws GridError when the tail mass outside
/// the grid would exceed 1e-8.
GridWavefunction make_pure_gaussian_wavefunction(const GridSpec& spec,
                                                 double mean_q, double mean_p,
                                                 const Eigen::Matrix2d& V);

/// Coherent state |alpha>: Gaussian with x = (Re alpha, Im alpha), V = I/4.
GridWavefunction make_coherent_wavefunction(const GridSpec& spec,
                                            std::complex<double> alpha);

/// Quadrature rotation: returns e^{-i theta (q^2+p^2)} psi (global phase
/// fixed so the vacuum is invariant). |output(u)|^2 is the pdf of measuring
/// q cos(theta) + p sin(theta). Fractional Fourier transform via
/// chirp-convolve-chirp on the same grid; angles outside [pi/4, 3pi/4] in
/// magnitude are composed with a +-pi/2 transform.
GridWavefunction rotate_quadrature(const GridWavefunction& psi, double theta);

/// Pointwise multiply by e^{i gamma q^3}; exactly norm-preserving.
GridWavefunction apply_cubic_phase(const GridWavefunction& psi, double gamma);

/// Inverse-CDF sampler over a (rotated) wavefunction's position density,
/// with linear interpolation inside grid cells. Immutable after
/// construction; safe to share across threads with caller-owned RNGs.
class QuadratureSampler {
 public:
  explicit QuadratureSampler(const GridWavefunction& rotated_psi);

  double sample(Philox4x32& rng) const;

  /// Moment of the discrete cell-mass distribution (matches the grid
  /// moment of the rotated wavefunction).
  double moment(int power) const;

 private:
  double q_min_ = 0.0;
  double dq_ = 0.0;
  std::vector<double> pmass_;
  std::vector<double> cdf_;
};

/// Rotate, then draw `count` samples of the rotated quadrature.
std::vector<double> quadrature_pdf_and_sample(const GridWavefunction& psi,
                                              double theta, int count,
                                              Philox4x32& rng);

}  // namespace cvwit

#endif
