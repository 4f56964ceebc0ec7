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

#ifndef CVWIT_GAUSSIAN_HPP
#define CVWIT_GAUSSIAN_HPP

#include <complex>
#include <vector>

#include "cvwit/conventions.hpp"

namespace cvwit {

/// Gaussian state in moment form: first moments x (length 2m, interleaved
/// q/p) and covariance V. The second-moment matrix Gamma = V + x x^T is
/// always derived, never stored.
struct GaussianState {
  Vec x;
  Mat V;
  int modes = 0;

  Mat second_moments() const { return V + x * x.transpose(); }
};

/// Gaussian unitary in phase-space form: r -> S r + d.
struct GaussianUnitary {
  Mat S;
  Vec d;
  int modes = 0;
};

/// Gaussian CPTP map: x -> X x + d, V -> X V X^T + Y.
struct GaussianChannelMap {
  Mat X;
  Mat Y;
  Vec d;
  int modes = 0;
};

/// Validating constructors. Throw std::invalid_argument on dimension or
/// symmetry violations; make_channel throws ConfigError when the complete
/// positivity test Y + (i/4)(J - X J X^T) >= 0 fails (tolerance 1e-9).
GaussianState make_state(const Vec& x, const Mat& V);
GaussianUnitary make_unitary(const Mat& S, const Vec& d);
GaussianChannelMap make_channel(const Mat& X, const Mat& Y, const Vec& d);

GaussianState vacuum_state(int modes);
GaussianState coherent_state(const std::vector<std::complex<double>>& alpha);

/// Per-mode coherent amplitudes as a first-moment vector.
Vec coherent_means(const std::vector<std::complex<double>>& alpha);

GaussianState apply_unitary(const GaussianUnitary& U, const GaussianState& rho);
GaussianState apply_channel(const GaussianChannelMap& C, const GaussianState& rho);

/// C2 after C1 as a single map.
GaussianChannelMap compose_channels(const GaussianChannelMap& c2,
                                    const GaussianChannelMap& c1);

GaussianChannelMap identity_channel(int modes);
GaussianChannelMap loss_channel(int modes, double eta);
GaussianChannelMap thermal_noise_channel(int modes, double nbar);

/// Symplectic eigenvalues of a covariance matrix (each >= 1/4 - tol for a
/// physical state; all equal to 1/4 iff pure), ascending.
Vec symplectic_spectrum(const Mat& V);

/// True when every symplectic eigenvalue is within tol of 1/4.
bool is_pure(const GaussianState& rho, double tol = 1e-6);

/// tr(rho_t rho_p) for a pure target:
/// 2^-m det(V_t + V_p)^{-1/2} exp(-1/2 delta^T (V_t+V_p)^-1 delta).
double overlap_pure(const GaussianState& target, const GaussianState& prep);

struct OverlapTraces {
  double t1;  // Tr(V_t^-1 Gamma_p)
  double t2;  // Tr(V_t^-1 x_p x_t^T)
  double t3;  // Tr(V_t^-1 x_t x_t^T)
};

/// The three exact traces the estimation pipeline targets.
OverlapTraces exact_overlap_traces(const GaussianState& target,
                                   const GaussianState& prep);

/// Energy bookkeeping used by the sample-size planner.
double trace_second_moments(const GaussianState& rho);  // Tr(Gamma)
double max_mode_energy(const GaussianState& rho);       // max_j <q_j^2 + p_j^2>

}  // namespace cvwit

#endif
