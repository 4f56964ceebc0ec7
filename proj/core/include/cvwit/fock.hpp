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

#ifndef CVWIT_FOCK_HPP
#define CVWIT_FOCK_HPP

#include <complex>

#include "cvwit/conventions.hpp"
#include "cvwit/wavefn.hpp"

namespace cvwit {

/// Truncated-basis ladder and quadrature operators: a|n> = sqrt(n)|n-1>,
/// q = (a + a^dag)/2, p = (a - a^dag)/(2i), so [q, p] = i/2 away from the
/// truncation edge.
struct FockOperatorSet {
  int cutoff = 0;
  CMat a;
  CMat adag;
  CMat n;
  CMat q;
  CMat p;
};

FockOperatorSet make_fock_operators(int cutoff);

/// Coherent-state coefficient vector e^{-|a|^2/2} a^n / sqrt(n!).
/// Throws NumericError when the cutoff truncates more than 1e-10 of norm.
CVec coherent_fock(std::complex<double> alpha, int cutoff);

/// exp(i gamma q^3) via spectral decomposition of the Hermitian generator.
CMat cubic_phase_unitary(double gamma, int cutoff);

/// exp(alpha a^dag - conj(alpha) a) via spectral decomposition.
CMat displacement_unitary(std::complex<double> alpha, int cutoff);

/// U(gamma) D(alpha) |0>, with a cutoff-doubling convergence check
/// (overlap of the cutoff and 2x-cutoff states must exceed 1 - 1e-8).
CVec fock_cubic_state(std::complex<double> alpha, double gamma, int cutoff,
                      bool check_convergence = true);

/// <state| obs |state>; requires unit norm (1e-9) and a Hermitian-consistent
/// real expectation (imaginary part below 1e-8 of scale).
double fock_expectation(const CVec& state, const CMat& obs);

/// (cos(theta) q + sin(theta) p)^power in the truncated basis.
CMat rotated_quadrature_power(const FockOperatorSet& ops, double theta,
                              int power);

/// Witness operator for a cubic-phase target on input alpha:
/// 1 - U(gamma) D(alpha) n D(alpha)^dag U(gamma)^dag.
CMat cubic_witness_operator(double gamma, std::complex<double> alpha,
                            int cutoff);

/// Project a grid wavefunction onto the truncated number basis using
/// harmonic-oscillator eigenfunctions in the V_vac = 1/4 convention.
CVec project_to_fock(const GridWavefunction& psi, int cutoff);

}  // namespace cvwit

#endif
