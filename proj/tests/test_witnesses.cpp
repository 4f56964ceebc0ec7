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

#include <gtest/gtest.h>

#include "cvwit/channels.hpp"
#include "cvwit/gaussian.hpp"
#include "cvwit/symplectic.hpp"
#include "cvwit/wavefn.hpp"

namespace cvwit {
namespace {

constexpr double kPi = 3.14159265358979323846;

GaussianUnitary identity_target(int modes) {
  return make_unitary(Mat::Identity(2 * modes, 2 * modes), Vec::Zero(2 * modes));
}

TEST(ScenarioNames, RoundTrip) {
  EXPECT_EQ(scenario_name(Scenario::kGaussianState), "gaussian_state");
  EXPECT_EQ(scenario_name(Scenario::kGaussianChannel), "gaussian_channel");
  EXPECT_EQ(scenario_name(Scenario::kAmplifier), "amplifier");
  EXPECT_EQ(scenario_name(Scenario::kCubic), "cubic");
}

TEST(StateWitness, ClosedFormAnchors) {
  GaussianState vac = vacuum_state(1);
  // Perfect preparation: t = (2, 0, 0) -> W = 1.
  EXPECT_NEAR(witness_gaussian_state(vac, 2.0, 0.0, 0.0).value, 1.0, 1e-12);
  // Coherent offset beta = 0.5: t = (3, 0, 0) -> W = 0.75 = 1 - |beta|^2.
  EXPECT_NEAR(witness_gaussian_state(vac, 3.0, 0.0, 0.0).value, 0.75, 1e-12);
  // Thermal nbar = 0.3: t1 = 3.2 -> W = 0.7 = 1 - nbar.
  EXPECT_NEAR(witness_gaussian_state(vac, 3.2, 0.0, 0.0).value, 0.7, 1e-12);
}

TEST(StateWitness, MatchesCoherentOffsetFormulaEndToEnd) {
  for (double beta : {0.2, 0.5, 1.0}) {
    GaussianState vac = vacuum_state(1);
    GaussianState prep = coherent_state({{beta, 0.0}});
    OverlapTraces t = exact_overlap_traces(vac, prep);
    double w = witness_gaussian_state(vac, t.t1, t.t2, t.t3).value;
    EXPECT_NEAR(w, 1.0 - beta * beta, 1e-12);
    EXPECT_LE(w, overlap_pure(vac, prep) + 1e-12);
  }
}

TEST(StateWitness, ComponentsArePopulated) {
  WitnessValue w = witness_gaussian_state(vacuum_state(2), 4.0, 0.0, 0.0);
  EXPECT_EQ(w.scenario, Scenario::kGaussianState);
  EXPECT_FALSE(w.components.empty());
}

TEST(ChannelWitness, LossOnSingleCoherentProbe) {
  GaussianUnitary u = identity_target(1);
  ProbeEnsemble ens = make_uniform_ensemble({{{1.0, 0.0}}});
  // eta = 0.64: E(X) = 2 + 4 eta |a|^2 = 4.56, E(chi) = 4 sqrt(eta) = 3.2.
  WitnessValue w = witness_gaussian_channel(u, ens, 4.56, 3.2);
  EXPECT_NEAR(w.value, 0.96, 1e-12);
}

TEST(ChannelWitness, LossOnVacuumPlusCoherent) {
  GaussianUnitary u = identity_target(1);
  ProbeEnsemble ens = make_uniform_ensemble({{{0.0, 0.0}}, {{1.0, 0.0}}});
  // Averages over {0, 1}: E(X) = 2 + 4*0.64/2 = 3.28, E(chi) = 1.6, middle 2.
  WitnessValue w = witness_gaussian_channel(u, ens, 3.28, 1.6);
  EXPECT_NEAR(w.value, 0.98, 1e-12);
}

TEST(ChannelWitness, ExactPipelineSaturatesOnIdealDevice) {
  Philox4x32 rng(12, 0);
  Mat S = random_symplectic(2, 0.7, rng);
  GaussianUnitary u = make_unitary(S, (Vec(4) << 0.2, -0.1, 0.0, 0.3).finished());
  ProbeEnsemble ens =
      make_uniform_ensemble({{{0.5, 0.0}, {0.0, 0.0}}, {{0.0, 0.3}, {1.0, 0.0}}});
  Mat v_u = 0.25 * S * S.transpose();
  double e_x = 0.0, e_chi = 0.0;
  for (int i = 0; i < ens.size(); i++) {
    GaussianState out = apply_unitary(u, coherent_state(ens.amplitudes[i]));
    GaussianState target{out.x, v_u, 2};
    OverlapTraces t = exact_overlap_traces(target, out);
    e_x += ens.priors[i] * t.t1;
    e_chi += ens.priors[i] * t.t2;
  }
  EXPECT_NEAR(witness_gaussian_channel(u, ens, e_x, e_chi).value, 1.0, 1e-10);
}

TEST(AmplifierWitness, IdealGainSaturates) {
  ProbeEnsemble ens = make_uniform_ensemble({{{1.0, 1.0}}});
  // E(zeta) for the ideal g = 2 device on alpha = 1 + i is -7.5.
  WitnessValue w = witness_amplifier(2.0, ens, -7.5);
  EXPECT_NEAR(w.value, 1.0, 1e-12);
}

TEST(AmplifierWitness, RejectsNonAmplifyingTarget) {
  ProbeEnsemble ens = make_uniform_ensemble({{{1.0, 0.0}}});
  EXPECT_THROW(witness_amplifier(1.0, ens, 0.0), std::domain_error);
  EXPECT_THROW(witness_amplifier(0.5, ens, 0.0), std::domain_error);
}

TEST(AmplifierDictionary, CoefficientsAndAbsSum) {
  ObservableDictionary dict = build_dictionary_amplifier({1.0, 1.0}, 2.0);
  ASSERT_EQ(dict.size(), 4);
  EXPECT_NEAR(dict.abs_sum(), 10.0, 1e-12);
  // q^2 + p^2 - 2g Re q - 2g Im p.
  EXPECT_DOUBLE_EQ(dict.entries[0].coeff, 1.0);
  EXPECT_EQ(dict.entries[0].power, 2);
  EXPECT_DOUBLE_EQ(dict.entries[2].coeff, -4.0);
  EXPECT_EQ(dict.entries[2].power, 1);
}

TEST(AmplifierWitness, ExactExpectationsSaturateAndPenalize) {
  ProbeEnsemble ens = make_uniform_ensemble({{{1.0, 1.0}}});
  double g = 2.0;
  // Ideal device.
  DeviceModel ideal = make_amplifier_device(g, 0.0);
  GaussianState out = probe_gaussian(ideal, ens.amplitudes[0]);
  ObservableDictionary dict = build_dictionary_amplifier({1.0, 1.0}, g);
  double ez = dictionary_expectation_gaussian(dict, out);
  EXPECT_NEAR(ez, -7.5, 1e-12);
  EXPECT_NEAR(witness_amplifier(g, ens, ez).value, 1.0, 1e-12);

  // Added noise subtracts n_add from the witness.
  DeviceModel noisy = make_amplifier_device(g, 0.4);
  GaussianState out_noisy = probe_gaussian(noisy, ens.amplitudes[0]);
  double ez_noisy = dictionary_expectation_gaussian(dict, out_noisy);
  EXPECT_NEAR(witness_amplifier(g, ens, ez_noisy).value, 1.0 - 0.4, 1e-12);

  // A unit-gain masquerader scores 1 - |alpha|^2 (g - 1)^2 = -1.
  DeviceModel masquerade = make_amplifier_device(1.0, 0.0);
  GaussianState out_m = probe_gaussian(masquerade, ens.amplitudes[0]);
  double ez_m = dictionary_expectation_gaussian(dict, out_m);
  EXPECT_NEAR(witness_amplifier(g, ens, ez_m).value, -1.0, 1e-12);
}

TEST(CubicDictionary, CoefficientsAndAbsSum) {
  ObservableDictionary dict = build_dictionary_cubic({0.0, 0.0}, 0.1);
  ASSERT_EQ(dict.size(), 8);
  const double s2 = std::sqrt(2.0);
  EXPECT_NEAR(dict.entries[0].coeff, 0.0225, 1e-15);
  EXPECT_EQ(dict.entries[0].power, 4);
  EXPECT_NEAR(dict.entries[1].coeff, -s2 * 0.1, 1e-15);
  EXPECT_NEAR(dict.entries[1].angle, kPi / 4, 1e-15);
  EXPECT_NEAR(dict.entries[2].coeff, s2 * 0.1, 1e-15);
  EXPECT_NEAR(dict.entries[3].coeff, 0.1, 1e-15);
  EXPECT_NEAR(dict.entries[4].coeff, 1.0, 1e-15);
  EXPECT_NEAR(dict.entries[5].coeff, 1.0, 1e-15);
  EXPECT_NEAR(dict.entries[6].coeff, 0.0, 1e-15);
  EXPECT_NEAR(dict.entries[7].coeff, 0.0, 1e-15);
  EXPECT_NEAR(dict.abs_sum(), 2.405342712474619, 1e-12);
}

TEST(CubicDictionary, AlphaDependence) {
  std::complex<double> alpha{0.3, -0.2};
  ObservableDictionary dict = build_dictionary_cubic(alpha, 0.1);
  EXPECT_NEAR(dict.entries[4].coeff, 1.0 + 3.0 * 0.1 * (-0.2), 1e-15);
  EXPECT_NEAR(dict.entries[6].coeff, -0.6, 1e-15);
  EXPECT_NEAR(dict.entries[7].coeff, 0.4, 1e-15);
}

TEST(CubicWitness, GridSaturationAndMismatch) {
  GridSpec spec;
  ProbeEnsemble ens = make_uniform_ensemble({{{0.0, 0.0}}});
  double gamma = 0.1;
  ObservableDictionary dict = build_dictionary_cubic({0.0, 0.0}, gamma);

  GridWavefunction ideal = apply_cubic_phase(
      make_coherent_wavefunction(spec, {0.0, 0.0}), gamma);
  double ez = dictionary_expectation_grid(dict, ideal);
  EXPECT_NEAR(ez, 0.5, 1e-9);
  EXPECT_NEAR(witness_cubic(gamma, ens, ez).value, 1.0, 1e-9);

  // gamma_actual = 0 scores 1 - 27 gamma^2 / 64.
  GridWavefunction flat = make_coherent_wavefunction(spec, {0.0, 0.0});
  double ez_flat = dictionary_expectation_grid(dict, flat);
  EXPECT_NEAR(witness_cubic(gamma, ens, ez_flat).value,
              1.0 - 27.0 * gamma * gamma / 64.0, 1e-9);
}

TEST(Dictionaries, GaussianAndGridExpectationsAgree) {
  // The amplifier dictionary has powers <= 2, so both evaluators apply.
  ObservableDictionary dict = build_dictionary_amplifier({0.6, -0.4}, 1.5);
  GaussianState rho = make_state(
      (Vec(2) << 0.9, -0.6).finished(),
      (Mat(2, 2) << 0.3, 0.05, 0.05, 0.28).finished());
  double via_gaussian = dictionary_expectation_gaussian(dict, rho);

  // Grid route needs a pure state: use a squeezed-rotated pure fixture.
  GridSpec spec;
  Eigen::Matrix2d V;
  double c = std::cos(0.5), s = std::sin(0.5);
  Eigen::Matrix2d R;
  R << c, s, -s, c;
  Eigen::Matrix2d D;
  D << 0.25 * std::exp(-0.6), 0.0, 0.0, 0.25 * std::exp(0.6);
  V = R * D * R.transpose();
  GridWavefunction psi = make_pure_gaussian_wavefunction(spec, 0.9, -0.6, V);
  GaussianState pure_rho = make_state((Vec(2) << 0.9, -0.6).finished(), V);
  EXPECT_NEAR(dictionary_expectation_grid(dict, psi),
              dictionary_expectation_gaussian(dict, pure_rho), 1e-7);
  // And the mixed-state evaluation is finite and sane.
  EXPECT_TRUE(std::isfinite(via_gaussian));
}

TEST(Dictionaries, DispatcherCoversBenchmarkScenarios) {
  EXPECT_NO_THROW(build_dictionary(Scenario::kAmplifier, {1.0, 0.0}, 2.0));
  EXPECT_NO_THROW(build_dictionary(Scenario::kCubic, {0.0, 0.0}, 0.1));
  EXPECT_THROW(build_dictionary(Scenario::kGaussianState, {0.0, 0.0}, 0.0),
               std::invalid_argument);
}

}  // namespace
}  // namespace cvwit
