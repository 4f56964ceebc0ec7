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

#include "cvwit/planner.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "cvwit/channels.hpp"
#include "cvwit/rng.hpp"
#include "cvwit/witnesses.hpp"

namespace cvwit {
namespace {

TEST(FrobeniusChain, UnsqueezedAnchors) {
  Vec xi = Vec::Zero(1);
  FrobeniusChain chain = frobenius_chain(xi);
  EXPECT_NEAR(chain.exact, 32.0, 1e-12);
  EXPECT_NEAR(chain.cauchy_schwarz, 64.0, 1e-12);
  EXPECT_NEAR(chain.final_bound, 64.0, 1e-12);

  Vec xi2 = Vec::Zero(2);
  FrobeniusChain chain2 = frobenius_chain(xi2);
  EXPECT_NEAR(chain2.exact, 64.0, 1e-12);
  EXPECT_NEAR(chain2.final_bound, 256.0, 1e-12);
}

TEST(FrobeniusChain, SqueezedAnchors) {
  Vec xi(1);
  xi << 0.5;
  FrobeniusChain chain = frobenius_chain(xi);
  EXPECT_NEAR(chain.exact, 32.0 * std::cosh(2.0), 1e-9);
  EXPECT_NEAR(chain.cauchy_schwarz, 64.0 * std::cosh(1.0) * std::cosh(1.0),
              1e-9);
  double s = std::exp(0.5);
  EXPECT_NEAR(chain.final_bound, 64.0 * std::pow(s, 4), 1e-9);
  EXPECT_NEAR(bound_frobenius(xi), chain.final_bound, 1e-12);
}

TEST(FrobeniusChain, OrderedForRandomSqueezing) {
  Philox4x32 rng(77, 0);
  for (int trial = 0; trial < 50; trial++) {
    int m = 1 + static_cast<int>(rng.below(4));
    Vec xi(m);
    for (int i = 0; i < m; i++) xi(i) = rng.uniform(0.0, 1.2);
    FrobeniusChain chain = frobenius_chain(xi);
    ASSERT_LE(chain.exact, chain.cauchy_schwarz + 1e-9);
    ASSERT_LE(chain.cauchy_schwarz, chain.final_bound + 1e-9);
  }
  EXPECT_THROW(frobenius_chain((Vec(1) << -0.1).finished()),
               std::invalid_argument);
}

TEST(PlanState, WorkedExample) {
  // m = 1, s = 1, E_max = 0.5, |x_t|^2 = 1: chi bound 64 * 0.5 = 32.
  ComplexityBudget b = plan_state(0.1, 0.05, 1, 1.0, 0.5, 1.0, 1.0);
  EXPECT_NEAR(b.chi_second_moment_bound, 32.0, 1e-12);
  EXPECT_NEAR(b.x_second_moment_bound, 256.0, 1e-12);
  EXPECT_EQ(b.batches, 9);  // ceil(2 ln(4/delta)), split across two estimators
  EXPECT_EQ(b.per_batch_chi, 108800);
  // x estimator runs at 2 epsilon.
  EXPECT_EQ(b.per_batch_x, static_cast<long long>(
                               std::ceil(34.0 * 256.0 / (0.2 * 0.2))));
  EXPECT_EQ(b.n_chi, 9ll * 108800);
  EXPECT_EQ(b.n_total, b.n_chi + b.n_x);
}

TEST(PlanState, ValidatesInputs) {
  EXPECT_THROW(plan_state(0.0, 0.05, 1, 1.0, 0.5, 1.0, 1.0),
               std::invalid_argument);
  EXPECT_THROW(plan_state(0.1, 1.5, 1, 1.0, 0.5, 1.0, 1.0),
               std::invalid_argument);
  EXPECT_THROW(plan_state(0.1, 0.05, 0, 1.0, 0.5, 1.0, 1.0),
               std::invalid_argument);
  EXPECT_THROW(plan_state(0.1, 0.05, 1, 0.0, 0.5, 1.0, 1.0),
               std::invalid_argument);  // squeezing proxy must be positive
}

TEST(PlanChannel, FourthPowerModeScaling) {
  // Clean inputs make ceil() exact, so doubling m scales both per-batch
  // sizes by exactly 16.
  ComplexityBudget b1 = plan_channel(0.1, 0.05, 1, 1.0, 1.0, 1.0, 1.0);
  ComplexityBudget b2 = plan_channel(0.1, 0.05, 2, 1.0, 1.0, 1.0, 1.0);
  EXPECT_EQ(b2.per_batch_chi, 16 * b1.per_batch_chi);
  EXPECT_EQ(b2.per_batch_x, 16 * b1.per_batch_x);
  EXPECT_EQ(b2.n_total, 16 * b1.n_total);
}

TEST(PlanChannel, BatchCountTracksLogOfDelta) {
  for (double delta : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    ComplexityBudget b = plan_channel(0.1, delta, 1, 1.0, 1.0, 1.0, 1.0);
    EXPECT_EQ(b.batches,
              static_cast<int>(std::ceil(2.0 * std::log(4.0 / delta))));
  }
}

TEST(PlanAmplifier, BudgetFromCoefficientBound) {
  ProbeEnsemble ens = make_uniform_ensemble({{{1.0, 1.0}}});
  EXPECT_NEAR(amplifier_set_bound(ens), 6.0, 1e-12);
  double s_max = amplifier_coefficient_sum_bound(ens, 2.0);
  EXPECT_NEAR(s_max, 10.0, 1e-12);
  // It matches the actual dictionary weight on a single-element ensemble.
  EXPECT_NEAR(s_max, build_dictionary_amplifier({1.0, 1.0}, 2.0).abs_sum(),
              1e-12);

  ComplexityBudget b = plan_amplifier(0.1, 0.05, s_max, 2.0);
  EXPECT_EQ(b.batches, 8);  // single estimator: ceil(2 ln(2/delta))
  EXPECT_NEAR(b.single_second_moment_bound, 100.0 * 2.0, 1e-12);
  EXPECT_EQ(b.per_batch_single,
            static_cast<long long>(std::ceil(34.0 * 200.0 / 0.01)));
  EXPECT_EQ(b.n_total, 8 * b.per_batch_single);
}

TEST(PlanAmplifier, VacuumOnlyEnsembleBound) {
  ProbeEnsemble ens = make_uniform_ensemble({{{0.0, 0.0}}});
  EXPECT_NEAR(amplifier_set_bound(ens), 2.0, 1e-12);
  EXPECT_NEAR(amplifier_coefficient_sum_bound(ens, 3.0), 2.0, 1e-12);
}

TEST(PlanCubic, CoefficientBoundMatchesDictionary) {
  ProbeEnsemble ens = make_uniform_ensemble({{{0.0, 0.0}}});
  double s_prime = cubic_coefficient_sum_bound(0.1, ens);
  EXPECT_NEAR(s_prime, 2.405342712474619, 1e-12);
  EXPECT_NEAR(s_prime, build_dictionary_cubic({0.0, 0.0}, 0.1).abs_sum(),
              1e-12);

  // The bound dominates the dictionary weight across a mixed ensemble.
  ProbeEnsemble mixed =
      make_uniform_ensemble({{{0.3, -0.2}}, {{-0.1, 0.4}}, {{0.0, 0.0}}});
  double bound = cubic_coefficient_sum_bound(0.1, mixed);
  for (const auto& amp : mixed.amplitudes) {
    EXPECT_GE(bound + 1e-12,
              build_dictionary_cubic(amp[0], 0.1).abs_sum());
  }
}

TEST(PlanCubic, BudgetUsesVacuumEighthMoment) {
  ProbeEnsemble ens = make_uniform_ensemble({{{0.0, 0.0}}});
  double q_max = 105.0 / 256.0;
  ComplexityBudget b = plan_cubic(0.1, 0.05, 0.1, ens, q_max);
  double s_prime = cubic_coefficient_sum_bound(0.1, ens);
  EXPECT_NEAR(b.single_second_moment_bound, s_prime * s_prime * q_max, 1e-12);
  EXPECT_EQ(b.batches, 8);
  EXPECT_EQ(b.per_batch_single,
            static_cast<long long>(
                std::ceil(34.0 * b.single_second_moment_bound / 0.01)));
}

TEST(Planner, ChannelChiBoundCarriesAnExtraModeFactor) {
  // chi bounds: state 64 m^3 s^4 E |x|^2 vs channel 64 m^4 s^4 E_t E_d.
  ComplexityBudget st = plan_state(0.1, 0.05, 3, 1.2, 2.0, 1.5, 1.0);
  ComplexityBudget ch = plan_channel(0.1, 0.05, 3, 1.2, 1.0, 2.0, 1.5);
  EXPECT_NEAR(st.chi_second_moment_bound,
              64.0 * 27.0 * std::pow(1.2, 4) * 2.0 * 1.0, 1e-9);
  EXPECT_NEAR(ch.chi_second_moment_bound,
              64.0 * 81.0 * std::pow(1.2, 4) * 1.0 * 2.0, 1e-9);
  EXPECT_NEAR(ch.chi_second_moment_bound / st.chi_second_moment_bound, 3.0,
              1e-9);
}

}  // namespace
}  // namespace cvwit
