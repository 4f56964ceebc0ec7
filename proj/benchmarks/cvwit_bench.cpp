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

// Microbenchmarks for the hot paths: raw RNG throughput, the per-shot
// sampling pipelines, the FrFT rotation, and the decompositions that run
// once per fixture. Shot kernels dominate wall time in practice, so their
// items/sec figures are the ones to watch.

#include <benchmark/benchmark.h>

#include <cmath>
#include <optional>

#include "cvwit/estimators.hpp"
#include "cvwit/gaussian.hpp"
#include "cvwit/channels.hpp"
#include "cvwit/measurement.hpp"
#include "cvwit/rng.hpp"
#include "cvwit/symplectic.hpp"
#include "cvwit/wavefn.hpp"
#include "cvwit/witnesses.hpp"

namespace {

using namespace cvwit;

void BM_PhiloxUniform(benchmark::State& state) {
  Philox4x32 rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.uniform01());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxUniform);

void BM_PhiloxNormal(benchmark::State& state) {
  Philox4x32 rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.normal());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxNormal);

void BM_WilliamsonEuler(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Philox4x32 rng(7, 0);
  Mat s = random_symplectic(m, 0.8, rng);
  Mat v = 0.25 * s * s.transpose();
  for (auto _ : state) {
    benchmark::DoNotOptimize(williamson_euler(v));
  }
}
BENCHMARK(BM_WilliamsonEuler)->Arg(1)->Arg(2)->Arg(4);

void BM_OverlapPure(benchmark::State& state) {
  Philox4x32 rng(9, 0);
  Mat s = random_symplectic(2, 0.5, rng);
  GaussianUnitary target = make_unitary(s, Vec::Zero(4));
  GaussianState t = apply_unitary(target, coherent_state({{0.4, 0.1}, {0.0, 0.2}}));
  GaussianState p = probe_gaussian(make_lossy_device(target, 0.9),
                                   {{0.4, 0.1}, {0.0, 0.2}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(overlap_pure(t, p));
  }
}
BENCHMARK(BM_OverlapPure);

// Full chi shot: index draw, homodyne, kernel weight.
void BM_ChiShot(benchmark::State& state) {
  Mat s = rotation(1, 0, 0.4) * squeezer(1, 0, 0.3);
  Vec d(2);
  d << 1.0, 0.5;
  GaussianUnitary target = make_unitary(s, d);
  GaussianState target_state = apply_unitary(target, coherent_state({{0.0, 0.0}}));
  GaussianState prep = probe_gaussian(make_lossy_device(target, 0.9), {{0.0, 0.0}});
  IndexDistribution dist = index_distribution(target_state.V.inverse());
  Philox4x32 rng(11, 0);
  for (auto _ : state) {
    auto [k, l] = dist.sample(rng);
    double r = homodyne_single(prep, k, rng);
    benchmark::DoNotOptimize(chi_kernel(k, l, r, target_state.x, dist));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChiShot);

// Full second-moment shot: index draw, pair/rotated homodyne, kernel weight.
void BM_GammaShot(benchmark::State& state) {
  Mat s = rotation(1, 0, 0.4) * squeezer(1, 0, 0.3);
  Vec d(2);
  d << 1.0, 0.5;
  GaussianUnitary target = make_unitary(s, d);
  GaussianState target_state = apply_unitary(target, coherent_state({{0.0, 0.0}}));
  GaussianState prep = probe_gaussian(make_lossy_device(target, 0.9), {{0.0, 0.0}});
  IndexDistribution dist = index_distribution(target_state.V.inverse());
  Philox4x32 rng(13, 0);
  for (auto _ : state) {
    auto [k, l] = dist.sample(rng);
    SecondMomentOutcome o = sample_gamma_entry(prep, k, l, rng);
    benchmark::DoNotOptimize(x_kernel(k, l, o.value, dist));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GammaShot);

void BM_RotateQuadrature(benchmark::State& state) {
  GridSpec spec;
  GridWavefunction psi = make_coherent_wavefunction(spec, {0.5, 0.3});
  psi = apply_cubic_phase(psi, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rotate_quadrature(psi, 0.7853981633974483));
  }
}
BENCHMARK(BM_RotateQuadrature);

void BM_QuadratureSample(benchmark::State& state) {
  GridSpec spec;
  GridWavefunction psi = make_coherent_wavefunction(spec, {0.0, 0.0});
  psi = apply_cubic_phase(psi, 0.1);
  QuadratureSampler sampler(rotate_quadrature(psi, 0.25));
  Philox4x32 rng(17, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_QuadratureSample);

// A complete small median-of-means estimate of a chi trace term.
void BM_MedianOfMeans(benchmark::State& state) {
  Mat s = rotation(1, 0, 0.3) * squeezer(1, 0, 0.2);
  Vec d(2);
  d << 0.2, 0.1;
  GaussianUnitary target = make_unitary(s, d);
  GaussianState target_state = apply_unitary(target, coherent_state({{0.0, 0.0}}));
  GaussianState prep = probe_gaussian(make_lossy_device(target, 0.95), {{0.0, 0.0}});
  IndexDistribution dist = index_distribution(target_state.V.inverse());
  uint32_t rep = 0;
  for (auto _ : state) {
    Philox4x32 rng(19, make_stream(StreamRole::kGeneric, rep++));
    auto shot = [&]() -> std::optional<double> {
      auto [k, l] = dist.sample(rng);
      double r = homodyne_single(prep, k, rng);
      return chi_kernel(k, l, r, target_state.x, dist);
    };
    benchmark::DoNotOptimize(median_of_means(shot, 0.5, 0.05, 1.0));
  }
}
BENCHMARK(BM_MedianOfMeans);

}  // namespace

BENCHMARK_MAIN();
