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

#include "cvwit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvwit {

std::pair<int, int> IndexDistribution::sample(Philox4x32& rng) const {
  double u = rng.uniform01();
  auto it = std::lower_bound(cum.begin(), cum.end(), u);
  size_t idx = (it == cum.end()) ? cum.size() - 1
                                 : static_cast<size_t>(it - cum.begin());
  return support[idx];
}

double IndexDistribution::prob(int k, int l) const { return weights(k, l); }

IndexDistribution index_distribution(const Mat& Vt_inv) {
  if (Vt_inv.rows() != Vt_inv.cols() || Vt_inv.rows() == 0) {
    throw std::invalid_argument("index_distribution: square matrix required");
  }
  IndexDistribution dist;
  dist.Vt_inv = Vt_inv;
  dist.frobenius_sq = Vt_inv.squaredNorm();
  if (dist.frobenius_sq == 0.0) {
    throw std::domain_error("index_distribution: zero matrix has no index distribution");
  }
  dist.weights = Vt_inv.cwiseProduct(Vt_inv) / dist.frobenius_sq;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < Vt_inv.rows(); k++) {
    for (Eigen::Index l = 0; l < Vt_inv.cols(); l++) {
      double w = dist.weights(k, l);
      if (w == 0.0) continue;
      acc += w;
      dist.support.emplace_back(static_cast<int>(k), static_cast<int>(l));
      dist.cum.push_back(acc);
    }
  }
  dist.cum.back() = 1.0;  // close rounding
  return dist;
}

double chi_kernel(int k, int l, double r_prime, const Vec& x_target,
                  const IndexDistribution& dist) {
  double denom = dist.Vt_inv(k, l);
  if (denom == 0.0) {
    throw std::logic_error("chi_kernel: index pair has zero probability");
  }
  return r_prime * x_target(l) * dist.frobenius_sq / denom;
}

double x_kernel(int k, int l, double gamma_prime,
                const IndexDistribution& dist) {
  double denom = dist.Vt_inv(k, l);
  if (denom == 0.0) {
    throw std::logic_error("x_kernel: index pair has zero probability");
  }
  return gamma_prime * dist.frobenius_sq / denom;
}

int sample_coefficient_index(const ObservableDictionary& dict,
                             Philox4x32& rng) {
  double total = dict.abs_sum();
  if (total == 0.0) {
    throw std::domain_error(
        "sample_coefficient_index: all dictionary coefficients vanish");
  }
  double u = rng.uniform01() * total;
  double acc = 0.0;
  int last_nonzero = -1;
  for (int k = 0; k < dict.size(); k++) {
    double w = std::abs(dict.entries[k].coeff);
    if (w == 0.0) continue;
    acc += w;
    last_nonzero = k;
    if (u <= acc) return k;
  }
  return last_nonzero;
}

double dictionary_kernel(const ObservableDictionary& dict, int k,
                         double outcome) {
  const DictionaryEntry& e = dict.entries.at(k);
  if (e.coeff == 0.0) {
    throw std::logic_error("dictionary_kernel: zero-coefficient index");
  }
  double powered = std::pow(outcome, e.power);
  return (e.coeff > 0.0 ? 1.0 : -1.0) * powered * dict.abs_sum();
}

int mom_batch_count(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("mom_batch_count: delta must lie in (0, 1)");
  }
  return static_cast<int>(std::ceil(2.0 * std::log(2.0 / delta)));
}

long long mom_batch_size(double epsilon, double variance_proxy) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("mom_batch_size: epsilon must be positive");
  }
  if (!(variance_proxy >= 0.0)) {
    throw std::invalid_argument("mom_batch_size: negative variance proxy");
  }
  double n = std::ceil(34.0 * variance_proxy / (epsilon * epsilon));
  return std::max(1LL, static_cast<long long>(n));
}

double lower_median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("lower_median: empty input");
  }
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

MoMResult assemble_mom(std::vector<double> batch_means, long long per_batch,
                       double epsilon, double delta) {
  MoMResult r;
  r.estimate = lower_median(batch_means);
  r.batches = static_cast<int>(batch_means.size());
  r.batch_means = std::move(batch_means);
  r.per_batch_size = per_batch;
  r.total_n = static_cast<long long>(r.batches) * per_batch;
  r.epsilon = epsilon;
  r.delta = delta;
  return r;
}

}  // namespace cvwit
