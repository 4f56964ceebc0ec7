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

#ifndef CVWIT_ESTIMATORS_HPP
#define CVWIT_ESTIMATORS_HPP

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "cvwit/errors.hpp"
#include "cvwit/rng.hpp"
#include "cvwit/witnesses.hpp"

namespace cvwit {

/// Importance distribution over quadrature index pairs,
/// p(k,l) = [V_t^-1]_{kl}^2 / ||V_t^-1||_F^2. Entries where V_t^-1 vanishes
/// are excluded from the sampling table and are never drawn.
struct IndexDistribution {
  Mat Vt_inv;
  Mat weights;
  double frobenius_sq = 0.0;
  std::vector<std::pair<int, int>> support;
  std::vector<double> cum;  // cumulative probability over `support`

  std::pair<int, int> sample(Philox4x32& rng) const;
  double prob(int k, int l) const;
};

/// Build the distribution from an already-inverted target covariance.
/// Throws std::domain_error when the matrix is identically zero.
IndexDistribution index_distribution(const Mat& Vt_inv);

/// First-moment kernel: r'_k [x_t]_l ||V_t^-1||_F^2 / [V_t^-1]_{kl}.
/// Its expectation over p(k,l) and the homodyne outcome is
/// Tr(V_t^-1 x_p x_t^T). For the channel protocol, pass the per-probe
/// target means x_U(alpha) = S x_alpha + d as `x_target`; the kernel form
/// is unchanged.
double chi_kernel(int k, int l, double r_prime, const Vec& x_target,
                  const IndexDistribution& dist);

/// Second-moment kernel: Gamma'_{kl} ||V_t^-1||_F^2 / [V_t^-1]_{kl} with
/// Gamma'_{kl} a sample_gamma_entry outcome. Expectation Tr(V_t^-1 Gamma_p);
/// identical form in the state and channel protocols.
double x_kernel(int k, int l, double gamma_prime,
                const IndexDistribution& dist);

/// Draw a dictionary index with probability |coeff_k| / sum_l |coeff_l|.
/// Zero-coefficient entries are never drawn; an all-zero dictionary throws
/// std::domain_error.
int sample_coefficient_index(const ObservableDictionary& dict,
                             Philox4x32& rng);

/// Importance-weighted single-shot value for a dictionary observable:
/// sign(coeff_k) * outcome^power_k * sum_l |coeff_l|. This is the shot
/// value for both the amplifier and the cubic-phase protocols.
double dictionary_kernel(const ObservableDictionary& dict, int k,
                         double outcome);

/// Median-of-means batch count ceil(2 ln(2/delta)).
int mom_batch_count(double delta);

/// Per-batch size ceil(34 * variance_proxy / epsilon^2), at least 1.
long long mom_batch_size(double epsilon, double variance_proxy);

/// Lower median: element floor((n-1)/2) of the sorted values.
double lower_median(std::vector<double> values);

struct MoMResult {
  double estimate = 0.0;
  int batches = 0;
  std::vector<double> batch_means;
  long long per_batch_size = 0;
  long long total_n = 0;
  double epsilon = 0.0;
  double delta = 0.0;
};

/// Assemble a MoMResult from externally computed batch means (the parallel
/// runner path). The estimate is recomputed as the lower median.
MoMResult assemble_mom(std::vector<double> batch_means, long long per_batch,
                       double epsilon, double delta);

/// Median-of-means over a serial sample stream. `next` returns the next
/// estimator value or nullopt when exhausted; exhaustion before
/// B * per_batch values throws InsufficientSamplesError. Consumes exactly
/// B * per_batch values on success.
template <typename Stream>
MoMResult median_of_means(Stream&& next, double epsilon, double delta,
                          double variance_proxy) {
  const int b = mom_batch_count(delta);
  const long long per = mom_batch_size(epsilon, variance_proxy);
  std::vector<double> means;
  means.reserve(b);
  for (int i = 0; i < b; i++) {
    double sum = 0.0;
    for (long long j = 0; j < per; j++) {
      std::optional<double> v = next();
      if (!v.has_value()) {
        throw InsufficientSamplesError(
            "median_of_means: sample stream exhausted before the planned "
            "batch count");
      }
      sum += *v;
    }
    means.push_back(sum / static_cast<double>(per));
  }
  return assemble_mom(std::move(means), per, epsilon, delta);
}

}  // namespace cvwit

#endif
