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

#ifndef CVWIT_CONVENTIONS_HPP
#define CVWIT_CONVENTIONS_HPP

#include <Eigen/Dense>

namespace cvwit {

// Phase-space conventions used throughout:
//   [q, p] = i/2, quadrature vector r = (q_1, p_1, ..., q_m, p_m),
//   coherent state |alpha> has means x = (Re a_1, Im a_1, ...) and the
//   vacuum covariance is kVacuumVariance * identity.
inline constexpr double kVacuumVariance = 0.25;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Symplectic form J for `modes` modes in the interleaved (q_1, p_1, ...)
/// ordering: block diagonal with [[0, 1], [-1, 0]] per mode.
Mat symplectic_form(int modes);

/// True when index k (0-based) addresses a position quadrature q.
inline bool is_position_index(int k) { return k % 2 == 0; }

/// Mode number (0-based) that quadrature index k belongs to.
inline int mode_of_index(int k) { return k / 2; }

/// True when k and l address the conjugate pair (q_j, p_j) of one mode.
inline bool is_conjugate_pair(int k, int l) {
  return k != l && mode_of_index(k) == mode_of_index(l);
}

}  // namespace cvwit

#endif
