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

#include "cvwit/conventions.hpp"

#include <stdexcept>

namespace cvwit {

Mat symplectic_form(int modes) {
  if (modes <= 0) throw std::invalid_argument("mode count must be positive");
  Mat J = Mat::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; j++) {
    J(2 * j, 2 * j + 1) = 1.0;
    J(2 * j + 1, 2 * j) = -1.0;
  }
  return J;
}

}  // namespace cvwit
