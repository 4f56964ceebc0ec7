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

#ifndef CVWIT_ERRORS_HPP
#define CVWIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cvwit {

/// Malformed or out-of-range user input (configs, device parameters,
/// ensembles). Mapped to process exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (non-convergent cutoff, ill-conditioned matrix).
/// Mapped to process exit code 3 by the CLI.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Wavefunction support escaped the simulation grid (aliasing hazard).
/// Mapped to process exit code 3 by the CLI.
struct GridError : NumericError {
  explicit GridError(const std::string& msg) : NumericError(msg) {}
};

/// A finite sample budget was exhausted before the estimator consumed the
/// shots it needs. Mapped to process exit code 4 by the CLI.
struct InsufficientSamplesError : std::runtime_error {
  explicit InsufficientSamplesError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace cvwit

#endif
