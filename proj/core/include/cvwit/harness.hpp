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

#ifndef CVWIT_HARNESS_HPP
#define CVWIT_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvwit/channels.hpp"
#include "cvwit/estimators.hpp"
#include "cvwit/planner.hpp"
#include "cvwit/witnesses.hpp"

namespace cvwit {

/// Where the per-batch variance proxy comes from: the closed-form theorem
/// bound (conservative) or a pilot run scaled by a safety factor of 2.
enum class VarianceMode { kTheorem, kPilot };

/// Parsed and validated experiment description. Build via parse_config /
/// load_config_file; all validation failures throw ConfigError.
struct ExperimentConfig {
  Scenario scenario = Scenario::kGaussianState;
  uint64_t seed = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  VarianceMode variance_mode = VarianceMode::kPilot;
  long long pilot_size = 10000;
  std::optional<long long> max_shots;
  int threads = 1;
  GridSpec grid;
  int fock_cutoff = 64;

  // gaussian_state / gaussian_channel targets.
  GaussianUnitary target_unitary;
  // Coherent input the state-certification target is defined on.
  std::vector<std::complex<double>> state_input;

  double g = 0.0;      // amplifier target gain
  double gamma = 0.0;  // cubic target strength

  DeviceModel device;
  ProbeEnsemble ensemble;

  nlohmann::json echo;  // the original config document
};

/// Parse a config document. The JSON layout is described in
/// docs/config.schema.json; unknown scenario/device kinds, missing seed,
/// malformed matrices, and parameter range violations all raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Read + parse a config file (I/O or JSON syntax errors -> ConfigError).
ExperimentConfig load_config_file(const std::string& path);

/// One run's results: a JSON report plus a CSV dump of per-batch means
/// (columns estimator,batch_index,mean,size).
struct RunReport {
  nlohmann::json doc;
  std::string batch_csv;
};

RunReport run_certify_state(const ExperimentConfig& cfg);
RunReport run_benchmark_gaussian(const ExperimentConfig& cfg);
RunReport run_benchmark_amplifier(const ExperimentConfig& cfg);
RunReport run_benchmark_cubic(const ExperimentConfig& cfg);

/// Dispatch on cfg.scenario.
RunReport run_scenario(const ExperimentConfig& cfg);

/// Shot-budget calculation only (no sampling); returns the budget document.
nlohmann::json run_plan(const ExperimentConfig& cfg);

/// Exact witness/fidelity evaluation only (no sampling).
RunReport run_oracle(const ExperimentConfig& cfg);

/// Remove the wall-clock section so reports can be compared byte-for-byte
/// across runs and thread counts.
nlohmann::json strip_timing(nlohmann::json doc);

/// Serialize budget fields into a JSON object.
nlohmann::json budget_to_json(const ComplexityBudget& budget);

/// Write <base>.json and <base>.csv under out_dir; returns the JSON path.
std::string write_report(const RunReport& report, const std::string& out_dir,
                         const std::string& base_name);

}  // namespace cvwit

#endif
