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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cvwit/errors.hpp"
#include "cvwit/harness.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string base_name = "report";
  std::optional<uint64_t> seed;
  std::optional<int> threads;
};

int run_command(const std::string& name, const CommonOpts& opts) {
  cvwit::ExperimentConfig cfg = cvwit::load_config_file(opts.config_path);
  if (opts.seed.has_value()) {
    cfg.seed = *opts.seed;
    cfg.echo["seed"] = *opts.seed;
  }
  if (opts.threads.has_value()) {
    if (*opts.threads < 1) throw cvwit::ConfigError("--threads must be >= 1");
    cfg.threads = *opts.threads;
  }

  if (name == "plan") {
    std::cout << cvwit::run_plan(cfg).dump(2) << std::endl;
    return 0;
  }

  cvwit::RunReport report;
  if (name == "oracle") {
    report = cvwit::run_oracle(cfg);
  } else if (name == "certify-state") {
    report = cvwit::run_certify_state(cfg);
  } else if (name == "benchmark-gaussian") {
    report = cvwit::run_benchmark_gaussian(cfg);
  } else if (name == "benchmark-amplifier") {
    report = cvwit::run_benchmark_amplifier(cfg);
  } else {
    report = cvwit::run_benchmark_cubic(cfg);
  }

  std::string path = cvwit::write_report(report, opts.out_dir, opts.base_name);
  if (report.doc.contains("witness")) {
    std::cout << "witness estimate " << report.doc["witness"]["estimate"].dump();
    if (report.doc.contains("exact") && report.doc["exact"].contains("witness")) {
      std::cout << " (exact " << report.doc["exact"]["witness"].dump() << ")";
    }
    std::cout << '\n';
  }
  std::cout << "wrote " << path << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fidelity-witness estimation for continuous-variable gates"};
  app.require_subcommand(1);

  CommonOpts opts;
  const std::pair<const char*, const char*> commands[] = {
      {"certify-state", "Certify a Gaussian state preparation"},
      {"benchmark-gaussian", "Benchmark a Gaussian channel on a probe ensemble"},
      {"benchmark-amplifier", "Benchmark a phase-insensitive amplifier"},
      {"benchmark-cubic", "Benchmark a cubic phase gate"},
      {"plan", "Print the shot budget without sampling"},
      {"oracle", "Print exact witness and fidelity values without sampling"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", opts.config_path, "Path to a JSON config")
        ->required();
    sub->add_option("--out", opts.out_dir, "Directory for report files");
    sub->add_option("--name", opts.base_name, "Report base name");
    sub->add_option("--seed", opts.seed, "Override the config seed");
    sub->add_option("--threads", opts.threads, "Override the config thread count");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run_command(cmd, opts);
  } catch (const cvwit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const cvwit::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << std::endl;
    return 3;
  } catch (const cvwit::InsufficientSamplesError& e) {
    std::cerr << "sample budget error: " << e.what() << std::endl;
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
