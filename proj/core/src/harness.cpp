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

#include "cvwit/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <Eigen/Cholesky>

#include "cvwit/errors.hpp"
#include "cvwit/fock.hpp"
#include "cvwit/measurement.hpp"
#include "cvwit/symplectic.hpp"

namespace cvwit {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config parsing

const json& require_key(const json& j, const char* key, const char* ctx) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string(ctx) + ": missing required key '" + key + "'");
  }
  return j.at(key);
}

double as_number(const json& v, const char* ctx) {
  if (!v.is_number()) {
    throw ConfigError(std::string(ctx) + ": expected a number");
  }
  return v.get<double>();
}

long long as_integer(const json& v, const char* ctx) {
  if (!v.is_number_integer()) {
    throw ConfigError(std::string(ctx) + ": expected an integer");
  }
  return v.get<long long>();
}

std::complex<double> as_complex(const json& v, const char* ctx) {
  if (!v.is_array() || v.size() != 2) {
    throw ConfigError(std::string(ctx) + ": expected a [re, im] pair");
  }
  return {as_number(v[0], ctx), as_number(v[1], ctx)};
}

std::vector<std::complex<double>> as_amplitude(const json& v, const char* ctx) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(std::string(ctx) +
                      ": expected a nonempty array of [re, im] pairs");
  }
  std::vector<std::complex<double>> a;
  a.reserve(v.size());
  for (const auto& e : v) a.push_back(as_complex(e, ctx));
  return a;
}

Mat as_matrix(const json& v, const char* ctx) {
  if (!v.is_array() || v.empty() || !v[0].is_array()) {
    throw ConfigError(std::string(ctx) + ": expected an array of rows");
  }
  const size_t rows = v.size(), cols = v[0].size();
  Mat m(rows, cols);
  for (size_t r = 0; r < rows; r++) {
    if (!v[r].is_array() || v[r].size() != cols) {
      throw ConfigError(std::string(ctx) + ": ragged matrix literal");
    }
    for (size_t c = 0; c < cols; c++) m(r, c) = as_number(v[r][c], ctx);
  }
  return m;
}

Vec as_vector(const json& v, const char* ctx) {
  if (!v.is_array()) {
    throw ConfigError(std::string(ctx) + ": expected an array");
  }
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); i++) out(i) = as_number(v[i], ctx);
  return out;
}

GaussianUnitary parse_gaussian_target(const json& t, const char* ctx) {
  if (t.contains("S")) {
    Mat S = as_matrix(t.at("S"), ctx);
    Vec d = Vec::Zero(S.rows());
    if (t.contains("d")) d = as_vector(t.at("d"), ctx);
    try {
      return make_unitary(S, d);
    } catch (const std::exception& e) {
      throw ConfigError(std::string(ctx) + ": " + e.what());
    }
  }
  const int modes =
      static_cast<int>(as_integer(require_key(t, "modes", ctx), ctx));
  if (modes < 1) throw ConfigError(std::string(ctx) + ": modes must be >= 1");
  Mat S = Mat::Identity(2 * modes, 2 * modes);
  Vec d = Vec::Zero(2 * modes);
  if (t.contains("ops")) {
    const json& ops = t.at("ops");
    if (!ops.is_array()) {
      throw ConfigError(std::string(ctx) + ": 'ops' must be an array");
    }
    for (const auto& op : ops) {
      std::string type = require_key(op, "type", ctx).get<std::string>();
      Mat Sop;
      Vec dop = Vec::Zero(2 * modes);
      try {
        if (type == "squeezer") {
          int mode = static_cast<int>(as_integer(require_key(op, "mode", ctx), ctx));
          Sop = squeezer(modes, mode, as_number(require_key(op, "xi", ctx), ctx));
        } else if (type == "rotation") {
          int mode = static_cast<int>(as_integer(require_key(op, "mode", ctx), ctx));
          Sop = rotation(modes, mode, as_number(require_key(op, "theta", ctx), ctx));
        } else if (type == "beamsplitter") {
          const json& pair = require_key(op, "modes", ctx);
          if (!pair.is_array() || pair.size() != 2) {
            throw ConfigError(std::string(ctx) +
                              ": beamsplitter 'modes' must be a pair");
          }
          Sop = beamsplitter(modes, static_cast<int>(as_integer(pair[0], ctx)),
                             static_cast<int>(as_integer(pair[1], ctx)),
                             as_number(require_key(op, "theta", ctx), ctx));
        } else if (type == "displacement") {
          int mode = static_cast<int>(as_integer(require_key(op, "mode", ctx), ctx));
          if (mode < 0 || mode >= modes) {
            throw ConfigError(std::string(ctx) + ": displacement mode out of range");
          }
          std::complex<double> a = as_complex(require_key(op, "alpha", ctx), ctx);
          Sop = Mat::Identity(2 * modes, 2 * modes);
          dop(2 * mode) = a.real();
          dop(2 * mode + 1) = a.imag();
        } else {
          throw ConfigError(std::string(ctx) + ": unknown op type '" + type + "'");
        }
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(ctx) + ": " + e.what());
      }
      S = Sop * S;
      d = Sop * d + dop;
    }
  }
  return make_unitary(S, d);
}

ProbeEnsemble parse_ensemble(const json& e, const char* ctx) {
  const json& amps = require_key(e, "amplitudes", ctx);
  if (!amps.is_array() || amps.empty()) {
    throw ConfigError(std::string(ctx) + ": 'amplitudes' must be a nonempty array");
  }
  std::vector<std::vector<std::complex<double>>> amplitudes;
  amplitudes.reserve(amps.size());
  for (const auto& a : amps) amplitudes.push_back(as_amplitude(a, ctx));
  if (!e.contains("priors")) return make_uniform_ensemble(amplitudes);
  const json& pr = e.at("priors");
  if (!pr.is_array()) {
    throw ConfigError(std::string(ctx) + ": 'priors' must be an array");
  }
  std::vector<double> priors;
  priors.reserve(pr.size());
  for (const auto& p : pr) priors.push_back(as_number(p, ctx));
  return make_ensemble(amplitudes, priors);
}

DeviceModel parse_device(const json& dv, Scenario sc,
                         const GaussianUnitary& target) {
  const char* ctx = "config.device";
  std::string kind = require_key(dv, "kind", ctx).get<std::string>();
  const bool gaussian_scenario = sc == Scenario::kGaussianState ||
                                 sc == Scenario::kGaussianChannel;
  if (kind == "ideal_gaussian" || kind == "lossy_gaussian" ||
      kind == "thermal_gaussian" || kind == "miscalibrated_gaussian") {
    if (!gaussian_scenario) {
      throw ConfigError("config.device: Gaussian device kinds require a "
                        "gaussian_state or gaussian_channel scenario");
    }
    if (kind == "ideal_gaussian") return make_ideal_device(target);
    if (kind == "lossy_gaussian") {
      return make_lossy_device(target,
                               as_number(require_key(dv, "eta", ctx), ctx));
    }
    if (kind == "thermal_gaussian") {
      return make_thermal_device(target,
                                 as_number(require_key(dv, "nbar", ctx), ctx));
    }
    GaussianUnitary actual =
        parse_gaussian_target(require_key(dv, "actual", ctx), ctx);
    return make_miscalibrated_device(target, actual);
  }
  if (kind == "amplifier") {
    if (sc != Scenario::kAmplifier) {
      throw ConfigError("config.device: amplifier devices require the "
                        "amplifier scenario");
    }
    double n_add = dv.contains("n_add") ? as_number(dv.at("n_add"), ctx) : 0.0;
    return make_amplifier_device(as_number(require_key(dv, "gain", ctx), ctx),
                                 n_add);
  }
  if (kind == "cubic_phase") {
    if (sc != Scenario::kCubic) {
      throw ConfigError("config.device: cubic_phase devices require the "
                        "cubic scenario");
    }
    double eta = dv.contains("pre_loss_eta") ? as_number(dv.at("pre_loss_eta"), ctx) : 1.0;
    std::complex<double> disp =
        dv.contains("pre_displacement") ? as_complex(dv.at("pre_displacement"), ctx)
                                        : std::complex<double>(0.0, 0.0);
    double xi = dv.contains("pre_squeeze_xi") ? as_number(dv.at("pre_squeeze_xi"), ctx) : 0.0;
    return make_cubic_device(
        as_number(require_key(dv, "gamma_actual", ctx), ctx), eta, disp, xi);
  }
  throw ConfigError("config.device: unknown device kind '" + kind + "'");
}

Scenario parse_scenario(const std::string& name) {
  if (name == "gaussian_state") return Scenario::kGaussianState;
  if (name == "gaussian_channel") return Scenario::kGaussianChannel;
  if (name == "amplifier") return Scenario::kAmplifier;
  if (name == "cubic") return Scenario::kCubic;
  throw ConfigError("config: unknown scenario '" + name + "'");
}

// ---------------------------------------------------------------------------
// Sampling engine

using ShotFn = std::function<double(Philox4x32&)>;

std::vector<double> run_batches(int batches, long long per_batch, int threads,
                                StreamRole role, uint64_t seed,
                                const ShotFn& shot) {
  std::vector<double> means(batches, 0.0);
  auto run_range = [&](std::atomic<int>& next) {
    for (;;) {
      int b = next.fetch_add(1);
      if (b >= batches) return;
      Philox4x32 rng(seed, make_stream(role, static_cast<uint32_t>(b)));
      double sum = 0.0;
      for (long long i = 0; i < per_batch; i++) sum += shot(rng);
      means[static_cast<size_t>(b)] = sum / static_cast<double>(per_batch);
    }
  };
  std::atomic<int> next{0};
  const int workers = std::max(1, std::min<int>(threads, batches));
  if (workers == 1) {
    run_range(next);
    return means;
  }
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; t++) {
    pool.emplace_back([&]() {
      try {
        run_range(next);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return means;
}

double pilot_mean_square(long long pilot_size, StreamRole role, uint64_t seed,
                         const ShotFn& shot) {
  Philox4x32 rng(seed, make_stream(role, 0));
  double sum_sq = 0.0;
  for (long long i = 0; i < pilot_size; i++) {
    double v = shot(rng);
    sum_sq += v * v;
  }
  return sum_sq / static_cast<double>(pilot_size);
}

struct EstimatorSpec {
  std::string name;
  StreamRole role;
  StreamRole pilot_role;
  double epsilon;
  double delta;
  double theorem_bound;
  ShotFn shot;
};

struct EstimatorRun {
  std::string name;
  MoMResult mom;
  double variance_proxy = 0.0;
  std::string variance_mode;
  long long pilot_shots = 0;
  int batches = 0;
  long long per_batch = 0;
};

std::vector<EstimatorRun> run_estimators(const ExperimentConfig& cfg,
                                         const std::vector<EstimatorSpec>& specs) {
  std::vector<EstimatorRun> runs(specs.size());
  long long planned = 0;
  for (size_t i = 0; i < specs.size(); i++) {
    const EstimatorSpec& s = specs[i];
    EstimatorRun& r = runs[i];
    r.name = s.name;
    if (cfg.variance_mode == VarianceMode::kTheorem) {
      r.variance_mode = "theorem";
      r.variance_proxy = s.theorem_bound;
    } else {
      r.variance_mode = "pilot";
      r.pilot_shots = cfg.pilot_size;
      r.variance_proxy =
          2.0 * pilot_mean_square(cfg.pilot_size, s.pilot_role, cfg.seed, s.shot);
    }
    r.batches = mom_batch_count(s.delta);
    r.per_batch = mom_batch_size(s.epsilon, r.variance_proxy);
    planned += r.pilot_shots +
               static_cast<long long>(r.batches) * r.per_batch;
  }
  if (cfg.max_shots.has_value() && planned > *cfg.max_shots) {
    std::ostringstream msg;
    msg << "run needs " << planned << " shots but max_shots caps it at "
        << *cfg.max_shots
        << "; raise the cap, relax (epsilon, delta), or switch variance_mode";
    throw InsufficientSamplesError(msg.str());
  }
  for (size_t i = 0; i < specs.size(); i++) {
    const EstimatorSpec& s = specs[i];
    EstimatorRun& r = runs[i];
    std::vector<double> means =
        run_batches(r.batches, r.per_batch, cfg.threads, s.role, cfg.seed, s.shot);
    r.mom = assemble_mom(std::move(means), r.per_batch, s.epsilon, s.delta);
  }
  return runs;
}

long long total_shots(const std::vector<EstimatorRun>& runs) {
  long long total = 0;
  for (const auto& r : runs) total += r.pilot_shots + r.mom.total_n;
  return total;
}

// ---------------------------------------------------------------------------
// Report assembly

json estimator_json(const EstimatorRun& r) {
  return json{{"estimate", r.mom.estimate},
              {"batches", r.mom.batches},
              {"per_batch_size", r.mom.per_batch_size},
              {"total_n", r.mom.total_n},
              {"batch_means", r.mom.batch_means},
              {"epsilon", r.mom.epsilon},
              {"delta", r.mom.delta},
              {"variance_proxy", r.variance_proxy},
              {"variance_mode", r.variance_mode},
              {"pilot_shots", r.pilot_shots}};
}

std::string format_csv_number(double v) { return json(v).dump(); }

std::string batch_csv(const std::vector<EstimatorRun>& runs) {
  std::ostringstream os;
  os << "estimator,batch_index,mean,size\n";
  for (const auto& r : runs) {
    for (size_t b = 0; b < r.mom.batch_means.size(); b++) {
      os << r.name << ',' << b << ',' << format_csv_number(r.mom.batch_means[b])
         << ',' << r.mom.per_batch_size << '\n';
    }
  }
  return os.str();
}

json witness_json(const ExperimentConfig& cfg, const WitnessValue& w) {
  json components = json::object();
  for (const auto& [key, value] : w.components) components[key] = value;
  return json{{"estimate", w.value},
              {"epsilon", cfg.epsilon},
              {"delta", cfg.delta},
              {"components", components}};
}

RunReport finish_report(const ExperimentConfig& cfg, const WitnessValue& w,
                        const std::vector<EstimatorRun>& runs, json exact,
                        const ComplexityBudget& budget,
                        std::chrono::steady_clock::time_point t0) {
  const long long actual = total_shots(runs);
  json est = json::object();
  for (const auto& r : runs) est[r.name] = estimator_json(r);
  json budget_section = {{"planner_n_total", budget.n_total},
                         {"actual_n_total", actual}};
  if (cfg.variance_mode == VarianceMode::kTheorem) {
    budget_section["within_budget"] = actual <= budget.n_total;
  }
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
  RunReport report;
  report.doc = json{{"config", cfg.echo},
                    {"scenario", scenario_name(cfg.scenario)},
                    {"seed", cfg.seed},
                    {"witness", witness_json(cfg, w)},
                    {"estimators", est},
                    {"exact", std::move(exact)},
                    {"budget", budget_section},
                    {"shots", json{{"total", actual}}},
                    {"timing", json{{"wall_seconds", wall}}}};
  report.batch_csv = batch_csv(runs);
  return report;
}

// ---------------------------------------------------------------------------
// Scenario setups

Mat spd_inverse(const Mat& V, const char* who) {
  Eigen::LLT<Mat> llt(V);
  if (llt.info() != Eigen::Success) {
    throw NumericError(std::string(who) + ": covariance is not positive definite");
  }
  return llt.solve(Mat::Identity(V.rows(), V.cols()));
}

struct StateSetup {
  GaussianState target_state;
  GaussianState prep;
  IndexDistribution dist;
  OverlapTraces exact_traces{};
  double exact_w = 0.0;
  double exact_f = 0.0;
  ComplexityBudget budget;
};

StateSetup make_state_setup(const ExperimentConfig& cfg) {
  StateSetup st;
  GaussianState input = coherent_state(cfg.state_input);
  st.target_state = apply_unitary(cfg.target_unitary, input);
  st.prep = probe_gaussian(cfg.device, cfg.state_input);
  st.dist = index_distribution(spd_inverse(st.target_state.V, "state target"));
  st.exact_traces = exact_overlap_traces(st.target_state, st.prep);
  st.exact_w = witness_gaussian_state(st.target_state, st.exact_traces.t1,
                                      st.exact_traces.t2, st.exact_traces.t3)
                   .value;
  st.exact_f = overlap_pure(st.target_state, st.prep);

  const double s_t = std::exp(max_squeezing(williamson_euler(st.target_state.V)));
  st.budget = plan_state(cfg.epsilon, cfg.delta, st.target_state.modes, s_t,
                         max_mode_energy(st.prep), gamma_max_sampled(st.prep),
                         st.target_state.x.squaredNorm());
  return st;
}

struct ChannelSetup {
  Mat v_target;
  IndexDistribution dist;
  std::vector<GaussianState> outputs;
  std::vector<Vec> x_target;
  double exact_ex = 0.0;
  double exact_echi = 0.0;
  double exact_w = 0.0;
  double exact_f = 0.0;
  ComplexityBudget budget;
};

ChannelSetup make_channel_setup(const ExperimentConfig& cfg) {
  ChannelSetup ch;
  const GaussianUnitary& u = cfg.target_unitary;
  const ProbeEnsemble& ens = cfg.ensemble;
  ch.v_target = 0.25 * u.S * u.S.transpose();
  ch.dist = index_distribution(spd_inverse(ch.v_target, "channel target"));
  double e_max_target = 0.0, e_max_device = 0.0, gamma_max = 0.0;
  for (int i = 0; i < ens.size(); i++) {
    GaussianState out = probe_gaussian(cfg.device, ens.amplitudes[i]);
    Vec x_u = u.S * coherent_means(ens.amplitudes[i]) + u.d;
    GaussianState target_state;
    target_state.x = x_u;
    target_state.V = ch.v_target;
    target_state.modes = u.modes;
    OverlapTraces tr = exact_overlap_traces(target_state, out);
    ch.exact_ex += ens.priors[i] * tr.t1;
    ch.exact_echi += ens.priors[i] * tr.t2;
    ch.exact_f += ens.priors[i] * overlap_pure(target_state, out);
    e_max_target = std::max(e_max_target, max_mode_energy(target_state));
    e_max_device = std::max(e_max_device, max_mode_energy(out));
    gamma_max = std::max(gamma_max, gamma_max_sampled(out));
    ch.outputs.push_back(std::move(out));
    ch.x_target.push_back(std::move(x_u));
  }
  ch.exact_w =
      witness_gaussian_channel(u, ens, ch.exact_ex, ch.exact_echi).value;
  const double s_u = std::exp(max_squeezing(williamson_euler(ch.v_target)));
  ch.budget = plan_channel(cfg.epsilon, cfg.delta, u.modes, s_u, e_max_target,
                           e_max_device, gamma_max);
  return ch;
}

double rotated_mean(const GaussianState& rho, double theta) {
  return std::cos(theta) * rho.x(0) + std::sin(theta) * rho.x(1);
}

double rotated_var(const GaussianState& rho, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return c * c * rho.V(0, 0) + 2.0 * c * s * rho.V(0, 1) + s * s * rho.V(1, 1);
}

// <r_theta^(2 power)> of a single-mode Gaussian, powers 1 and 2.
double rotated_square_moment(const GaussianState& rho, double theta, int power) {
  const double mu = rotated_mean(rho, theta), var = rotated_var(rho, theta);
  if (power == 1) return var + mu * mu;
  if (power == 2) {
    return 3.0 * var * var + 6.0 * mu * mu * var + mu * mu * mu * mu;
  }
  throw std::invalid_argument("rotated_square_moment: power must be 1 or 2");
}

struct AmplifierSetup {
  std::vector<GaussianState> outputs;
  std::vector<ObservableDictionary> dicts;
  double exact_ez = 0.0;
  double exact_w = 0.0;
  double exact_f = 0.0;
  ComplexityBudget budget;
};

AmplifierSetup make_amplifier_setup(const ExperimentConfig& cfg) {
  AmplifierSetup am;
  const ProbeEnsemble& ens = cfg.ensemble;
  double r_max = 0.0;
  for (int i = 0; i < ens.size(); i++) {
    std::complex<double> a = ens.amplitudes[i][0];
    GaussianState out = probe_gaussian(cfg.device, ens.amplitudes[i]);
    ObservableDictionary dict = build_dictionary_amplifier(a, cfg.g);
    am.exact_ez += ens.priors[i] * dictionary_expectation_gaussian(dict, out);
    GaussianState ideal = coherent_state({cfg.g * a});
    am.exact_f += ens.priors[i] * overlap_pure(ideal, out);
    for (const auto& e : dict.entries) {
      r_max = std::max(r_max, rotated_square_moment(out, e.angle, e.power));
    }
    am.outputs.push_back(std::move(out));
    am.dicts.push_back(std::move(dict));
  }
  am.exact_w = witness_amplifier(cfg.g, ens, am.exact_ez).value;
  am.budget = plan_amplifier(cfg.epsilon, cfg.delta,
                             amplifier_coefficient_sum_bound(ens, cfg.g), r_max);
  return am;
}

struct CubicSetup {
  std::vector<GridWavefunction> outputs;
  std::vector<ObservableDictionary> dicts;
  std::vector<std::vector<QuadratureSampler>> samplers;  // [element][slot]
  std::vector<std::vector<int>> entry_slot;              // [element][entry]
  double exact_ez_grid = 0.0;
  double exact_w_grid = 0.0;
  double exact_w_fock = 0.0;
  double exact_f = 0.0;
  ComplexityBudget budget;
};

CubicSetup make_cubic_setup(const ExperimentConfig& cfg, bool fock_oracle) {
  CubicSetup cu;
  const ProbeEnsemble& ens = cfg.ensemble;
  double q_max = 0.0;
  for (int i = 0; i < ens.size(); i++) {
    std::complex<double> a = ens.amplitudes[i][0];
    GridWavefunction psi = probe_cubic(cfg.device, a, cfg.grid);
    ObservableDictionary dict = build_dictionary_cubic(a, cfg.gamma);

    std::vector<QuadratureSampler> slots;
    std::vector<double> slot_angle;
    std::vector<int> entry_slot(dict.size(), -1);
    double ez = 0.0;
    for (int k = 0; k < dict.size(); k++) {
      const DictionaryEntry& e = dict.entries[k];
      if (e.coeff == 0.0) continue;
      int slot = -1;
      for (size_t s = 0; s < slot_angle.size(); s++) {
        if (slot_angle[s] == e.angle) {
          slot = static_cast<int>(s);
          break;
        }
      }
      if (slot < 0) {
        GridWavefunction rotated = rotate_quadrature(psi, e.angle);
        slots.emplace_back(rotated);
        slot_angle.push_back(e.angle);
        slot = static_cast<int>(slots.size()) - 1;
      }
      entry_slot[k] = slot;
      ez += e.coeff * slots[slot].moment(e.power);
      q_max = std::max(q_max, slots[slot].moment(2 * e.power));
    }
    cu.exact_ez_grid += ens.priors[i] * ez;

    if (fock_oracle) {
      CVec c = project_to_fock(psi, cfg.fock_cutoff);
      double deficiency = 1.0 - c.squaredNorm();
      if (deficiency > 1e-6) {
        throw NumericError(
            "cubic Fock oracle: projection lost more than 1e-6 of norm; "
            "increase fock_cutoff or the grid extent");
      }
      c /= c.norm();
      CMat w_op = cubic_witness_operator(cfg.gamma, a, cfg.fock_cutoff);
      cu.exact_w_fock += ens.priors[i] * fock_expectation(c, w_op);
      CVec ideal = fock_cubic_state(a, cfg.gamma, cfg.fock_cutoff);
      std::complex<double> ov = ideal.adjoint() * c;
      cu.exact_f += ens.priors[i] * std::norm(ov);
    }

    cu.outputs.push_back(std::move(psi));
    cu.dicts.push_back(std::move(dict));
    cu.samplers.push_back(std::move(slots));
    cu.entry_slot.push_back(std::move(entry_slot));
  }
  cu.exact_w_grid = witness_cubic(cfg.gamma, ens, cu.exact_ez_grid).value;
  cu.budget = plan_cubic(cfg.epsilon, cfg.delta, cfg.gamma, ens, q_max);
  return cu;
}

void require_scenario(const ExperimentConfig& cfg, Scenario expected,
                      const char* who) {
  if (cfg.scenario != expected) {
    throw ConfigError(std::string(who) + ": config has scenario '" +
                      scenario_name(cfg.scenario) + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API

ExperimentConfig parse_config(const json& doc) {
  try {
    ExperimentConfig cfg;
    cfg.echo = doc;
    cfg.scenario = parse_scenario(
        require_key(doc, "scenario", "config").get<std::string>());
    const json& seed = require_key(doc, "seed", "config");
    if (!seed.is_number_integer()) {
      throw ConfigError("config: 'seed' must be an integer");
    }
    cfg.seed = seed.get<uint64_t>();
    cfg.epsilon = as_number(require_key(doc, "epsilon", "config"), "config.epsilon");
    cfg.delta = as_number(require_key(doc, "delta", "config"), "config.delta");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
      throw ConfigError("config: delta must lie in (0, 1)");
    }
    if (doc.contains("variance_mode")) {
      std::string mode = doc.at("variance_mode").get<std::string>();
      if (mode == "pilot") {
        cfg.variance_mode = VarianceMode::kPilot;
      } else if (mode == "theorem") {
        cfg.variance_mode = VarianceMode::kTheorem;
      } else {
        throw ConfigError("config: variance_mode must be 'pilot' or 'theorem'");
      }
    }
    if (doc.contains("pilot_size")) {
      cfg.pilot_size = as_integer(doc.at("pilot_size"), "config.pilot_size");
      if (cfg.pilot_size < 1) throw ConfigError("config: pilot_size must be >= 1");
    }
    if (doc.contains("max_shots")) {
      long long cap = as_integer(doc.at("max_shots"), "config.max_shots");
      if (cap < 1) throw ConfigError("config: max_shots must be >= 1");
      cfg.max_shots = cap;
    }
    if (doc.contains("threads")) {
      cfg.threads = static_cast<int>(as_integer(doc.at("threads"), "config.threads"));
      if (cfg.threads < 1) throw ConfigError("config: threads must be >= 1");
    }
    if (doc.contains("grid")) {
      const json& g = doc.at("grid");
      if (g.contains("n")) cfg.grid.n = static_cast<int>(as_integer(g.at("n"), "config.grid.n"));
      if (g.contains("q_min")) cfg.grid.q_min = as_number(g.at("q_min"), "config.grid.q_min");
      if (g.contains("q_max")) cfg.grid.q_max = as_number(g.at("q_max"), "config.grid.q_max");
    }
    if (doc.contains("fock_cutoff")) {
      cfg.fock_cutoff = static_cast<int>(as_integer(doc.at("fock_cutoff"), "config.fock_cutoff"));
      if (cfg.fock_cutoff < 4) throw ConfigError("config: fock_cutoff must be >= 4");
    }

    const json& target = require_key(doc, "target", "config");
    switch (cfg.scenario) {
      case Scenario::kGaussianState:
      case Scenario::kGaussianChannel:
        cfg.target_unitary = parse_gaussian_target(target, "config.target");
        break;
      case Scenario::kAmplifier:
        cfg.g = as_number(require_key(target, "g", "config.target"), "config.target.g");
        if (!(cfg.g > 1.0)) {
          throw ConfigError("config: amplifier target gain g must be > 1");
        }
        break;
      case Scenario::kCubic:
        cfg.gamma = as_number(require_key(target, "gamma", "config.target"),
                              "config.target.gamma");
        break;
    }

    if (cfg.scenario == Scenario::kGaussianState) {
      if (doc.contains("input")) {
        cfg.state_input = as_amplitude(doc.at("input"), "config.input");
        if (static_cast<int>(cfg.state_input.size()) != cfg.target_unitary.modes) {
          throw ConfigError("config: 'input' mode count does not match the target");
        }
      } else {
        cfg.state_input.assign(cfg.target_unitary.modes, {0.0, 0.0});
      }
    } else {
      cfg.ensemble = parse_ensemble(require_key(doc, "ensemble", "config"),
                                    "config.ensemble");
      if (cfg.scenario == Scenario::kGaussianChannel) {
        if (cfg.ensemble.modes != cfg.target_unitary.modes) {
          throw ConfigError("config: ensemble mode count does not match the target");
        }
      } else if (cfg.ensemble.modes != 1) {
        throw ConfigError("config: this scenario takes single-mode ensembles");
      }
    }

    cfg.device = parse_device(require_key(doc, "device", "config"), cfg.scenario,
                              cfg.target_unitary);
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(doc);
}

RunReport run_certify_state(const ExperimentConfig& cfg) {
  require_scenario(cfg, Scenario::kGaussianState, "run_certify_state");
  auto t0 = std::chrono::steady_clock::now();
  StateSetup st = make_state_setup(cfg);

  ShotFn chi_shot = [&st](Philox4x32& rng) {
    auto [k, l] = st.dist.sample(rng);
    double r = homodyne_single(st.prep, k, rng);
    return chi_kernel(k, l, r, st.target_state.x, st.dist);
  };
  ShotFn x_shot = [&st](Philox4x32& rng) {
    auto [k, l] = st.dist.sample(rng);
    SecondMomentOutcome out = sample_gamma_entry(st.prep, k, l, rng);
    return x_kernel(k, l, out.value, st.dist);
  };

  std::vector<EstimatorSpec> specs = {
      {"chi", StreamRole::kChi, StreamRole::kChiPilot, cfg.epsilon,
       cfg.delta / 2.0, st.budget.chi_second_moment_bound, chi_shot},
      {"x", StreamRole::kX, StreamRole::kXPilot, 2.0 * cfg.epsilon,
       cfg.delta / 2.0, st.budget.x_second_moment_bound, x_shot},
  };
  std::vector<EstimatorRun> runs = run_estimators(cfg, specs);
  WitnessValue w = witness_gaussian_state(
      st.target_state, runs[1].mom.estimate, runs[0].mom.estimate,
      st.exact_traces.t3);
  json exact = {{"witness", st.exact_w},
                {"fidelity", st.exact_f},
                {"t1", st.exact_traces.t1},
                {"t2", st.exact_traces.t2},
                {"t3", st.exact_traces.t3}};
  return finish_report(cfg, w, runs, std::move(exact), st.budget, t0);
}

RunReport run_benchmark_gaussian(const ExperimentConfig& cfg) {
  require_scenario(cfg, Scenario::kGaussianChannel, "run_benchmark_gaussian");
  auto t0 = std::chrono::steady_clock::now();
  ChannelSetup ch = make_channel_setup(cfg);
  const ProbeEnsemble& ens = cfg.ensemble;

  ShotFn chi_shot = [&ch, &ens](Philox4x32& rng) {
    int i = sample_ensemble_index(ens, rng);
    auto [k, l] = ch.dist.sample(rng);
    double r = homodyne_single(ch.outputs[i], k, rng);
    return chi_kernel(k, l, r, ch.x_target[i], ch.dist);
  };
  ShotFn x_shot = [&ch, &ens](Philox4x32& rng) {
    int i = sample_ensemble_index(ens, rng);
    auto [k, l] = ch.dist.sample(rng);
    SecondMomentOutcome out = sample_gamma_entry(ch.outputs[i], k, l, rng);
    return x_kernel(k, l, out.value, ch.dist);
  };

  std::vector<EstimatorSpec> specs = {
      {"chi", StreamRole::kChi, StreamRole::kChiPilot, cfg.epsilon,
       cfg.delta / 2.0, ch.budget.chi_second_moment_bound, chi_shot},
      {"x", StreamRole::kX, StreamRole::kXPilot, 2.0 * cfg.epsilon,
       cfg.delta / 2.0, ch.budget.x_second_moment_bound, x_shot},
  };
  std::vector<EstimatorRun> runs = run_estimators(cfg, specs);
  WitnessValue w = witness_gaussian_channel(
      cfg.target_unitary, ens, runs[1].mom.estimate, runs[0].mom.estimate);
  json exact = {{"witness", ch.exact_w},
                {"fidelity", ch.exact_f},
                {"e_x", ch.exact_ex},
                {"e_chi", ch.exact_echi}};
  return finish_report(cfg, w, runs, std::move(exact), ch.budget, t0);
}

RunReport run_benchmark_amplifier(const ExperimentConfig& cfg) {
  require_scenario(cfg, Scenario::kAmplifier, "run_benchmark_amplifier");
  auto t0 = std::chrono::steady_clock::now();
  AmplifierSetup am = make_amplifier_setup(cfg);
  const ProbeEnsemble& ens = cfg.ensemble;

  ShotFn zeta_shot = [&am, &ens](Philox4x32& rng) {
    int i = sample_ensemble_index(ens, rng);
    int k = sample_coefficient_index(am.dicts[i], rng);
    double u =
        homodyne_rotated(am.outputs[i], 0, am.dicts[i].entries[k].angle, rng);
    return dictionary_kernel(am.dicts[i], k, u);
  };

  std::vector<EstimatorSpec> specs = {
      {"zeta", StreamRole::kZeta, StreamRole::kZetaPilot, cfg.epsilon,
       cfg.delta, am.budget.single_second_moment_bound, zeta_shot},
  };
  std::vector<EstimatorRun> runs = run_estimators(cfg, specs);
  WitnessValue w = witness_amplifier(cfg.g, ens, runs[0].mom.estimate);
  json exact = {{"witness", am.exact_w},
                {"fidelity", am.exact_f},
                {"e_zeta", am.exact_ez}};
  return finish_report(cfg, w, runs, std::move(exact), am.budget, t0);
}

RunReport run_benchmark_cubic(const ExperimentConfig& cfg) {
  require_scenario(cfg, Scenario::kCubic, "run_benchmark_cubic");
  auto t0 = std::chrono::steady_clock::now();
  CubicSetup cu = make_cubic_setup(cfg, /*fock_oracle=*/true);
  const ProbeEnsemble& ens = cfg.ensemble;

  ShotFn z_shot = [&cu, &ens](Philox4x32& rng) {
    int i = sample_ensemble_index(ens, rng);
    int k = sample_coefficient_index(cu.dicts[i], rng);
    double u = cu.samplers[i][cu.entry_slot[i][k]].sample(rng);
    return dictionary_kernel(cu.dicts[i], k, u);
  };

  std::vector<EstimatorSpec> specs = {
      {"z", StreamRole::kZ, StreamRole::kZPilot, cfg.epsilon, cfg.delta,
       cu.budget.single_second_moment_bound, z_shot},
  };
  std::vector<EstimatorRun> runs = run_estimators(cfg, specs);
  WitnessValue w = witness_cubic(cfg.gamma, ens, runs[0].mom.estimate);
  json exact = {{"witness_grid", cu.exact_w_grid},
                {"witness_fock", cu.exact_w_fock},
                {"fidelity", cu.exact_f},
                {"e_z_grid", cu.exact_ez_grid}};
  return finish_report(cfg, w, runs, std::move(exact), cu.budget, t0);
}

RunReport run_scenario(const ExperimentConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::kGaussianState:
      return run_certify_state(cfg);
    case Scenario::kGaussianChannel:
      return run_benchmark_gaussian(cfg);
    case Scenario::kAmplifier:
      return run_benchmark_amplifier(cfg);
    case Scenario::kCubic:
      return run_benchmark_cubic(cfg);
  }
  throw ConfigError("run_scenario: unknown scenario");
}

nlohmann::json run_plan(const ExperimentConfig& cfg) {
  ComplexityBudget budget;
  switch (cfg.scenario) {
    case Scenario::kGaussianState:
      budget = make_state_setup(cfg).budget;
      break;
    case Scenario::kGaussianChannel:
      budget = make_channel_setup(cfg).budget;
      break;
    case Scenario::kAmplifier:
      budget = make_amplifier_setup(cfg).budget;
      break;
    case Scenario::kCubic:
      budget = make_cubic_setup(cfg, /*fock_oracle=*/false).budget;
      break;
  }
  json doc = budget_to_json(budget);
  doc["scenario"] = scenario_name(cfg.scenario);
  return doc;
}

RunReport run_oracle(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  json exact;
  switch (cfg.scenario) {
    case Scenario::kGaussianState: {
      StateSetup st = make_state_setup(cfg);
      exact = {{"witness", st.exact_w},
               {"fidelity", st.exact_f},
               {"gap", st.exact_f - st.exact_w},
               {"t1", st.exact_traces.t1},
               {"t2", st.exact_traces.t2},
               {"t3", st.exact_traces.t3}};
      break;
    }
    case Scenario::kGaussianChannel: {
      ChannelSetup ch = make_channel_setup(cfg);
      exact = {{"witness", ch.exact_w},
               {"fidelity", ch.exact_f},
               {"gap", ch.exact_f - ch.exact_w},
               {"e_x", ch.exact_ex},
               {"e_chi", ch.exact_echi}};
      break;
    }
    case Scenario::kAmplifier: {
      AmplifierSetup am = make_amplifier_setup(cfg);
      exact = {{"witness", am.exact_w},
               {"fidelity", am.exact_f},
               {"gap", am.exact_f - am.exact_w},
               {"e_zeta", am.exact_ez}};
      break;
    }
    case Scenario::kCubic: {
      CubicSetup cu = make_cubic_setup(cfg, /*fock_oracle=*/true);
      exact = {{"witness_grid", cu.exact_w_grid},
               {"witness_fock", cu.exact_w_fock},
               {"fidelity", cu.exact_f},
               {"gap", cu.exact_f - cu.exact_w_fock},
               {"e_z_grid", cu.exact_ez_grid}};
      break;
    }
  }
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
  RunReport report;
  report.doc = json{{"config", cfg.echo},
                    {"scenario", scenario_name(cfg.scenario)},
                    {"seed", cfg.seed},
                    {"exact", std::move(exact)},
                    {"timing", json{{"wall_seconds", wall}}}};
  report.batch_csv = "estimator,batch_index,mean,size\n";
  return report;
}

nlohmann::json strip_timing(nlohmann::json doc) {
  doc.erase("timing");
  return doc;
}

nlohmann::json budget_to_json(const ComplexityBudget& b) {
  return json{{"epsilon", b.epsilon},
              {"delta", b.delta},
              {"m", b.m},
              {"s", b.s},
              {"e_max_prep", b.e_max_prep},
              {"e_max_target", b.e_max_target},
              {"gamma_max", b.gamma_max},
              {"r_max", b.r_max},
              {"q_max", b.q_max},
              {"s_max", b.s_max},
              {"s_prime_max", b.s_prime_max},
              {"chi_second_moment_bound", b.chi_second_moment_bound},
              {"x_second_moment_bound", b.x_second_moment_bound},
              {"single_second_moment_bound", b.single_second_moment_bound},
              {"batches", b.batches},
              {"per_batch_chi", b.per_batch_chi},
              {"per_batch_x", b.per_batch_x},
              {"per_batch_single", b.per_batch_single},
              {"n_chi", b.n_chi},
              {"n_x", b.n_x},
              {"n_total", b.n_total}};
}

std::string write_report(const RunReport& report, const std::string& out_dir,
                         const std::string& base_name) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  fs::path json_path = fs::path(out_dir) / (base_name + ".json");
  fs::path csv_path = fs::path(out_dir) / (base_name + ".csv");
  std::ofstream jf(json_path);
  if (!jf) throw ConfigError("cannot write report: " + json_path.string());
  jf << report.doc.dump(2) << '\n';
  std::ofstream cf(csv_path);
  if (!cf) throw ConfigError("cannot write report: " + csv_path.string());
  cf << report.batch_csv;
  return json_path.string();
}

}  // namespace cvwit
