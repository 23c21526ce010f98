// Copyright 2026 The nqsquench Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "nqs/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nqs/errors.hpp"
#include "nqs/exact.hpp"
#include "nqs/trajectory_csv.hpp"

namespace nqs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Sets the final couplings to initial + ratio * (final - initial).
void rescale_quench(ModelConfig &m, double ratio) {
  auto lerp = [ratio](const json &a, const json &b) {
    return a.get<double>() + ratio * (b.get<double>() - a.get<double>());
  };
  json &f = m.final;
  const json &i = m.initial;
  if (m.type == "custom-bonds") {
    for (std::size_t k = 0; k < f["bonds"].size(); ++k) {
      for (int c = 2; c < 5; ++c) {
        f["bonds"][k][c] = lerp(i["bonds"][k][c], f["bonds"][k][c]);
      }
    }
    for (std::size_t k = 0; k < f["fields"].size(); ++k) {
      for (int c = 0; c < 2; ++c) {
        f["fields"][k][c] = lerp(i["fields"][k][c], f["fields"][k][c]);
      }
    }
    return;
  }
  for (auto &item : f.items()) item.value() = lerp(i.at(item.key()), item.value());
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw ConfigError("output.directory", "cannot write " + path.string());
  }
}

void make_directory(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("output.directory", "cannot create output directory " +
                                              dir.string() + ": " +
                                              (ec ? ec.message() : "not a directory"));
  }
}

class EventLog {
 public:
  EventLog(const fs::path &path, bool enabled) {
    if (!enabled) return;
    out_.open(path, std::ios::binary);
    if (!out_) throw ConfigError("output.directory", "cannot write " + path.string());
  }
  void emit(const json &event) {
    if (out_.is_open()) out_ << event.dump() << "\n" << std::flush;
  }

 private:
  std::ofstream out_;
};

std::string prep_history_csv(const PrepResult &r) {
  std::string s = "iter,infidelity\n";
  char buf[64];
  for (const auto &[it, loss] : r.history) {
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", it, loss);
    s += buf;
  }
  return s;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

RunOutcome run_point(const SweepPoint &point, const RbmParameters &p0,
                     const fs::path &dir, EventLog &events, std::ostream &log) {
  const ExperimentConfig &cfg = point.config;
  make_directory(dir);
  write_text(dir / "config.json", config_to_json(cfg).dump(2) + "\n");

  const auto &d = cfg.dynamics;
  DynamicsOptions options;
  options.ed_compare = d.ed_compare;
  options.seed = cfg.rbm.seed;
  for (const auto &name : d.observables) {
    options.observables.push_back(make_observable(name, cfg.model));
  }
  options.snapshot_stride = d.snapshot_stride;
  if (d.snapshot_stride > 0) {
    make_directory(dir / "snapshots");
    options.on_snapshot = [&dir](const Snapshot &snap) {
      char name[40];
      std::snprintf(name, sizeof name, "step_%06lld.snap",
                    static_cast<long long>(snap.step));
      write_snapshot(dir / "snapshots" / name, snap);
    };
  }

  events.emit({{"event", "run_start"}, {"run", point.label},
               {"directory", dir.string()}});
  const Trajectory traj = run_dynamics(p0, cfg.model.quench(), d.solver,
                                       d.integrator, d.estimator, options);
  if (cfg.output.csv) emit_trajectory_csv(traj, (dir / "trajectory.csv").string());

  RunOutcome out;
  out.label = point.label;
  out.directory = dir;
  out.status = traj.status;
  out.terminal_step = traj.terminal_step;
  out.terminal_time = traj.records.back().time;
  out.message = traj.message;

  const auto &last = traj.records.back();
  json end = {{"event", "run_end"},
              {"run", point.label},
              {"status", status_name(traj.status)},
              {"terminal_step", traj.terminal_step},
              {"terminal_time", out.terminal_time},
              {"param_norm", finite_or_null(last.param_norm)}};
  if (!traj.message.empty()) end["message"] = traj.message;
  events.emit(end);

  log << (point.label.empty() ? std::string("run") : point.label) << ": "
      << status_name(traj.status) << " at step " << traj.terminal_step
      << " (t = " << out.terminal_time << ")";
  if (!traj.message.empty()) log << ": " << traj.message;
  log << "\n";
  return out;
}

}  // namespace

std::vector<SweepPoint> sweep_points(const ExperimentConfig &cfg) {
  const SweepSection &sw = cfg.sweep;
  auto axis = [](const std::vector<double> &v) {
    std::vector<std::optional<double>> out(v.begin(), v.end());
    if (out.empty()) out.emplace_back();
    return out;
  };
  const double s0 = sw.quench_strength.empty() ? 0.0 : cfg.model.quench().strength();

  std::vector<SweepPoint> points;
  for (const auto &dt : axis(sw.dt)) {
    for (const auto &eps : axis(sw.epsilon)) {
      for (const auto &zeta : axis(sw.zeta)) {
        for (const auto &qs : axis(sw.quench_strength)) {
          SweepPoint p;
          p.config = cfg;
          p.config.sweep = SweepSection{};
          std::string label;
          auto tag = [&label](const char *name, double v) {
            if (!label.empty()) label += "__";
            label += std::string(name) + "_" + short_number(v);
          };
          if (dt) {
            auto &integ = p.config.dynamics.integrator;
            integ.dt = *dt;
            if (integ.t_max > 0.0 && integ.dt > integ.t_max) {
              throw ConfigError("sweep.dt", "sweep.dt value " + short_number(*dt) +
                                                " exceeds dynamics.integrator.t_max");
            }
            tag("dt", *dt);
          }
          if (eps) {
            std::get<Regularization>(p.config.dynamics.solver).epsilon = *eps;
            tag("epsilon", *eps);
          }
          if (zeta) {
            std::get<Diagonalization>(p.config.dynamics.solver).zeta = *zeta;
            tag("zeta", *zeta);
          }
          if (qs) {
            rescale_quench(p.config.model, *qs / s0);
            tag("quench", *qs);
          }
          p.label = label;
          points.push_back(std::move(p));
        }
      }
    }
  }
  return points;
}

PreparedState prepare_state(const ExperimentConfig &cfg) {
  const int n = cfg.model.n_sites;
  const int m = cfg.rbm.n_hidden(n);
  const bool vb = cfg.rbm.visible_biases;
  PreparedState out;
  if (cfg.dynamics.initial_snapshot) {
    Snapshot snap;
    try {
      snap = read_snapshot(*cfg.dynamics.initial_snapshot);
    } catch (const InputError &e) {
      throw ConfigError("dynamics.initial_snapshot", e.what());
    }
    const auto &p = snap.params;
    if (p.n_visible() != n || p.n_hidden() != m || p.visible_bias != vb) {
      throw ConfigError("dynamics.initial_snapshot",
                        "dynamics.initial_snapshot shape (N=" +
                            std::to_string(p.n_visible()) + ", M=" +
                            std::to_string(p.n_hidden()) +
                            ") does not match the rbm block");
    }
    out.parameters = p;
    return out;
  }
  if (!cfg.prep.enabled) {
    out.parameters = init_random(n, m, cfg.rbm.init_scale, cfg.rbm.seed, vb);
    return out;
  }
  const SpinBasis basis(n);
  const GroundState gs = ground_state(cfg.model.quench().initial(), basis);
  out.ground_energy = gs.energy;
  out.prep = optimize_infidelity(n, m, vb, gs.state, cfg.prep.config);
  out.parameters = out.prep->parameters;
  return out;
}

int exit_code_for(const std::vector<RunOutcome> &runs) {
  bool diverged = false;
  for (const auto &r : runs) {
    if (r.status == RunStatus::kNumericError) return kExitNumeric;
    diverged = diverged || r.status == RunStatus::kDiverged;
  }
  return diverged ? kExitDiverged : kExitOk;
}

ExperimentResult run_experiment(const ExperimentConfig &cfg,
                                const fs::path &output_dir, std::ostream &log) {
  make_directory(output_dir);
  const auto points = sweep_points(cfg);
  write_text(output_dir / "config.json", config_to_json(cfg).dump(2) + "\n");
  EventLog events(output_dir / "events.jsonl", cfg.output.jsonl);
  events.emit({{"event", "config"}, {"config", config_to_json(cfg)}});

  ExperimentResult result;
  PreparedState prepared;
  try {
    prepared = prepare_state(cfg);
  } catch (const NumericError &e) {
    events.emit({{"event", "prep"}, {"status", "numeric_error"},
                 {"message", e.what()}});
    events.emit({{"event", "done"}, {"exit_code", kExitNumeric}});
    log << "prep: numeric_error: " << e.what() << "\n";
    result.exit_code = kExitNumeric;
    return result;
  }
  if (prepared.prep) {
    const PrepResult &pr = *prepared.prep;
    result.prep_infidelity = pr.final_infidelity;
    write_snapshot(output_dir / "prepared.snapshot",
                   Snapshot{pr.parameters, cfg.prep.config.seed, 0, 0.0});
    write_text(output_dir / "prep_history.csv", prep_history_csv(pr));
    events.emit({{"event", "prep"},
                 {"status", "ok"},
                 {"final_infidelity", pr.final_infidelity},
                 {"iterations_used", pr.iterations_used},
                 {"target_infidelity", cfg.prep.config.target_infidelity},
                 {"reached_target",
                  pr.final_infidelity <= cfg.prep.config.target_infidelity},
                 {"ground_energy", *prepared.ground_energy}});
    log << "prep: infidelity " << pr.final_infidelity << " after "
        << pr.iterations_used << " iterations\n";
  }

  for (const auto &point : points) {
    const fs::path dir = point.label.empty() ? output_dir : output_dir / point.label;
    result.runs.push_back(run_point(point, prepared.parameters, dir, events, log));
  }
  result.exit_code = exit_code_for(result.runs);
  events.emit({{"event", "done"}, {"exit_code", result.exit_code}});
  return result;
}

fs::path default_output_dir(const ExperimentConfig &cfg,
                            const fs::path &config_path) {
  const char *env = std::getenv(kOutputRootEnv);
  const fs::path root = (env && *env) ? fs::path(env) : fs::path(".");
  if (cfg.output.directory) return root / *cfg.output.directory;
  return root / "runs" / config_path.stem();
}

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Quench dynamics of RBM neural quantum states", "nqsquench"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  int threads = 0;
  std::optional<std::uint64_t> seed_override;

  auto *run = app.add_subcommand("run", "Run prep and dynamics for a config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--output", output, "Output directory");
  run->add_option("--threads", threads, "Number of OpenMP threads")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed-override", seed_override, "Replace every seed");

  auto *prep = app.add_subcommand("prep", "Run state preparation only");
  prep->add_option("config", config_path, "Experiment config (JSON)")->required();
  prep->add_option("--output", output, "Output directory");
  prep->add_option("--threads", threads, "Number of OpenMP threads")
      ->check(CLI::PositiveNumber);
  prep->add_option("--seed-override", seed_override, "Replace every seed");

  auto *validate = app.add_subcommand("validate", "Check a config and print it");
  validate->add_option("config", config_path, "Experiment config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    ExperimentConfig cfg = load_config(config_path);
    if (seed_override) override_seeds(cfg, *seed_override);
    if (validate->parsed()) {
      sweep_points(cfg);
      out << config_to_json(cfg).dump(2) << "\n";
      return kExitOk;
    }
    const fs::path dir = output.empty() ? default_output_dir(cfg, config_path)
                                        : fs::path(output);
    if (prep->parsed()) {
      if (!cfg.prep.enabled) {
        throw ConfigError("prep.enabled", "prep.enabled is false in " + config_path);
      }
      make_directory(dir);
      PreparedState state;
      try {
        state = prepare_state(cfg);
      } catch (const NumericError &e) {
        err << "nqsquench: prep failed: " << e.what() << "\n";
        return kExitNumeric;
      }
      const PrepResult &pr = *state.prep;
      write_snapshot(dir / "prepared.snapshot",
                     Snapshot{pr.parameters, cfg.prep.config.seed, 0, 0.0});
      write_text(dir / "prep_history.csv", prep_history_csv(pr));
      out << "prep: infidelity " << pr.final_infidelity << " after "
          << pr.iterations_used << " iterations -> "
          << (dir / "prepared.snapshot").string() << "\n";
      return kExitOk;
    }
    const ExperimentResult result = run_experiment(cfg, dir, out);
    out << "output: " << dir.string() << " (exit " << result.exit_code << ")\n";
    return result.exit_code;
  } catch (const ConfigError &e) {
    err << "nqsquench: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError &e) {
    err << "nqsquench: invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CapacityError &e) {
    err << "nqsquench: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError &e) {
    err << "nqsquench: numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception &e) {
    err << "nqsquench: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace nqs
