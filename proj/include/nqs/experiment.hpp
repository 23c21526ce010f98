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


#ifndef NQS_EXPERIMENT_HPP
#define NQS_EXPERIMENT_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nqs/config.hpp"

namespace nqs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitDiverged = 3;

inline constexpr const char *kOutputRootEnv = "NQSQUENCH_OUTPUT_ROOT";

// One point of the sweep's Cartesian product, with the configuration that
// reproduces it on its own (sweep removed, values substituted).
struct SweepPoint {
  std::string label;  // empty when there is no sweep
  ExperimentConfig config;
};

std::vector<SweepPoint> sweep_points(const ExperimentConfig &cfg);

struct PreparedState {
  RbmParameters parameters;
  std::optional<PrepResult> prep;  // set when prep ran
  std::optional<double> ground_energy;
};

// Initial parameters for the dynamics: prep against the exact ground state
// of the pre-quench Hamiltonian, an initial snapshot, or init_random.
PreparedState prepare_state(const ExperimentConfig &cfg);

struct RunOutcome {
  std::string label;
  std::filesystem::path directory;
  RunStatus status = RunStatus::kOk;
  std::int64_t terminal_step = 0;
  double terminal_time = 0.0;
  std::string message;
};

struct ExperimentResult {
  int exit_code = kExitOk;
  std::vector<RunOutcome> runs;
  std::optional<double> prep_infidelity;
};

// Exit code of a set of runs: 2 if any numeric_error, else 3 if any diverged,
// else 0.
int exit_code_for(const std::vector<RunOutcome> &runs);

// Runs prep (if enabled) and the dynamics for every sweep point, writing
// artifacts under `output_dir`. Throws ConfigError for unusable inputs or an
// unwritable output directory.
ExperimentResult run_experiment(const ExperimentConfig &cfg,
                                const std::filesystem::path &output_dir,
                                std::ostream &log);

// Output directory when --output is not given:
// ($NQSQUENCH_OUTPUT_ROOT or ".") / (output.directory or runs/<config stem>).
std::filesystem::path default_output_dir(const ExperimentConfig &cfg,
                                         const std::filesystem::path &config_path);

// nqsquench command line; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

}  // namespace nqs

#endif  // NQS_EXPERIMENT_HPP
