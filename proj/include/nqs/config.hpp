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

#ifndef NQS_CONFIG_HPP
#define NQS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nqs/dynamics.hpp"
#include "nqs/state_prep.hpp"

namespace nqs {

struct ModelConfig {
  std::string type = "tfim";  // tfim | heisenberg | custom-bonds
  int n_sites = 0;
  Boundary boundary = Boundary::kOpen;
  // Coupling blocks as written in the document, with defaults filled in.
  nlohmann::json initial;
  nlohmann::json final;

  QuenchPair quench() const;
};

struct RbmConfig {
  std::optional<double> alpha;
  std::optional<int> hidden;
  bool visible_biases = true;
  double init_scale = 0.01;
  std::uint64_t seed = 1;

  int n_hidden(int n_sites) const;
};

struct PrepSection {
  bool enabled = false;
  PrepConfig config;
};

struct DynamicsSection {
  IntegratorConfig integrator;
  SolverStrategy solver = Diagonalization{};
  EstimatorConfig estimator;
  bool ed_compare = false;
  std::int64_t snapshot_stride = 0;
  std::vector<std::string> observables;  // sx | sz | szsz
  std::optional<std::string> initial_snapshot;
};

struct SweepSection {
  std::vector<double> dt;
  std::vector<double> epsilon;
  std::vector<double> zeta;
  std::vector<double> quench_strength;

  bool empty() const {
    return dt.empty() && epsilon.empty() && zeta.empty() &&
           quench_strength.empty();
  }
};

struct OutputSection {
  std::optional<std::string> directory;
  bool csv = true;
  bool jsonl = true;
};

struct ExperimentConfig {
  ModelConfig model;
  RbmConfig rbm;
  PrepSection prep;
  DynamicsSection dynamics;
  SweepSection sweep;
  OutputSection output;
};

// Parses and validates a JSON document. Unknown keys and schema violations
// raise ConfigError naming the offending path, e.g.
// "dynamics.solver.epsilon must be > 0".
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

// Effective configuration with all defaults spelled out; parse_config of the
// result reproduces the same configuration.
nlohmann::json config_to_json(const ExperimentConfig &cfg);

// Built-in observables: "sx" and "sz" (site-averaged magnetizations) and
// "szsz" (bond-averaged Z Z correlator of the model's bonds).
Observable make_observable(const std::string &name, const ModelConfig &model);

// Replaces every seed in the configuration.
void override_seeds(ExperimentConfig &cfg, std::uint64_t seed);

}  // namespace nqs

#endif  // NQS_CONFIG_HPP
