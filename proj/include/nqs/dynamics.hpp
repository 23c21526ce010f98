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

#ifndef NQS_DYNAMICS_HPP
#define NQS_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nqs/estimators.hpp"
#include "nqs/integrators.hpp"
#include "nqs/snapshot.hpp"
#include "nqs/solvers.hpp"

namespace nqs {

struct IntegratorConfig {
  Scheme scheme = Scheme::kHeun;
  double dt = 1e-3;
  double t_max = 1.0;
  double blow_up_norm = 1e6;

  void validate() const;
  // round(t_max / dt)
  std::int64_t n_steps() const;
};

enum class EstimatorKind { kExact, kMonteCarlo };

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::kExact;
  SamplerConfig sampler;  // used for kMonteCarlo
};

struct Observable {
  std::string name;
  SpinHamiltonian op;
};

enum class RunStatus { kOk, kDiverged, kNumericError };

std::string status_name(RunStatus status);

struct TrajectoryRecord {
  std::int64_t step = 0;
  double time = 0.0;
  Complex energy{0.0, 0.0};
  double energy_variance = 0.0;
  double update_norm = 0.0;  // 2-norm of f
  double param_norm = 0.0;   // max-norm of the parameters
  double residual = 0.0;
  std::optional<Eigen::Index> rank_kept;
  double s_eig_min = 0.0;
  double s_eig_max = 0.0;
  std::optional<double> fidelity_ed;
  std::vector<double> observables;  // real parts, in observable order
  RunStatus status = RunStatus::kOk;
};

struct Trajectory {
  std::vector<std::string> observable_names;
  std::vector<TrajectoryRecord> records;
  RunStatus status = RunStatus::kOk;
  std::int64_t terminal_step = 0;
  std::string message;  // reason for a non-ok terminal record
  RbmParameters final_params;
};

struct DynamicsOptions {
  bool ed_compare = false;
  std::vector<Observable> observables;
  // Snapshot every k steps (0 disables); handed to on_snapshot.
  std::int64_t snapshot_stride = 0;
  std::function<void(const Snapshot &)> on_snapshot;
  std::uint64_t seed = 0;  // recorded in snapshots
};

// Evolves p0 under the post-quench Hamiltonian. Every integrator stage
// re-estimates and re-solves the TDVP problem. The run stops at t_max, or
// earlier with a diverged record once the parameter max-norm exceeds
// blow_up_norm or a non-finite value appears. Other numerical failures end the
// run with a numeric_error record. With ed_compare, the fidelity is taken
// against exp(-i H t) applied to the initial RBM state.
Trajectory run_dynamics(const RbmParameters &p0, const QuenchPair &quench,
                        const SolverStrategy &strategy,
                        const IntegratorConfig &integ,
                        const EstimatorConfig &estimator,
                        const DynamicsOptions &options = {});

// |<a|b>|^2 / (<a|a><b|b>)
double fidelity(const ComplexVector &a, const ComplexVector &b);

}  // namespace nqs

#endif  // NQS_DYNAMICS_HPP
