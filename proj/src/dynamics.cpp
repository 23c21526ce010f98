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

#include "nqs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "nqs/errors.hpp"
#include "nqs/exact.hpp"
#include "nqs/random.hpp"

namespace nqs {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("dt must be > 0");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw InputError("t_max must be finite and >= 0");
  }
  if (t_max > 0.0 && dt > t_max) throw InputError("dt must not exceed t_max");
  if (!(blow_up_norm > 0.0)) throw InputError("blow_up_norm must be > 0");
}

std::int64_t IntegratorConfig::n_steps() const {
  return static_cast<std::int64_t>(std::llround(t_max / dt));
}

std::string status_name(RunStatus status) {
  switch (status) {
    case RunStatus::kOk:
      return "ok";
    case RunStatus::kDiverged:
      return "diverged";
    case RunStatus::kNumericError:
      return "numeric_error";
  }
  return "unknown";
}

double fidelity(const ComplexVector &a, const ComplexVector &b) {
  const double overlap = std::norm(a.dot(b));
  return std::clamp(overlap / (a.squaredNorm() * b.squaredNorm()), 0.0, 1.0);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One estimate + solve at a parameter point.
struct Evaluation {
  TdvpProblem problem;
  SolverReport report;
  std::optional<SampleSet> samples;
};

class Evaluator {
 public:
  Evaluator(const RbmParameters &shape, const SpinHamiltonian &h,
            const SolverStrategy &strategy, const EstimatorConfig &estimator)
      : shape_(shape), h_(h), strategy_(strategy), estimator_(estimator) {
    if (estimator_.kind == EstimatorKind::kExact) {
      basis_ = std::make_unique<SpinBasis>(h.n_sites());
    }
  }

  Evaluation operator()(const ParameterVector &w) {
    if (!w.allFinite()) throw NonFiniteError("parameters are not finite");
    const RbmParameters p = shape_.unflatten(w);
    Evaluation ev;
    if (basis_) {
      ev.problem = exact_qgt_force(h_, p, *basis_);
    } else {
      SamplerConfig cfg = estimator_.sampler;
      // Each evaluation draws from its own deterministic substream.
      cfg.seed = splitmix64(estimator_.sampler.seed ^ splitmix64(counter_++));
      ev.samples = metropolis_sample(p, cfg);
      ev.problem = mc_qgt_force(h_, p, *ev.samples);
    }
    ev.report = solve(ev.problem, strategy_);
    return ev;
  }

 private:
  const RbmParameters &shape_;
  const SpinHamiltonian &h_;
  const SolverStrategy &strategy_;
  const EstimatorConfig &estimator_;
  std::unique_ptr<SpinBasis> basis_;
  std::uint64_t counter_ = 0;
};

void mark_unevaluated(TrajectoryRecord &rec) {
  rec.energy = Complex(kNaN, kNaN);
  rec.energy_variance = rec.update_norm = rec.residual = kNaN;
  rec.s_eig_min = rec.s_eig_max = kNaN;
}

double max_norm(const ParameterVector &w) {
  return w.size() ? w.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

Trajectory run_dynamics(const RbmParameters &p0, const QuenchPair &quench,
                        const SolverStrategy &strategy,
                        const IntegratorConfig &integ,
                        const EstimatorConfig &estimator,
                        const DynamicsOptions &options) {
  integ.validate();
  p0.validate();
  const SpinHamiltonian &h = quench.final();
  if (h.n_sites() != p0.n_visible()) {
    throw InputError("RBM and Hamiltonian disagree on the number of sites");
  }

  Evaluator evaluate(p0, h, strategy, estimator);
  std::unique_ptr<SpinBasis> ed_basis;
  std::unique_ptr<ExactPropagator> propagator;
  ComplexVector psi0;
  if (options.ed_compare) {
    ed_basis = std::make_unique<SpinBasis>(h.n_sites());
    propagator = std::make_unique<ExactPropagator>(h, *ed_basis);
    psi0 = dense_state(p0, *ed_basis);
  }
  std::unique_ptr<SpinBasis> obs_basis;
  if (!options.observables.empty() && estimator.kind == EstimatorKind::kExact) {
    obs_basis = std::make_unique<SpinBasis>(h.n_sites());
  }

  Trajectory traj;
  for (const auto &o : options.observables) traj.observable_names.push_back(o.name);

  const std::int64_t n_steps = integ.n_steps();
  ParameterVector w = p0.flatten();
  ParameterVector last_finite = w;

  auto terminate = [&](TrajectoryRecord rec, RunStatus status,
                       const std::string &why) {
    rec.status = status;
    traj.records.push_back(std::move(rec));
    traj.status = status;
    traj.message = why;
  };

  for (std::int64_t step = 0;; ++step) {
    TrajectoryRecord rec;
    rec.step = step;
    rec.time = static_cast<double>(step) * integ.dt;
    rec.param_norm = max_norm(w);
    mark_unevaluated(rec);

    if (!w.allFinite() || !(rec.param_norm <= integ.blow_up_norm)) {
      terminate(std::move(rec), RunStatus::kDiverged,
                "parameter max-norm exceeded the blow-up threshold");
      break;
    }

    last_finite = w;
    Evaluation ev;
    const RbmParameters p = p0.unflatten(w);
    try {
      ev = evaluate(w);
      rec.energy = ev.problem.energy;
      rec.energy_variance = ev.problem.energy_variance;
      rec.update_norm = ev.report.update.norm();
      rec.residual = ev.report.residual;
      rec.rank_kept = ev.report.rank_kept;
      rec.s_eig_min = ev.report.spectrum_min;
      rec.s_eig_max = ev.report.spectrum_max;
      if (propagator) {
        rec.fidelity_ed = fidelity(propagator->evolve(psi0, rec.time),
                                   dense_state(p, *ed_basis));
      }
      for (const auto &o : options.observables) {
        const Complex v = obs_basis ? expectation_observable(o.op, p, *obs_basis)
                                    : expectation_observable(o.op, p, *ev.samples);
        rec.observables.push_back(v.real());
      }
    } catch (const NonFiniteError &e) {
      terminate(std::move(rec), RunStatus::kDiverged, e.what());
      break;
    } catch (const NumericError &e) {
      terminate(std::move(rec), RunStatus::kNumericError, e.what());
      break;
    }

    if (options.on_snapshot && options.snapshot_stride > 0 &&
        step % options.snapshot_stride == 0) {
      options.on_snapshot(Snapshot{p, options.seed, step, rec.time});
    }
    traj.records.push_back(std::move(rec));
    if (step == n_steps) break;

    // The first stage reuses the evaluation that produced the record.
    const ParameterVector f0 = ev.report.update;
    bool first = true;
    UpdateFunction f_eval = [&](const ParameterVector &x) -> ParameterVector {
      if (first) {
        first = false;
        return f0;
      }
      return evaluate(x).report.update;
    };
    try {
      w = integrate_step(integ.scheme, w, f_eval, integ.dt);
    } catch (const NonFiniteError &e) {
      TrajectoryRecord fail;
      fail.step = step + 1;
      fail.time = static_cast<double>(step + 1) * integ.dt;
      fail.param_norm = std::numeric_limits<double>::infinity();
      mark_unevaluated(fail);
      terminate(std::move(fail), RunStatus::kDiverged, e.what());
      break;
    } catch (const NumericError &e) {
      TrajectoryRecord fail;
      fail.step = step + 1;
      fail.time = static_cast<double>(step + 1) * integ.dt;
      fail.param_norm = max_norm(w);
      mark_unevaluated(fail);
      terminate(std::move(fail), RunStatus::kNumericError, e.what());
      break;
    }
  }

  traj.terminal_step = traj.records.back().step;
  traj.final_params = p0.unflatten(last_finite);
  return traj;
}

}  // namespace nqs
