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

#include "nqs/state_prep.hpp"

#include <algorithm>
#include <cmath>

#include "nqs/errors.hpp"

namespace nqs {

std::string optimizer_name(Optimizer opt) {
  return opt == Optimizer::kPlainGradient ? "plain_gradient" : "adam";
}

std::optional<Optimizer> parse_optimizer(const std::string &name) {
  if (name == "plain_gradient" || name == "sgd") return Optimizer::kPlainGradient;
  if (name == "adam" || name == "adaptive_moment") {
    return Optimizer::kAdaptiveMoment;
  }
  return std::nullopt;
}

void PrepConfig::validate() const {
  if (max_iters < 0) throw InputError("max_iters must be >= 0");
  if (!(learning_rate > 0.0)) throw InputError("learning_rate must be > 0");
  if (!(target_infidelity > 0.0 && target_infidelity < 1.0)) {
    throw InputError("target_infidelity must lie in (0, 1)");
  }
  if (!(init_scale > 0.0)) throw InputError("init_scale must be > 0");
}

double infidelity(const ComplexVector &psi, const ComplexVector &phi) {
  if (psi.size() != phi.size()) {
    throw InputError("infidelity of vectors with different lengths");
  }
  const double npsi = psi.squaredNorm();
  const double nphi = phi.squaredNorm();
  if (npsi == 0.0 || nphi == 0.0) {
    throw InputError("infidelity of a zero vector is undefined");
  }
  const double overlap = std::norm(phi.dot(psi)) / (npsi * nphi);
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

namespace {

struct LossAndGradient {
  double loss = 1.0;
  ComplexVector gradient;
};

LossAndGradient evaluate(const RbmParameters &p, const ComplexVector &target,
                         const SpinBasis &basis, bool with_gradient) {
  if (target.size() != static_cast<Eigen::Index>(basis.dim())) {
    throw InputError("target length does not match the basis dimension");
  }
  const ComplexVector logs = log_amplitudes(p, basis);
  const double shift = logs.real().maxCoeff();
  const ComplexVector psi = (logs.array() - shift).exp();
  const double z = psi.squaredNorm();
  const double nphi = target.squaredNorm();
  const Complex ov = target.dot(psi);  // <phi|psi>

  LossAndGradient out;
  out.loss = std::clamp(1.0 - std::norm(ov) / (z * nphi), 0.0, 1.0);
  if (!with_gradient) return out;
  if (ov == Complex(0.0, 0.0)) {
    throw NumericError(
        "RBM state is orthogonal to the target; the infidelity gradient "
        "vanishes identically, reseed the initial parameters");
  }

  const auto dim = static_cast<Eigen::Index>(basis.dim());
  ComplexMatrix o(dim, p.n_params());
#pragma omp parallel for schedule(static)
  for (Eigen::Index s = 0; s < dim; ++s) {
    o.row(s) = log_derivatives(p, basis.config(static_cast<std::size_t>(s)))
                   .transpose();
  }
  const ComplexVector rho = (psi.cwiseAbs2() / z).cast<Complex>();
  const ComplexVector o_conj_mean = o.adjoint() * rho;
  const ComplexVector weighted = psi.conjugate().cwiseProduct(target);
  const ComplexVector o_conj_target =
      (o.adjoint() * weighted) / std::conj(ov);
  out.gradient = -(std::norm(ov) / (z * nphi)) * (o_conj_target - o_conj_mean);
  return out;
}

}  // namespace

ComplexVector infidelity_gradient(const RbmParameters &p,
                                  const ComplexVector &target,
                                  const SpinBasis &basis) {
  return evaluate(p, target, basis, true).gradient;
}

PrepResult optimize_infidelity(int n_visible, int n_hidden, bool visible_bias,
                               const ComplexVector &target,
                               const PrepConfig &cfg) {
  cfg.validate();
  return optimize_infidelity(
      init_random(n_visible, n_hidden, cfg.init_scale, cfg.seed, visible_bias),
      target, cfg);
}

PrepResult optimize_infidelity(const RbmParameters &start,
                               const ComplexVector &target,
                               const PrepConfig &cfg) {
  cfg.validate();
  start.validate();
  const SpinBasis basis(start.n_visible());

  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kFloor = 1e-8;

  RbmParameters current = start;
  ParameterVector w = start.flatten();
  const Eigen::Index n = w.size();
  // Adam moments on the real and imaginary parts.
  RealVector m = RealVector::Zero(2 * n);
  RealVector v = RealVector::Zero(2 * n);

  PrepResult result;
  result.parameters = start;
  LossAndGradient lg = evaluate(current, target, basis, true);
  result.final_infidelity = lg.loss;
  result.history.emplace_back(0, lg.loss);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    if (result.final_infidelity <= cfg.target_infidelity) break;
    // Gradient w.r.t. (Re W, Im W) is (2 Re g, 2 Im g).
    RealVector grad(2 * n);
    grad.head(n) = 2.0 * lg.gradient.real();
    grad.tail(n) = 2.0 * lg.gradient.imag();
    RealVector delta;
    if (cfg.optimizer == Optimizer::kAdaptiveMoment) {
      m = kBeta1 * m + (1.0 - kBeta1) * grad;
      v = kBeta2 * v + (1.0 - kBeta2) * grad.cwiseAbs2();
      const double c1 = 1.0 - std::pow(kBeta1, it);
      const double c2 = 1.0 - std::pow(kBeta2, it);
      delta = -cfg.learning_rate * (m / c1).array() /
              ((v / c2).array().sqrt() + kFloor);
    } else {
      delta = -cfg.learning_rate * grad;
    }
    w.real() += delta.head(n);
    w.imag() += delta.tail(n);
    if (!w.allFinite()) {
      throw NumericError("infidelity optimization produced non-finite "
                         "parameters at iteration " + std::to_string(it));
    }
    current = start.unflatten(w);
    lg = evaluate(current, target, basis, true);
    if (!std::isfinite(lg.loss) || !lg.gradient.allFinite()) {
      throw NumericError("non-finite infidelity at iteration " +
                         std::to_string(it));
    }
    result.iterations_used = it;
    result.history.emplace_back(it, lg.loss);
    if (lg.loss < result.final_infidelity) {
      result.final_infidelity = lg.loss;
      result.parameters = current;
    }
  }
  return result;
}

}  // namespace nqs
