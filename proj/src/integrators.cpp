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

#include "nqs/integrators.hpp"

#include <cmath>
#include <string>

#include "nqs/errors.hpp"

namespace nqs {

namespace {

void check_lengths(const ParameterVector &w, const ParameterVector &f) {
  if (w.size() != f.size()) {
    throw InputError("update has length " + std::to_string(f.size()) +
                     ", parameters have length " + std::to_string(w.size()));
  }
}

ParameterVector finite_or_throw(ParameterVector v, const char *what) {
  if (!v.allFinite()) throw NonFiniteError(std::string(what) + " is not finite");
  return v;
}

ParameterVector evaluate_stage(const UpdateFunction &f_eval,
                               const ParameterVector &w, const char *stage) {
  ParameterVector f;
  try {
    f = f_eval(w);
  } catch (const NonFiniteError &e) {
    throw NonFiniteError(std::string(stage) + ": " + e.what());
  } catch (const NumericError &e) {
    throw NumericError(std::string(stage) + ": " + e.what());
  }
  check_lengths(w, f);
  return f;
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kEuler:
      return "euler";
    case Scheme::kHeun:
      return "heun";
    case Scheme::kTamedEuler:
      return "tamed_euler";
    case Scheme::kTamedHeun:
      return "tamed_heun";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(const std::string &name) {
  for (Scheme s : {Scheme::kEuler, Scheme::kHeun, Scheme::kTamedEuler,
                   Scheme::kTamedHeun}) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

ParameterVector euler_step(const ParameterVector &w, const ParameterVector &f,
                           double dt) {
  check_lengths(w, f);
  return finite_or_throw(w + dt * f, "Euler step");
}

ParameterVector heun_step(const ParameterVector &w, const UpdateFunction &f_eval,
                          double dt) {
  const ParameterVector f0 = evaluate_stage(f_eval, w, "Heun stage 1");
  const ParameterVector predictor =
      finite_or_throw(w + dt * f0, "Heun predictor");
  const ParameterVector f1 = evaluate_stage(f_eval, predictor, "Heun stage 2");
  return finite_or_throw(w + (0.5 * dt) * (f0 + f1), "Heun step");
}

ParameterVector tamed_euler_step(const ParameterVector &w,
                                 const ParameterVector &f, double dt) {
  check_lengths(w, f);
  const double norm = f.norm();
  if (!std::isfinite(norm)) throw NonFiniteError("update is not finite");
  return finite_or_throw(w + (dt / (1.0 + dt * norm)) * f, "tamed Euler step");
}

ParameterVector tamed_heun_step(const ParameterVector &w,
                                const UpdateFunction &f_eval, double dt) {
  const ParameterVector f0 = evaluate_stage(f_eval, w, "tamed Heun stage 1");
  const ParameterVector predictor = tamed_euler_step(w, f0, dt);
  const ParameterVector f1 =
      evaluate_stage(f_eval, predictor, "tamed Heun stage 2");
  const ParameterVector d = (0.5 * dt) * (f0 + f1);
  const double norm = d.norm();
  if (!std::isfinite(norm)) throw NonFiniteError("tamed Heun increment");
  return finite_or_throw(w + d / (1.0 + norm), "tamed Heun step");
}

ParameterVector integrate_step(Scheme scheme, const ParameterVector &w,
                               const UpdateFunction &f_eval, double dt) {
  switch (scheme) {
    case Scheme::kEuler:
      return euler_step(w, evaluate_stage(f_eval, w, "Euler stage"), dt);
    case Scheme::kHeun:
      return heun_step(w, f_eval, dt);
    case Scheme::kTamedEuler:
      return tamed_euler_step(w, evaluate_stage(f_eval, w, "tamed Euler stage"),
                              dt);
    case Scheme::kTamedHeun:
      return tamed_heun_step(w, f_eval, dt);
  }
  throw InputError("unknown integration scheme");
}

}  // namespace nqs
