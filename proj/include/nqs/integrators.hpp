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

#ifndef NQS_INTEGRATORS_HPP
#define NQS_INTEGRATORS_HPP

#include <functional>
#include <optional>
#include <string>

#include "nqs/types.hpp"

namespace nqs {

// Evaluates the update function f(w) = dw/dt.
using UpdateFunction = std::function<ParameterVector(const ParameterVector &)>;

enum class Scheme { kEuler, kHeun, kTamedEuler, kTamedHeun };

std::string scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(const std::string &name);

// w + dt f
ParameterVector euler_step(const ParameterVector &w, const ParameterVector &f,
                           double dt);

// Predictor w~ = w + dt f(w), result w + dt/2 (f(w) + f(w~)). Calls f_eval
// exactly twice; a failure is rethrown tagged with the stage.
ParameterVector heun_step(const ParameterVector &w, const UpdateFunction &f_eval,
                          double dt);

// w + dt f / (1 + dt ||f||). The increment norm is dt||f|| / (1 + dt||f||),
// which is always below one.
ParameterVector tamed_euler_step(const ParameterVector &w,
                                 const ParameterVector &f, double dt);

// Heun with a tamed predictor; the combined increment d is replaced by
// d / (1 + ||d||).
ParameterVector tamed_heun_step(const ParameterVector &w,
                                const UpdateFunction &f_eval, double dt);

// One step of `scheme`. f_eval is called once for the Euler variants and twice
// for the Heun variants, first at w.
ParameterVector integrate_step(Scheme scheme, const ParameterVector &w,
                               const UpdateFunction &f_eval, double dt);

}  // namespace nqs

#endif  // NQS_INTEGRATORS_HPP
