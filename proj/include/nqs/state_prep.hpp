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

#ifndef NQS_STATE_PREP_HPP
#define NQS_STATE_PREP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nqs/rbm.hpp"

namespace nqs {

enum class Optimizer { kPlainGradient, kAdaptiveMoment };

std::string optimizer_name(Optimizer opt);
std::optional<Optimizer> parse_optimizer(const std::string &name);

struct PrepConfig {
  int max_iters = 5000;
  double learning_rate = 0.01;
  double target_infidelity = 1e-4;
  Optimizer optimizer = Optimizer::kAdaptiveMoment;
  std::uint64_t seed = 0;
  double init_scale = 0.01;

  void validate() const;
};

struct PrepResult {
  RbmParameters parameters;  // best seen
  double final_infidelity = 1.0;
  int iterations_used = 0;
  std::vector<std::pair<int, double>> history;  // (iteration, infidelity)
};

// 1 - |<phi|psi>|^2 / (<phi|phi><psi|psi>), clamped to [0, 1].
double infidelity(const ComplexVector &psi, const ComplexVector &phi);

// dI/dW_k^* (Wirtinger convention) of the infidelity between the RBM state
// and `target`, by exact summation:
//
//   -|<phi|psi>|^2 / <psi|psi> * ( <O_k^* phi/psi> / <phi/psi> - <O_k^*> )
//
// with Born weights of psi. Throws NumericError when <phi|psi> == 0.
ComplexVector infidelity_gradient(const RbmParameters &p,
                                  const ComplexVector &target,
                                  const SpinBasis &basis);

// Minimizes the infidelity starting from init_random(cfg.seed,
// cfg.init_scale); stops when the target is reached or after max_iters
// updates, and returns the best parameters seen.
PrepResult optimize_infidelity(int n_visible, int n_hidden, bool visible_bias,
                               const ComplexVector &target,
                               const PrepConfig &cfg);

// Same, starting from the given parameters.
PrepResult optimize_infidelity(const RbmParameters &start,
                               const ComplexVector &target,
                               const PrepConfig &cfg);

}  // namespace nqs

#endif  // NQS_STATE_PREP_HPP
