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

#ifndef NQS_RBM_HPP
#define NQS_RBM_HPP

#include <cstdint>

#include "nqs/hamiltonian.hpp"
#include "nqs/types.hpp"

namespace nqs {

// Complex restricted Boltzmann machine
//
//   log psi(s) = sum_i a_i s_i + sum_j log(2 cosh(theta_j)),
//   theta_j    = b_j + sum_i w_ji s_i,
//
// with N visible spins and M hidden units. The flattened parameter layout is
// [a_0 .. a_{N-1}, b_0 .. b_{M-1}, w_00, w_01, .., w_{M-1,N-1}] (w row-major).
// Without visible biases the a block is absent and a is identically zero.
struct RbmParameters {
  ComplexVector a;
  ComplexVector b;
  ComplexMatrix w;  // M x N
  bool visible_bias = true;

  static RbmParameters zeros(int n_visible, int n_hidden,
                             bool visible_bias = true);

  int n_visible() const { return static_cast<int>(w.cols()); }
  int n_hidden() const { return static_cast<int>(w.rows()); }
  Eigen::Index n_params() const;

  ParameterVector flatten() const;
  // Inverse of flatten() for the same shape; throws InputError on length
  // mismatch or non-finite entries.
  RbmParameters unflatten(const ParameterVector &values) const;

  // Checks shapes and finiteness.
  void validate() const;
};

Eigen::Index rbm_param_count(int n_visible, int n_hidden, bool visible_bias);

// log(2 cosh z), free of overflow for large |Re z|.
Complex log2cosh(Complex z);

ComplexVector hidden_angles(const RbmParameters &p, const SpinConfig &sigma);

Complex log_amplitude(const RbmParameters &p, const SpinConfig &sigma);

// O_k = d log psi / d W_k in the flattened parameter layout.
ComplexVector log_derivatives(const RbmParameters &p, const SpinConfig &sigma);

// Normalized amplitudes over the full basis.
ComplexVector dense_state(const RbmParameters &p, const SpinBasis &basis);

// log psi for every basis configuration.
ComplexVector log_amplitudes(const RbmParameters &p, const SpinBasis &basis);

// Real and imaginary parts i.i.d. N(0, scale^2). Deterministic in the seed on
// every platform: mt19937_64 with a local Box-Muller transform.
RbmParameters init_random(int n_visible, int n_hidden, double scale,
                          std::uint64_t seed, bool visible_bias = true);

}  // namespace nqs

#endif  // NQS_RBM_HPP
