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

#ifndef NQS_ESTIMATORS_HPP
#define NQS_ESTIMATORS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nqs/hamiltonian.hpp"
#include "nqs/rbm.hpp"

namespace nqs {

// One time step's linear problem S f = -i F, together with the energy.
//
//   S_kl = <O_k^* O_l> - <O_k^*><O_l>
//   F_k  = <O_k^* E_loc> - <O_k^*><E_loc>
//
// Averages are over the Born distribution of the variational state, either
// exactly (sample_count == 0) or over Monte Carlo samples.
struct TdvpProblem {
  ComplexMatrix s;
  ComplexVector f;
  Complex energy{0.0, 0.0};
  double energy_variance = 0.0;
  std::size_t sample_count = 0;

  // sqrt(var / n) for sampled estimates, zero for exact summation.
  double energy_standard_error() const;
};

struct SampleSet {
  std::vector<SpinConfig> samples;  // ordered by chain, then by time
  int n_chains = 1;
  std::size_t burn_in = 0;  // proposals discarded per chain
  std::size_t stride = 1;   // proposals between recorded samples
  double acceptance_rate = 0.0;
  std::uint64_t seed = 0;
};

struct SamplerConfig {
  std::size_t n_samples = 1000;
  int n_chains = 1;
  // Defaults: stride = N (one sweep), burn-in = 10% of the sampling sweeps.
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> stride;
  std::uint64_t seed = 0;
};

// sum_{s'} <s|H|s'> psi(s') / psi(s). Throws NonFiniteError carrying the
// configuration when the ratio overflows.
Complex local_energy(const SpinHamiltonian &h, const RbmParameters &p,
                     const SpinConfig &sigma);

// Exact summation over the whole basis, using the two-pass (centered)
// covariance form.
TdvpProblem exact_qgt_force(const SpinHamiltonian &h, const RbmParameters &p,
                            const SpinBasis &basis);

// Single-spin-flip Metropolis sampling of |psi|^2. Chains start from
// independent uniform configurations, each on its own RNG substream, and are
// concatenated in chain order.
SampleSet metropolis_sample(const RbmParameters &p, std::size_t n_samples,
                            int n_chains, std::size_t burn_in,
                            std::size_t stride, std::uint64_t seed);
SampleSet metropolis_sample(const RbmParameters &p, const SamplerConfig &cfg);

// Same estimator as exact_qgt_force with uniform weights over the samples;
// S is Hermitized as (S + S^dagger) / 2.
TdvpProblem mc_qgt_force(const SpinHamiltonian &h, const RbmParameters &p,
                         const SampleSet &samples);

// <psi|O|psi> / <psi|psi> for any operator expressible as a SpinHamiltonian.
Complex expectation_observable(const SpinHamiltonian &op,
                               const RbmParameters &p, const SpinBasis &basis);
Complex expectation_observable(const SpinHamiltonian &op,
                               const RbmParameters &p,
                               const SampleSet &samples);

}  // namespace nqs

#endif  // NQS_ESTIMATORS_HPP
