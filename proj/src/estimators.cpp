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

#include "nqs/estimators.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "nqs/errors.hpp"
#include "nqs/random.hpp"

namespace nqs {

namespace {

std::string describe(const SpinConfig &sigma) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    out << (i ? "," : "") << (sigma(i) > 0 ? "+1" : "-1");
  }
  out << ')';
  return out.str();
}

void check_shapes(const SpinHamiltonian &h, const RbmParameters &p) {
  if (h.n_sites() != p.n_visible()) {
    throw InputError("Hamiltonian acts on " + std::to_string(h.n_sites()) +
                     " sites, RBM has " + std::to_string(p.n_visible()));
  }
}

// Rows of the centered log-derivative matrix and the matching estimator
// outputs, shared by the exact and sampled paths.
TdvpProblem assemble(const ComplexMatrix &o_weighted,
                     const ComplexVector &residual_weighted, Complex energy,
                     double variance) {
  TdvpProblem prob;
  prob.s = o_weighted.adjoint() * o_weighted;
  prob.f = o_weighted.adjoint() * residual_weighted;
  prob.energy = energy;
  prob.energy_variance = std::max(variance, 0.0);
  return prob;
}

}  // namespace

double TdvpProblem::energy_standard_error() const {
  if (sample_count == 0) return 0.0;
  return std::sqrt(energy_variance / static_cast<double>(sample_count));
}

Complex local_energy(const SpinHamiltonian &h, const RbmParameters &p,
                     const SpinConfig &sigma) {
  check_shapes(h, p);
  const Complex log_psi = log_amplitude(p, sigma);
  Complex out = 0.0;
  for (const auto &el : apply_hamiltonian_row(h, sigma)) {
    const Complex ratio = std::exp(log_amplitude(p, el.sigma) - log_psi);
    out += std::conj(el.amplitude) * ratio;
  }
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
    throw NonFiniteError("local energy is not finite at configuration " +
                         describe(sigma));
  }
  return out;
}

TdvpProblem exact_qgt_force(const SpinHamiltonian &h, const RbmParameters &p,
                            const SpinBasis &basis) {
  check_shapes(h, p);
  const ComplexVector logs = log_amplitudes(p, basis);
  if (!logs.allFinite()) {
    throw NonFiniteError("log-amplitudes are not finite");
  }
  const double shift = logs.real().maxCoeff();
  const ComplexVector psi = (logs.array() - shift).exp();
  const double z = psi.squaredNorm();
  const RealVector rho = psi.cwiseAbs2() / z;

  const auto dim = static_cast<Eigen::Index>(basis.dim());
  const Eigen::Index n_par = p.n_params();
  ComplexMatrix o(dim, n_par);
#pragma omp parallel for schedule(static)
  for (Eigen::Index s = 0; s < dim; ++s) {
    o.row(s) = log_derivatives(p, basis.config(static_cast<std::size_t>(s)))
                   .transpose();
  }

  // E_loc(s) rho(s) = conj(psi(s)) (H psi)(s) / Z stays finite even where
  // psi(s) underflows.
  const ComplexVector h_psi = apply_hamiltonian(h, basis, psi);
  const Complex energy = psi.dot(h_psi) / z;
  const ComplexVector residual = h_psi - energy * psi;
  const double variance = residual.squaredNorm() / z;

  const Eigen::RowVectorXcd o_mean = rho.cast<Complex>().transpose() * o;
  ComplexMatrix o_weighted = o.rowwise() - o_mean;
  o_weighted.array().colwise() *= rho.cwiseSqrt().cast<Complex>().array();

  // sqrt(rho) conj(O_c) sqrt(rho) (E - <E>) with sqrt(rho) = |psi| / sqrt(Z):
  // the phases of psi cancel in conj(psi) * residual / |psi|.
  ComplexVector residual_weighted(dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    const double mag = std::abs(psi(s));
    residual_weighted(s) =
        mag > 0.0 ? std::conj(psi(s)) * residual(s) / (mag * std::sqrt(z))
                  : Complex(0.0, 0.0);
  }

  TdvpProblem prob = assemble(o_weighted, residual_weighted, energy, variance);
  if (!prob.s.allFinite() || !prob.f.allFinite() ||
      !std::isfinite(prob.energy.real()) || !std::isfinite(prob.energy.imag())) {
    throw NonFiniteError("exact TDVP problem is not finite");
  }
  const double herm_err = (prob.s - prob.s.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-10 * std::max(1.0, prob.s.cwiseAbs().maxCoeff())) {
    throw NumericError("exact S matrix is not Hermitian (deviation " +
                       std::to_string(herm_err) + ")");
  }
  // Remove the rounding-level asymmetry left by the product.
  prob.s = prob.s.selfadjointView<Eigen::Lower>();
  return prob;
}

SampleSet metropolis_sample(const RbmParameters &p, std::size_t n_samples,
                            int n_chains, std::size_t burn_in,
                            std::size_t stride, std::uint64_t seed) {
  if (n_chains < 1) throw InputError("need at least one Markov chain");
  if (n_samples == 0 || n_samples % static_cast<std::size_t>(n_chains) != 0) {
    throw InputError("number of samples (" + std::to_string(n_samples) +
                     ") must be a positive multiple of the chain count (" +
                     std::to_string(n_chains) + ")");
  }
  if (stride == 0) throw InputError("sampling stride must be >= 1");
  const int n = p.n_visible();
  const std::size_t per_chain = n_samples / static_cast<std::size_t>(n_chains);

  std::vector<std::vector<SpinConfig>> chains(n_chains);
  std::vector<std::size_t> accepted(n_chains, 0);

#pragma omp parallel for schedule(static)
  for (int c = 0; c < n_chains; ++c) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(c));
    SpinConfig sigma(n);
    for (int i = 0; i < n; ++i) sigma(i) = rng.uniform() < 0.5 ? -1.0 : 1.0;
    ComplexVector theta = hidden_angles(p, sigma);

    auto &out = chains[c];
    out.reserve(per_chain);
    const std::size_t total = burn_in + per_chain * stride;
    for (std::size_t step = 1; step <= total; ++step) {
      const auto i = static_cast<Eigen::Index>(rng.below(n));
      const double s = sigma(i);
      const ComplexVector theta_new = theta - 2.0 * s * p.w.col(i);
      Complex delta = -2.0 * s * p.a(i);
      for (Eigen::Index j = 0; j < theta.size(); ++j) {
        delta += log2cosh(theta_new(j)) - log2cosh(theta(j));
      }
      const double log_ratio = 2.0 * delta.real();
      if (log_ratio >= 0.0 || rng.uniform() < std::exp(log_ratio)) {
        sigma(i) = -s;
        theta = theta_new;
        ++accepted[c];
      }
      if (step > burn_in && (step - burn_in) % stride == 0) {
        out.push_back(sigma);
      }
    }
  }

  SampleSet set;
  set.n_chains = n_chains;
  set.burn_in = burn_in;
  set.stride = stride;
  set.seed = seed;
  set.samples.reserve(n_samples);
  std::size_t total_accepted = 0;
  for (int c = 0; c < n_chains; ++c) {
    for (auto &s : chains[c]) set.samples.push_back(std::move(s));
    total_accepted += accepted[c];
  }
  const double proposals =
      static_cast<double>(n_chains) *
      static_cast<double>(burn_in + per_chain * stride);
  set.acceptance_rate = static_cast<double>(total_accepted) / proposals;
  return set;
}

SampleSet metropolis_sample(const RbmParameters &p, const SamplerConfig &cfg) {
  if (cfg.n_chains < 1) throw InputError("need at least one Markov chain");
  const std::size_t stride =
      cfg.stride.value_or(static_cast<std::size_t>(p.n_visible()));
  const std::size_t per_chain =
      cfg.n_samples / static_cast<std::size_t>(cfg.n_chains);
  const std::size_t burn_in =
      cfg.burn_in.value_or((per_chain * stride + 9) / 10);
  return metropolis_sample(p, cfg.n_samples, cfg.n_chains, burn_in, stride,
                           cfg.seed);
}

TdvpProblem mc_qgt_force(const SpinHamiltonian &h, const RbmParameters &p,
                         const SampleSet &samples) {
  check_shapes(h, p);
  const auto n = static_cast<Eigen::Index>(samples.samples.size());
  if (n == 0) throw InputError("sample set is empty");
  ComplexMatrix o(n, p.n_params());
  ComplexVector e_loc(n);
  // Errors inside the parallel region are collected and rethrown in order.
  std::vector<std::string> errors(static_cast<std::size_t>(n));
  bool failed = false;
#pragma omp parallel for schedule(static) reduction(|| : failed)
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto &sigma = samples.samples[static_cast<std::size_t>(s)];
    try {
      o.row(s) = log_derivatives(p, sigma).transpose();
      e_loc(s) = local_energy(h, p, sigma);
    } catch (const NonFiniteError &e) {
      errors[static_cast<std::size_t>(s)] = e.what();
      failed = true;
    }
  }
  if (failed) {
    for (const auto &msg : errors) {
      if (!msg.empty()) throw NonFiniteError(msg);
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  const Complex energy = e_loc.mean();
  const ComplexVector e_centered = e_loc.array() - energy;
  const double variance = e_centered.squaredNorm() * inv_n;
  const Eigen::RowVectorXcd o_mean = o.colwise().mean();
  const ComplexMatrix o_weighted = (o.rowwise() - o_mean) * std::sqrt(inv_n);

  TdvpProblem prob = assemble(o_weighted, e_centered * std::sqrt(inv_n),
                              energy, variance);
  prob.s = 0.5 * (prob.s + prob.s.adjoint());
  prob.sample_count = static_cast<std::size_t>(n);
  if (!prob.s.allFinite() || !prob.f.allFinite()) {
    throw NonFiniteError("sampled TDVP problem is not finite");
  }
  return prob;
}

Complex expectation_observable(const SpinHamiltonian &op,
                               const RbmParameters &p, const SpinBasis &basis) {
  check_shapes(op, p);
  const ComplexVector psi = dense_state(p, basis);
  return psi.dot(apply_hamiltonian(op, basis, psi));
}

Complex expectation_observable(const SpinHamiltonian &op,
                               const RbmParameters &p,
                               const SampleSet &samples) {
  if (samples.samples.empty()) throw InputError("sample set is empty");
  Complex acc = 0.0;
  for (const auto &sigma : samples.samples) acc += local_energy(op, p, sigma);
  return acc / static_cast<double>(samples.samples.size());
}

}  // namespace nqs
