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

#include "nqs/rbm.hpp"

#include <cmath>
#include <string>

#include "nqs/errors.hpp"
#include "nqs/random.hpp"

namespace nqs {

Eigen::Index rbm_param_count(int n_visible, int n_hidden, bool visible_bias) {
  const Eigen::Index n = n_visible;
  const Eigen::Index m = n_hidden;
  return (visible_bias ? n : 0) + m + m * n;
}

RbmParameters RbmParameters::zeros(int n_visible, int n_hidden,
                                   bool visible_bias) {
  if (n_visible < 1 || n_hidden < 1) {
    throw InputError("RBM needs at least one visible and one hidden unit");
  }
  RbmParameters p;
  p.a = ComplexVector::Zero(n_visible);
  p.b = ComplexVector::Zero(n_hidden);
  p.w = ComplexMatrix::Zero(n_hidden, n_visible);
  p.visible_bias = visible_bias;
  return p;
}

Eigen::Index RbmParameters::n_params() const {
  return rbm_param_count(n_visible(), n_hidden(), visible_bias);
}

void RbmParameters::validate() const {
  if (w.rows() < 1 || w.cols() < 1) {
    throw InputError("RBM needs at least one visible and one hidden unit");
  }
  if (a.size() != w.cols() || b.size() != w.rows()) {
    throw InputError("RBM bias lengths do not match the weight matrix");
  }
  if (!a.allFinite() || !b.allFinite() || !w.allFinite()) {
    throw InputError("RBM parameters contain non-finite entries");
  }
  if (!visible_bias && !a.isZero(0.0)) {
    throw InputError("visible biases are disabled but a is nonzero");
  }
}

ParameterVector RbmParameters::flatten() const {
  const Eigen::Index n = n_visible();
  const Eigen::Index m = n_hidden();
  ParameterVector out(n_params());
  Eigen::Index k = 0;
  if (visible_bias) {
    out.segment(0, n) = a;
    k = n;
  }
  out.segment(k, m) = b;
  k += m;
  for (Eigen::Index j = 0; j < m; ++j) {
    out.segment(k + j * n, n) = w.row(j).transpose();
  }
  return out;
}

RbmParameters RbmParameters::unflatten(const ParameterVector &values) const {
  if (values.size() != n_params()) {
    throw InputError("parameter vector has length " +
                     std::to_string(values.size()) + ", expected " +
                     std::to_string(n_params()));
  }
  const Eigen::Index n = n_visible();
  const Eigen::Index m = n_hidden();
  RbmParameters p = zeros(static_cast<int>(n), static_cast<int>(m),
                          visible_bias);
  Eigen::Index k = 0;
  if (visible_bias) {
    p.a = values.segment(0, n);
    k = n;
  }
  p.b = values.segment(k, m);
  k += m;
  for (Eigen::Index j = 0; j < m; ++j) {
    p.w.row(j) = values.segment(k + j * n, n).transpose();
  }
  if (!values.allFinite()) {
    throw InputError("parameter vector contains non-finite entries");
  }
  return p;
}

Complex log2cosh(Complex z) {
  // log(e^z + e^-z) = s z + log(1 + e^{-2 s z}) with s = sign(Re z), so the
  // exponential never grows.
  if (z.real() < 0.0) z = -z;
  return z + std::log(1.0 + std::exp(-2.0 * z));
}

namespace {

void check_spins(const RbmParameters &p, const SpinConfig &sigma) {
  if (sigma.size() != p.n_visible()) {
    throw InputError("spin configuration has " + std::to_string(sigma.size()) +
                     " entries, RBM has " + std::to_string(p.n_visible()) +
                     " visible units");
  }
}

}  // namespace

ComplexVector hidden_angles(const RbmParameters &p, const SpinConfig &sigma) {
  check_spins(p, sigma);
  return p.b + p.w * sigma.cast<Complex>();
}

Complex log_amplitude(const RbmParameters &p, const SpinConfig &sigma) {
  const ComplexVector theta = hidden_angles(p, sigma);
  Complex out = (p.a.array() * sigma.cast<Complex>().array()).sum();
  for (Eigen::Index j = 0; j < theta.size(); ++j) out += log2cosh(theta(j));
  return out;
}

ComplexVector log_derivatives(const RbmParameters &p, const SpinConfig &sigma) {
  const ComplexVector theta = hidden_angles(p, sigma);
  const Eigen::Index n = p.n_visible();
  const Eigen::Index m = p.n_hidden();
  ComplexVector out(p.n_params());
  Eigen::Index k = 0;
  if (p.visible_bias) {
    out.segment(0, n) = sigma.cast<Complex>();
    k = n;
  }
  const ComplexVector t =
      theta.unaryExpr([](Complex z) { return std::tanh(z); });
  out.segment(k, m) = t;
  k += m;
  for (Eigen::Index j = 0; j < m; ++j) {
    out.segment(k + j * n, n) = t(j) * sigma.cast<Complex>();
  }
  return out;
}

ComplexVector log_amplitudes(const RbmParameters &p, const SpinBasis &basis) {
  if (basis.n_sites() != p.n_visible()) {
    throw InputError("basis and RBM disagree on the number of sites");
  }
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  ComplexVector out(dim);
#pragma omp parallel for schedule(static)
  for (Eigen::Index s = 0; s < dim; ++s) {
    out(s) = log_amplitude(p, basis.config(static_cast<std::size_t>(s)));
  }
  return out;
}

ComplexVector dense_state(const RbmParameters &p, const SpinBasis &basis) {
  const ComplexVector logs = log_amplitudes(p, basis);
  const double shift = logs.real().maxCoeff();
  ComplexVector psi = (logs.array() - shift).exp();
  const double norm = psi.norm();
  if (!std::isfinite(norm) || norm == 0.0) {
    throw NonFiniteError("RBM amplitudes cannot be normalized");
  }
  return psi / norm;
}

RbmParameters init_random(int n_visible, int n_hidden, double scale,
                          std::uint64_t seed, bool visible_bias) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InputError("initialization scale must be > 0");
  }
  RbmParameters p = RbmParameters::zeros(n_visible, n_hidden, visible_bias);
  Rng rng(seed);
  auto draw = [&] {
    const double re = scale * rng.gaussian();
    const double im = scale * rng.gaussian();
    return Complex(re, im);
  };
  if (visible_bias) {
    for (Eigen::Index i = 0; i < p.a.size(); ++i) p.a(i) = draw();
  }
  for (Eigen::Index j = 0; j < p.b.size(); ++j) p.b(j) = draw();
  for (Eigen::Index j = 0; j < p.w.rows(); ++j) {
    for (Eigen::Index i = 0; i < p.w.cols(); ++i) p.w(j, i) = draw();
  }
  return p;
}

}  // namespace nqs
