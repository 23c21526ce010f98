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

#include "nqs/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nqs/errors.hpp"

namespace nqs {

void check_capacity(int n_sites, std::size_t max_dim) {
  if (n_sites < 1) {
    throw InputError("number of sites must be >= 1, got " +
                     std::to_string(n_sites));
  }
  if (n_sites >= 63 || (std::size_t{1} << n_sites) > max_dim) {
    throw CapacityError("Hilbert space of " + std::to_string(n_sites) +
                        " spins exceeds the dimension cap " +
                        std::to_string(max_dim));
  }
}

SpinBasis::SpinBasis(int n_sites, std::size_t max_dim) : n_sites_(n_sites) {
  check_capacity(n_sites, max_dim);
  dim_ = std::size_t{1} << n_sites;
}

SpinConfig SpinBasis::config(std::size_t index) const {
  SpinConfig sigma(n_sites_);
  for (int i = 0; i < n_sites_; ++i) {
    sigma(i) = ((index >> i) & 1U) ? 1.0 : -1.0;
  }
  return sigma;
}

std::size_t SpinBasis::index(const SpinConfig &sigma) const {
  if (sigma.size() != n_sites_) {
    throw InputError("spin configuration has " + std::to_string(sigma.size()) +
                     " entries, basis has " + std::to_string(n_sites_));
  }
  std::size_t idx = 0;
  for (int i = 0; i < n_sites_; ++i) {
    if (sigma(i) == 1.0) {
      idx |= std::size_t{1} << i;
    } else if (sigma(i) != -1.0) {
      throw InputError("spin values must be +1 or -1");
    }
  }
  return idx;
}

SpinHamiltonian::SpinHamiltonian(int n_sites, std::vector<Bond> bonds,
                                 std::vector<SiteField> fields)
    : n_sites_(n_sites), bonds_(std::move(bonds)), fields_(std::move(fields)) {
  if (n_sites_ < 1) throw InputError("Hamiltonian needs at least one site");
  if (fields_.empty()) fields_.assign(n_sites_, SiteField{});
  if (static_cast<int>(fields_.size()) != n_sites_) {
    throw InputError("expected " + std::to_string(n_sites_) +
                     " site fields, got " + std::to_string(fields_.size()));
  }
  for (const auto &b : bonds_) {
    if (b.i < 0 || b.j < 0 || b.i >= n_sites_ || b.j >= n_sites_ ||
        b.i == b.j) {
      throw InputError("invalid bond (" + std::to_string(b.i) + ", " +
                       std::to_string(b.j) + ")");
    }
    if (!std::isfinite(b.jx) || !std::isfinite(b.jy) || !std::isfinite(b.jz)) {
      throw InputError("non-finite coupling on bond (" + std::to_string(b.i) +
                       ", " + std::to_string(b.j) + ")");
    }
  }
  for (const auto &f : fields_) {
    if (!std::isfinite(f.hx) || !std::isfinite(f.hz)) {
      throw InputError("non-finite site field");
    }
  }
}

std::vector<MatrixElement> apply_hamiltonian_row(const SpinHamiltonian &h,
                                                 const SpinConfig &sigma) {
  if (sigma.size() != h.n_sites()) {
    throw InputError("spin configuration has " + std::to_string(sigma.size()) +
                     " entries, Hamiltonian has " +
                     std::to_string(h.n_sites()));
  }
  std::vector<MatrixElement> out;
  out.reserve(h.max_connections());

  double diag = 0.0;
  for (const auto &b : h.bonds()) diag += b.jz * sigma(b.i) * sigma(b.j);
  for (int i = 0; i < h.n_sites(); ++i) diag += h.fields()[i].hz * sigma(i);
  if (diag != 0.0) out.push_back({sigma, Complex(diag, 0.0)});

  // X_i X_j |s> = |s'>, Y_i Y_j |s> = -s_i s_j |s'> with s' flipped at i, j.
  for (const auto &b : h.bonds()) {
    const double amp = b.jx - b.jy * sigma(b.i) * sigma(b.j);
    if (amp == 0.0) continue;
    SpinConfig flipped = sigma;
    flipped(b.i) = -flipped(b.i);
    flipped(b.j) = -flipped(b.j);
    out.push_back({std::move(flipped), Complex(amp, 0.0)});
  }
  for (int i = 0; i < h.n_sites(); ++i) {
    const double hx = h.fields()[i].hx;
    if (hx == 0.0) continue;
    SpinConfig flipped = sigma;
    flipped(i) = -flipped(i);
    out.push_back({std::move(flipped), Complex(hx, 0.0)});
  }
  return out;
}

ComplexMatrix dense_matrix(const SpinHamiltonian &h, const SpinBasis &basis) {
  if (basis.n_sites() != h.n_sites()) {
    throw InputError("basis and Hamiltonian disagree on the number of sites");
  }
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  ComplexMatrix mat = ComplexMatrix::Zero(dim, dim);
  // Column c is written only by the iteration that owns it.
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < dim; ++c) {
    const SpinConfig sigma = basis.config(static_cast<std::size_t>(c));
    for (const auto &el : apply_hamiltonian_row(h, sigma)) {
      mat(static_cast<Eigen::Index>(basis.index(el.sigma)), c) += el.amplitude;
    }
  }
  return mat;
}

ComplexVector apply_hamiltonian(const SpinHamiltonian &h, const SpinBasis &basis,
                                const ComplexVector &psi) {
  if (psi.size() != static_cast<Eigen::Index>(basis.dim())) {
    throw InputError("state vector length does not match the basis");
  }
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  ComplexVector out(dim);
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < dim; ++r) {
    const SpinConfig sigma = basis.config(static_cast<std::size_t>(r));
    Complex acc = 0.0;
    // <r|H|c> = conj(<c|H|r>) for Hermitian H.
    for (const auto &el : apply_hamiltonian_row(h, sigma)) {
      acc += std::conj(el.amplitude) *
             psi(static_cast<Eigen::Index>(basis.index(el.sigma)));
    }
    out(r) = acc;
  }
  return out;
}

std::vector<std::pair<int, int>> chain_edges(int n_sites, Boundary boundary) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n_sites; ++i) edges.emplace_back(i, i + 1);
  // A periodic 2-site chain would double the only bond.
  if (boundary == Boundary::kPeriodic && n_sites > 2) {
    edges.emplace_back(n_sites - 1, 0);
  }
  return edges;
}

SpinHamiltonian tfim_chain(int n_sites, Boundary boundary, double j, double hx,
                           double hz) {
  std::vector<Bond> bonds;
  for (auto [a, b] : chain_edges(n_sites, boundary)) {
    bonds.push_back({a, b, 0.0, 0.0, -j});
  }
  std::vector<SiteField> fields(n_sites, SiteField{-hx, -hz});
  return SpinHamiltonian(n_sites, std::move(bonds), std::move(fields));
}

SpinHamiltonian heisenberg_chain(int n_sites, Boundary boundary, double jx,
                                 double jy, double jz, double hz) {
  std::vector<Bond> bonds;
  for (auto [a, b] : chain_edges(n_sites, boundary)) {
    bonds.push_back({a, b, jx, jy, jz});
  }
  std::vector<SiteField> fields(n_sites, SiteField{0.0, hz});
  return SpinHamiltonian(n_sites, std::move(bonds), std::move(fields));
}

namespace {

std::vector<double> flat_couplings(const SpinHamiltonian &h) {
  std::vector<double> out;
  for (const auto &b : h.bonds()) {
    out.insert(out.end(), {b.jx, b.jy, b.jz});
  }
  for (const auto &f : h.fields()) out.insert(out.end(), {f.hx, f.hz});
  return out;
}

}  // namespace

QuenchPair::QuenchPair(SpinHamiltonian initial, SpinHamiltonian final_h)
    : initial_(std::move(initial)), final_(std::move(final_h)) {
  if (initial_.n_sites() != final_.n_sites()) {
    throw InputError("quench Hamiltonians act on different numbers of sites");
  }
  const auto &bi = initial_.bonds();
  const auto &bf = final_.bonds();
  if (bi.size() != bf.size()) {
    throw InputError("quench Hamiltonians must share the bond list");
  }
  for (std::size_t k = 0; k < bi.size(); ++k) {
    if (bi[k].i != bf[k].i || bi[k].j != bf[k].j) {
      throw InputError("quench Hamiltonians must share the bond list");
    }
  }
}

double QuenchPair::strength() const {
  const auto pi = flat_couplings(initial_);
  const auto pf = flat_couplings(final_);
  double s = 0.0;
  for (std::size_t k = 0; k < pi.size(); ++k) {
    const double delta = std::abs(pf[k] - pi[k]);
    if (delta == 0.0) continue;
    if (pi[k] == 0.0) return std::numeric_limits<double>::infinity();
    s = std::max(s, delta / std::abs(pi[k]));
  }
  return s;
}

QuenchPair QuenchPair::with_strength(double target) const {
  const double current = strength();
  if (!(target >= 0.0) || !std::isfinite(target)) {
    throw InputError("quench strength must be finite and >= 0");
  }
  if (current == 0.0 || !std::isfinite(current)) {
    throw InputError(
        "cannot rescale a quench whose strength is zero or infinite");
  }
  const double scale = target / current;
  std::vector<Bond> bonds = initial_.bonds();
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    const auto &f = final_.bonds()[k];
    bonds[k].jx += scale * (f.jx - bonds[k].jx);
    bonds[k].jy += scale * (f.jy - bonds[k].jy);
    bonds[k].jz += scale * (f.jz - bonds[k].jz);
  }
  std::vector<SiteField> fields = initial_.fields();
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const auto &f = final_.fields()[k];
    fields[k].hx += scale * (f.hx - fields[k].hx);
    fields[k].hz += scale * (f.hz - fields[k].hz);
  }
  return QuenchPair(initial_, SpinHamiltonian(initial_.n_sites(),
                                              std::move(bonds),
                                              std::move(fields)));
}

}  // namespace nqs
