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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "nqs/errors.hpp"
#include "nqs/exact.hpp"
#include "nqs/hamiltonian.hpp"
#include "test_support.hpp"

using namespace nqs;
using Catch::Approx;

namespace {

SpinConfig spins(std::initializer_list<double> v) {
  SpinConfig s(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) s(i++) = x;
  return s;
}

// Single-site Pauli matrices in the ordering index 0 = spin down.
ComplexMatrix pauli(char axis) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  if (axis == 'x') {
    m(0, 1) = m(1, 0) = 1.0;
  } else if (axis == 'y') {
    m(0, 1) = Complex(0, 1);
    m(1, 0) = Complex(0, -1);
  } else {
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
  }
  return m;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Operator acting with `ops[k]` on site k; site 0 is the least significant
// bit of the basis index, so it sits rightmost in the Kronecker product.
ComplexMatrix site_product(int n, const std::vector<std::pair<int, char>> &ops) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int site = n - 1; site >= 0; --site) {
    ComplexMatrix factor = ComplexMatrix::Identity(2, 2);
    for (const auto &[k, axis] : ops) {
      if (k == site) factor = pauli(axis);
    }
    out = kron(out, factor);
  }
  return out;
}

ComplexMatrix kron_oracle(const SpinHamiltonian &h) {
  const int n = h.n_sites();
  ComplexMatrix out = ComplexMatrix::Zero(1 << n, 1 << n);
  for (const auto &b : h.bonds()) {
    out += b.jx * site_product(n, {{b.i, 'x'}, {b.j, 'x'}});
    out += b.jy * site_product(n, {{b.i, 'y'}, {b.j, 'y'}});
    out += b.jz * site_product(n, {{b.i, 'z'}, {b.j, 'z'}});
  }
  for (int i = 0; i < n; ++i) {
    out += h.fields()[i].hx * site_product(n, {{i, 'x'}});
    out += h.fields()[i].hz * site_product(n, {{i, 'z'}});
  }
  return out;
}

ComplexVector rk4(const ComplexMatrix &h, ComplexVector psi, double t, double dt) {
  const auto steps = static_cast<long>(std::llround(t / dt));
  const double step = t / static_cast<double>(steps);
  auto rhs = [&h](const ComplexVector &v) -> ComplexVector {
    return Complex(0, -1) * (h * v);
  };
  for (long k = 0; k < steps; ++k) {
    const ComplexVector k1 = rhs(psi);
    const ComplexVector k2 = rhs(psi + 0.5 * step * k1);
    const ComplexVector k3 = rhs(psi + 0.5 * step * k2);
    const ComplexVector k4 = rhs(psi + step * k3);
    psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

}  // namespace

TEST_CASE("basis enumerates configurations in index order", "[lattice]") {
  const SpinBasis basis(3);
  REQUIRE(basis.dim() == 8);
  CHECK(basis.config(0) == spins({-1, -1, -1}));
  CHECK(basis.config(1) == spins({1, -1, -1}));
  CHECK(basis.config(6) == spins({-1, 1, 1}));
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    CHECK(basis.index(basis.config(k)) == k);
  }
  CHECK_THROWS_AS(basis.index(spins({1, -1})), InputError);
  CHECK_THROWS_AS(basis.index(spins({1, 0, -1})), InputError);
}

TEST_CASE("basis larger than the cap is rejected", "[lattice]") {
  CHECK_THROWS_AS(SpinBasis(15), CapacityError);
  CHECK_NOTHROW(SpinBasis(14));
  CHECK_THROWS_AS(SpinBasis(4, 8), CapacityError);
}

TEST_CASE("diagonal bond term", "[lattice]") {
  const SpinHamiltonian h(2, {{0, 1, 0.0, 0.0, -1.0}}, {});
  const auto row = apply_hamiltonian_row(h, spins({1, 1}));
  REQUIRE(row.size() == 1);
  CHECK(row[0].sigma == spins({1, 1}));
  CHECK(row[0].amplitude == Complex(-1.0, 0.0));
}

TEST_CASE("single transverse field flips the spin", "[lattice]") {
  const SpinHamiltonian h(1, {}, {{0.5, 0.0}});
  const auto row = apply_hamiltonian_row(h, spins({1}));
  // The zero diagonal entry is skipped.
  REQUIRE(row.size() == 1);
  CHECK(row[0].sigma == spins({-1}));
  CHECK(row[0].amplitude == Complex(0.5, 0.0));
}

TEST_CASE("two-site transverse Ising row", "[lattice]") {
  const SpinHamiltonian h = tfim_chain(2, Boundary::kOpen, 1.0, 0.5);
  const auto row = apply_hamiltonian_row(h, spins({1, 1}));
  REQUIRE(row.size() == 3);
  CHECK(row[0].sigma == spins({1, 1}));
  CHECK(row[0].amplitude == Complex(-1.0, 0.0));
  CHECK(row[1].sigma == spins({-1, 1}));
  CHECK(row[1].amplitude == Complex(-0.5, 0.0));
  CHECK(row[2].sigma == spins({1, -1}));
  CHECK(row[2].amplitude == Complex(-0.5, 0.0));
  CHECK_THROWS_AS(apply_hamiltonian_row(h, spins({1, 1, 1})), InputError);
}

TEST_CASE("one-site dense matrices", "[lattice]") {
  const SpinBasis basis(1);
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  CHECK(dense_matrix(SpinHamiltonian(1, {}, {{1.0, 0.0}}), basis) == x);
  ComplexMatrix z(2, 2);
  z << -1, 0, 0, 1;
  CHECK(dense_matrix(SpinHamiltonian(1, {}, {{0.0, 1.0}}), basis) == z);
}

TEST_CASE("two-site transverse Ising matrix by hand", "[lattice]") {
  const SpinBasis basis(2);
  ComplexMatrix expected(4, 4);
  // index bits (s1 s0): 00 = (-,-), 01 = (+,-), 10 = (-,+), 11 = (+,+)
  expected << -1.0, -0.5, -0.5, 0.0,  //
      -0.5, 1.0, 0.0, -0.5,           //
      -0.5, 0.0, 1.0, -0.5,           //
      0.0, -0.5, -0.5, -1.0;
  CHECK(dense_matrix(tfim_chain(2, Boundary::kOpen, 1.0, 0.5), basis) == expected);
}

TEST_CASE("dense matrix matches Kronecker products of Pauli matrices",
          "[lattice]") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 4;
    std::vector<Bond> bonds;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) bonds.push_back({i, j, g(gen), g(gen), g(gen)});
    }
    std::vector<SiteField> fields;
    for (int i = 0; i < n; ++i) fields.push_back({g(gen), g(gen)});
    const SpinHamiltonian h(n, bonds, fields);
    const SpinBasis basis(n);
    const ComplexMatrix dense = dense_matrix(h, basis);
    CHECK((dense - kron_oracle(h)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    const ComplexVector psi = testing::random_vector(gen, 16);
    CHECK((apply_hamiltonian(h, basis, psi) - dense * psi).norm() < 1e-12);
  }
}

TEST_CASE("chain edges", "[lattice]") {
  CHECK(chain_edges(4, Boundary::kOpen).size() == 3);
  CHECK(chain_edges(4, Boundary::kPeriodic).size() == 4);
  CHECK(chain_edges(4, Boundary::kPeriodic).back() == std::pair<int, int>{3, 0});
  CHECK(chain_edges(2, Boundary::kPeriodic).size() == 1);
  CHECK(chain_edges(1, Boundary::kOpen).empty());
}

TEST_CASE("invalid Hamiltonians are rejected", "[lattice]") {
  CHECK_THROWS_AS(SpinHamiltonian(2, {{0, 0, 1, 1, 1}}, {}), InputError);
  CHECK_THROWS_AS(SpinHamiltonian(2, {{0, 2, 1, 1, 1}}, {}), InputError);
  CHECK_THROWS_AS(SpinHamiltonian(2, {}, {{1.0, 0.0}}), InputError);
  CHECK_THROWS_AS(SpinHamiltonian(0, {}, {}), InputError);
}

TEST_CASE("quench strength and rescaling", "[lattice]") {
  const QuenchPair q(tfim_chain(4, Boundary::kOpen, 1.0, 1.0),
                     tfim_chain(4, Boundary::kOpen, 1.0, 0.1));
  CHECK(q.strength() == Approx(0.9).epsilon(1e-14));
  const QuenchPair half = q.with_strength(0.45);
  CHECK(half.strength() == Approx(0.45).epsilon(1e-14));
  CHECK(half.final().fields()[2].hx == Approx(-0.55).epsilon(1e-14));
  CHECK(q.with_strength(0.0).strength() == 0.0);

  const QuenchPair on(SpinHamiltonian(1, {}, {{1.0, 0.0}}),
                      SpinHamiltonian(1, {}, {{1.0, 0.5}}));
  CHECK(std::isinf(on.strength()));
  CHECK_THROWS_AS(QuenchPair(tfim_chain(4, Boundary::kOpen, 1.0, 1.0),
                             tfim_chain(4, Boundary::kPeriodic, 1.0, 1.0)),
                  InputError);
}

TEST_CASE("ground state of a single spin in a transverse field", "[exact]") {
  const SpinBasis basis(1);
  const GroundState gs = ground_state(SpinHamiltonian(1, {}, {{-1.0, 0.0}}), basis);
  CHECK(gs.energy == Approx(-1.0).epsilon(1e-14));
  ComplexVector plus(2);
  plus << 1.0, 1.0;
  plus /= std::sqrt(2.0);
  CHECK(std::abs(plus.dot(gs.state)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-site Heisenberg singlet", "[exact]") {
  const SpinBasis basis(2);
  const GroundState gs =
      ground_state(heisenberg_chain(2, Boundary::kOpen, 1.0, 1.0, 1.0), basis);
  CHECK(gs.energy == Approx(-3.0).epsilon(1e-14));
  CHECK(gs.state.norm() == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ground state in a longitudinal field", "[exact]") {
  const SpinBasis basis(1);
  const GroundState gs = ground_state(SpinHamiltonian(1, {}, {{0.0, 1.0}}), basis);
  CHECK(gs.energy == Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(gs.state(0)) == Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(gs.state(1)) < 1e-14);
}

TEST_CASE("eigenstate acquires a phase", "[exact]") {
  const SpinHamiltonian h(1, {}, {{0.0, 1.0}});
  ComplexVector psi0(2);
  psi0 << 1.0, 0.0;
  const double t = 0.7;
  const ComplexVector psi = exact_evolve(h, psi0, t);
  CHECK(std::abs(psi(0) - std::exp(Complex(0.0, t))) < 1e-14);
  CHECK(std::abs(psi(1)) < 1e-14);
  CHECK(std::abs(psi(0)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero time is the identity", "[exact]") {
  std::mt19937_64 gen(3);
  const SpinHamiltonian h = tfim_chain(3, Boundary::kPeriodic, 1.0, 0.7);
  ComplexVector psi0 = testing::random_vector(gen, 8);
  psi0.normalize();
  CHECK((exact_evolve(h, psi0, 0.0) - psi0).norm() < 1e-14);
}

TEST_CASE("evolution matches a fine-step Runge-Kutta integration", "[exact]") {
  const SpinHamiltonian h(1, {}, {{-1.0, 0.0}});
  ComplexVector psi0(2);
  psi0 << 1.0, 0.0;
  const double t = std::numbers::pi / 2.0;
  const ComplexVector exact = exact_evolve(h, psi0, t);
  const ComplexVector oracle = rk4(dense_matrix(h, SpinBasis(1)), psi0, t, 1e-5);
  CHECK((exact - oracle).norm() < 1e-8);
  // cos(t) |down> + i sin(t) |up> at t = pi/2
  CHECK(std::abs(exact(1) - Complex(0.0, 1.0)) < 1e-12);

  std::mt19937_64 gen(5);
  const SpinHamiltonian h3 = heisenberg_chain(3, Boundary::kOpen, 1.0, 0.6, 0.3, 0.2);
  ComplexVector phi = testing::random_vector(gen, 8);
  phi.normalize();
  const ComplexVector e3 = exact_evolve(h3, phi, 0.4);
  CHECK((e3 - rk4(dense_matrix(h3, SpinBasis(3)), phi, 0.4, 1e-4)).norm() < 1e-8);
}

TEST_CASE("unnormalized initial states are rejected", "[exact]") {
  const SpinHamiltonian h(1, {}, {{1.0, 0.0}});
  ComplexVector psi0(2);
  psi0 << 1.0, 1e-2;
  CHECK_THROWS_AS(exact_evolve(h, psi0, 1.0), InputError);
  ComplexVector wrong(4);
  wrong << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(exact_evolve(h, wrong, 1.0), InputError);
}
