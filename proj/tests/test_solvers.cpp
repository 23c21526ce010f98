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
#include <random>

#include "nqs/errors.hpp"
#include "nqs/solvers.hpp"
#include "test_support.hpp"

using namespace nqs;
using Catch::Approx;

namespace {

TdvpProblem problem(const ComplexMatrix &s, const ComplexVector &f) {
  TdvpProblem p;
  p.s = s;
  p.f = f;
  return p;
}

TdvpProblem scalar(Complex s, Complex f) {
  return problem(ComplexMatrix::Constant(1, 1, s), ComplexVector::Constant(1, f));
}

// -i S^+ F with S^+ from a singular value decomposition, dropping singular
// values at or below zeta * max(sigma_max, 1).
ComplexVector svd_pinv_update(const ComplexMatrix &s, const ComplexVector &f,
                              double zeta) {
  Eigen::JacobiSVD<ComplexMatrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  const double cut = zeta * std::max(sv.size() ? sv(0) : 0.0, 1.0);
  RealVector inv = RealVector::Zero(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) inv(k) = 1.0 / sv(k);
  }
  const ComplexMatrix pinv =
      svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
  return Complex(0.0, -1.0) * (pinv * f);
}

RealVector interleave(const ComplexVector &z) {
  RealVector out(2 * z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    out(2 * k) = z(k).real();
    out(2 * k + 1) = z(k).imag();
  }
  return out;
}

}  // namespace

TEST_CASE("regularized scalar inverse", "[solvers]") {
  const SolverReport r = solve_regularized(scalar(1.0, 1.0), 1e-15);
  CHECK(std::abs(r.update(0) - Complex(0.0, -1.0)) < 1e-14);
  const SolverReport z = solve_regularized(scalar(0.0, 1.0), 1e-3);
  CHECK(std::abs(z.update(0) - Complex(0.0, -1000.0)) < 1e-9);
  CHECK_FALSE(r.rank_kept.has_value());
}

TEST_CASE("regularized residual on random positive definite matrices",
          "[solvers]") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index p = 20;
    const ComplexMatrix a = testing::random_matrix(gen, p, p);
    const ComplexMatrix s = a * a.adjoint() + 0.1 * ComplexMatrix::Identity(p, p);
    const ComplexVector f = testing::random_vector(gen, p);
    const double eps = 1e-4;
    const SolverReport r = solve_regularized(problem(s, f), eps);
    const ComplexVector res =
        (s + eps * ComplexMatrix::Identity(p, p)) * r.update + Complex(0, 1) * f;
    CHECK(res.norm() <= 1e-10 * f.norm());
  }
}

TEST_CASE("regularization reports indefinite matrices", "[solvers]") {
  ComplexMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  ComplexVector f(2);
  f << 1.0, 1.0;
  CHECK_THROWS_AS(solve_regularized(problem(s, f), 1e-4), NumericError);
  try {
    solve_regularized(problem(s, f), 1e-4);
  } catch (const NumericError &e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("eigenvalue"));
  }
  CHECK_THROWS_AS(solve_regularized(scalar(1.0, 1.0), 0.0), InputError);
}

TEST_CASE("diagonalization drops the null direction", "[solvers]") {
  ComplexMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, 0.0;
  ComplexVector f(2);
  f << 2.0, 3.0;
  const SolverReport r = solve_diagonalized(problem(s, f), 1e-12);
  CHECK(std::abs(r.update(0) - Complex(0.0, -2.0)) < 1e-15);
  CHECK(std::abs(r.update(1)) < 1e-15);
  REQUIRE(r.rank_kept.has_value());
  CHECK(*r.rank_kept == 1);
}

TEST_CASE("tiny eigenvalues count as zero", "[solvers]") {
  ComplexMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, 1e-20;
  ComplexVector f(2);
  f << 1.0, 5.0;
  const SolverReport r = solve_diagonalized(problem(s, f), 1e-12);
  CHECK(std::abs(r.update(0) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(r.update(1)) < 1e-15);
  CHECK(*r.rank_kept == 1);
}

TEST_CASE("diagonalization without cutoff matches regularization", "[solvers]") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 10; ++trial) {
    RealVector lambda(12);
    for (Eigen::Index k = 0; k < 12; ++k) lambda(k) = 0.5 + static_cast<double>(k);
    const ComplexMatrix s = testing::hermitian_with_spectrum(gen, lambda);
    const ComplexVector f = testing::random_vector(gen, 12);
    const auto d = solve_diagonalized(problem(s, f), 0.0).update;
    const auto r = solve_regularized(problem(s, f), 1e-15).update;
    CHECK(testing::relative_error(d, r) < 1e-8);
  }
}

TEST_CASE("diagonalization equals an SVD pseudoinverse", "[solvers]") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index p = 8 + trial % 7;
    const Eigen::Index rank = 1 + trial % (p - 1);
    const ComplexMatrix a = testing::random_matrix(gen, p, rank);
    const ComplexMatrix s = a * a.adjoint();
    const ComplexVector f = testing::random_vector(gen, p);
    const SolverReport r = solve_diagonalized(problem(s, f), 1e-12);
    CHECK((r.update - svd_pinv_update(s, f, 1e-12)).norm() <
          1e-10 * std::max(1.0, r.update.norm()));
    CHECK(*r.rank_kept == rank);
  }
}

TEST_CASE("one-parameter geometric system by hand", "[solvers]") {
  const GeometricSystem sys = build_geometric_system(scalar(2.0, Complex(1.0, 1.0)));
  RealMatrix g(2, 2), omega(2, 2);
  g << 2, 0, 0, 2;
  omega << 0, 2, -2, 0;
  RealVector b(4);
  b << 0, 0, -1, -1;
  CHECK(sys.g == g);
  CHECK(sys.omega == omega);
  CHECK(sys.b_vector == b);
  RealMatrix a(4, 4);
  a << 4, 0, 0, -2,  //
      0, 4, 2, 0,    //
      0, 2, 0, 0,    //
      -2, 0, 0, 0;
  CHECK(sys.a_matrix == a);

  const SolverReport r = solve_geometric(scalar(2.0, Complex(1.0, 1.0)));
  CHECK(std::abs(r.update(0) - Complex(0.5, -0.5)) < 1e-12);
  // Same as the complex solve -i F / S.
  CHECK(std::abs(r.update(0) - Complex(0.0, -1.0) * Complex(1.0, 1.0) / 2.0) < 1e-12);
}

TEST_CASE("geometric system dimensions and symmetries", "[solvers]") {
  std::mt19937_64 gen(4);
  const ComplexMatrix a = testing::random_matrix(gen, 5, 5);
  const ComplexMatrix s = a * a.adjoint();
  const GeometricSystem sys = build_geometric_system(problem(s, testing::random_vector(gen, 5)));
  CHECK(sys.a_matrix.rows() == 20);
  CHECK(sys.a_matrix.cols() == 20);
  CHECK(sys.b_vector.size() == 20);
  CHECK((sys.g - sys.g.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((sys.omega + sys.omega.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("geometric solve satisfies the constraint", "[solvers]") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    RealVector lambda(10);
    for (Eigen::Index k = 0; k < 10; ++k) lambda(k) = 1.0 + static_cast<double>(k);
    const TdvpProblem prob = problem(testing::hermitian_with_spectrum(gen, lambda),
                                     testing::random_vector(gen, 10));
    const SolverReport r = solve_geometric(prob);
    const GeometricSystem sys = build_geometric_system(prob);
    CHECK((sys.omega * interleave(r.update) + sys.f_geo).norm() <= 1e-8);
    const auto d = solve_diagonalized(prob, 1e-12).update;
    CHECK(testing::relative_error(r.update, d) < 1e-6);
  }
}

TEST_CASE("trivial geometric system has the zero solution", "[solvers]") {
  const SolverReport r = solve_geometric(problem(ComplexMatrix::Zero(3, 3),
                                                 ComplexVector::Zero(3)));
  CHECK(r.update.norm() == 0.0);
}

TEST_CASE("strategy dispatch and defaults", "[solvers]") {
  const SolverReport r = solve(scalar(0.0, 1.0), Regularization{1e-4});
  CHECK(std::abs(r.update(0) - Complex(0.0, -1e4)) < 1e-6);
  CHECK(kDefaultEpsilon >= 1e-5);
  CHECK(kDefaultEpsilon <= 1e-3);
  CHECK(kDefaultZeta == 1e-12);
  CHECK(Diagonalization{}.zeta == 1e-12);
  CHECK(strategy_name(Regularization{}) == "regularization");
  CHECK(strategy_name(Diagonalization{}) == "diagonalization");
  CHECK(strategy_name(Geometric{}) == "geometric");

  ComplexMatrix s(2, 2);
  s << 3.0, 0.0, 0.0, 0.5;
  ComplexVector f(2);
  f << 1.0, -1.0;
  for (const SolverStrategy &st :
       {SolverStrategy{Regularization{}}, SolverStrategy{Diagonalization{}},
        SolverStrategy{Geometric{}}}) {
    const SolverReport rep = solve(problem(s, f), st);
    CHECK(rep.spectrum_min == Approx(0.5).epsilon(1e-12));
    CHECK(rep.spectrum_max == Approx(3.0).epsilon(1e-12));
    CHECK(rep.wall_time.count() >= 0.0);
    CHECK(rep.residual == Approx(complex_residual(problem(s, f), rep.update)));
  }
  CHECK(solve(problem(s, f), Diagonalization{}).residual < 1e-15);
}
