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

#include "nqs/solvers.hpp"

#include <cmath>
#include <limits>

#include "nqs/errors.hpp"

namespace nqs {

namespace {

constexpr double kTiny = 1e-300;

using Clock = std::chrono::steady_clock;

void check_problem(const TdvpProblem &prob) {
  if (prob.s.rows() != prob.s.cols() || prob.s.rows() != prob.f.size()) {
    throw InputError("TDVP problem has inconsistent shapes");
  }
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eigensystem(
    const ComplexMatrix &s, bool vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(
      s, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericError("Hermitian eigendecomposition of S did not converge");
  }
  return eig;
}

}  // namespace

std::string strategy_name(const SolverStrategy &strategy) {
  struct Visitor {
    std::string operator()(const Regularization &) const {
      return "regularization";
    }
    std::string operator()(const Diagonalization &) const {
      return "diagonalization";
    }
    std::string operator()(const Geometric &) const { return "geometric"; }
  };
  return std::visit(Visitor{}, strategy);
}

double complex_residual(const TdvpProblem &prob, const ParameterVector &f) {
  const ComplexVector r = prob.s * f + kI * prob.f;
  return r.norm() / std::max(prob.f.norm(), kTiny);
}

SolverReport solve_regularized(const TdvpProblem &prob, double epsilon) {
  check_problem(prob);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InputError("regularization epsilon must be > 0");
  }
  const auto start = Clock::now();
  const Eigen::Index n = prob.s.rows();
  ComplexMatrix reg = prob.s;
  reg.diagonal().array() += epsilon;
  Eigen::LLT<ComplexMatrix> llt(reg);
  if (llt.info() != Eigen::Success) {
    const double min_eig = eigensystem(prob.s, false).eigenvalues().minCoeff();
    throw NumericError(
        "S + epsilon*1 is not positive definite (min eigenvalue of S = " +
        std::to_string(min_eig) + ", epsilon = " + std::to_string(epsilon) +
        ")");
  }
  SolverReport report;
  report.update = llt.solve(ComplexVector(-kI * prob.f));
  if (n > 0 && !report.update.allFinite()) {
    throw NonFiniteError("regularized update is not finite");
  }
  report.residual = complex_residual(prob, report.update);
  report.wall_time = Clock::now() - start;
  return report;
}

SolverReport solve_diagonalized(const TdvpProblem &prob, double zeta) {
  check_problem(prob);
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) {
    throw InputError("diagonalization cutoff zeta must be >= 0");
  }
  const auto start = Clock::now();
  SolverReport report;
  const Eigen::Index n = prob.s.rows();
  if (n == 0) {
    report.update = ParameterVector(0);
    report.rank_kept = 0;
    return report;
  }
  const auto eig = eigensystem(prob.s, true);
  const RealVector &lambda = eig.eigenvalues();
  const ComplexMatrix &t = eig.eigenvectors();  // unitary, so T^-1 = T^dagger
  const double cutoff = zeta * std::max(lambda.maxCoeff(), 1.0);

  const ComplexVector f_rot = t.adjoint() * prob.f;
  ComplexVector f_dia = ComplexVector::Zero(n);
  Eigen::Index kept = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (lambda(k) > cutoff) {
      f_dia(k) = -kI * f_rot(k) / lambda(k);
      ++kept;
    }
  }
  report.update = t * f_dia;
  report.rank_kept = kept;
  report.spectrum_min = lambda.minCoeff();
  report.spectrum_max = lambda.maxCoeff();
  if (!report.update.allFinite()) {
    throw NonFiniteError("diagonalized update is not finite");
  }
  report.residual = complex_residual(prob, report.update);
  report.wall_time = Clock::now() - start;
  return report;
}

GeometricSystem build_geometric_system(const TdvpProblem &prob) {
  check_problem(prob);
  const Eigen::Index p = prob.s.rows();
  GeometricSystem sys;
  sys.g.resize(2 * p, 2 * p);
  sys.omega.resize(2 * p, 2 * p);
  // S (x) [[1, i], [-i, 1]]: block (k, l) is S_kl * [[1, i], [-i, 1]].
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      const Complex s = prob.s(k, l);
      const Complex blk[2][2] = {{s, kI * s}, {-kI * s, s}};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          sys.g(2 * k + a, 2 * l + b) = blk[a][b].real();
          sys.omega(2 * k + a, 2 * l + b) = blk[a][b].imag();
        }
      }
    }
  }
  sys.f_geo.resize(2 * p);
  for (Eigen::Index k = 0; k < p; ++k) {
    sys.f_geo(2 * k) = prob.f(k).real();
    sys.f_geo(2 * k + 1) = prob.f(k).imag();
  }
  sys.a_matrix = RealMatrix::Zero(4 * p, 4 * p);
  sys.a_matrix.topLeftCorner(2 * p, 2 * p) = 2.0 * sys.g;
  sys.a_matrix.topRightCorner(2 * p, 2 * p) = sys.omega.transpose();
  sys.a_matrix.bottomLeftCorner(2 * p, 2 * p) = sys.omega;
  sys.b_vector = RealVector::Zero(4 * p);
  sys.b_vector.tail(2 * p) = -sys.f_geo;
  return sys;
}

SolverReport solve_geometric(const TdvpProblem &prob,
                             std::optional<double> rcond) {
  check_problem(prob);
  const Eigen::Index p = prob.s.rows();
  const double cut = rcond.value_or(std::numeric_limits<double>::epsilon() *
                                    static_cast<double>(4 * p));
  if (!(cut >= 0.0) || !std::isfinite(cut)) {
    throw InputError("least-squares rcond must be >= 0");
  }
  const auto start = Clock::now();
  SolverReport report;
  if (p == 0) {
    report.update = ParameterVector(0);
    return report;
  }
  const GeometricSystem sys = build_geometric_system(prob);
  Eigen::BDCSVD<RealMatrix> svd(sys.a_matrix,
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericError("SVD of the geometric system did not converge");
  }
  svd.setThreshold(cut);
  const RealVector x = svd.solve(sys.b_vector);
  // The trailing 2P entries are Lagrange multipliers and are discarded.
  report.update.resize(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    report.update(k) = Complex(x(2 * k), x(2 * k + 1));
  }
  if (!report.update.allFinite()) {
    throw NonFiniteError("geometric update is not finite");
  }
  report.residual = complex_residual(prob, report.update);
  report.wall_time = Clock::now() - start;
  return report;
}

SolverReport solve(const TdvpProblem &prob, const SolverStrategy &strategy) {
  const auto start = Clock::now();
  SolverReport report;
  if (const auto *reg = std::get_if<Regularization>(&strategy)) {
    report = solve_regularized(prob, reg->epsilon);
  } else if (const auto *dia = std::get_if<Diagonalization>(&strategy)) {
    report = solve_diagonalized(prob, dia->zeta);
  } else {
    report = solve_geometric(prob, std::get<Geometric>(strategy).rcond);
  }
  if (!std::holds_alternative<Diagonalization>(strategy) && prob.s.rows() > 0) {
    const RealVector lambda = eigensystem(prob.s, false).eigenvalues();
    report.spectrum_min = lambda.minCoeff();
    report.spectrum_max = lambda.maxCoeff();
  }
  report.wall_time = Clock::now() - start;
  return report;
}

}  // namespace nqs
