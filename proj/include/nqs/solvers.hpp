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

#ifndef NQS_SOLVERS_HPP
#define NQS_SOLVERS_HPP

#include <chrono>
#include <optional>
#include <string>
#include <variant>

#include "nqs/estimators.hpp"

namespace nqs {

inline constexpr double kDefaultEpsilon = 1e-4;
inline constexpr double kDefaultZeta = 1e-12;

// S -> S + epsilon * 1.
struct Regularization {
  double epsilon = kDefaultEpsilon;
};

// Drop eigenmodes of S with lambda <= zeta * max(lambda_max, 1).
struct Diagonalization {
  double zeta = kDefaultZeta;
};

// Real Kaehler-manifold formulation solved by least squares. Singular values
// below rcond * sigma_max are treated as zero; when unset, rcond is
// machine epsilon times the system dimension 4P.
struct Geometric {
  std::optional<double> rcond;
};

using SolverStrategy = std::variant<Regularization, Diagonalization, Geometric>;

std::string strategy_name(const SolverStrategy &strategy);

struct SolverReport {
  ParameterVector update;
  // Number of eigenmodes kept; only the diagonalization solver sets it.
  std::optional<Eigen::Index> rank_kept;
  // ||S f + i F|| / max(||F||, tiny), always in the complex formulation.
  double residual = 0.0;
  double spectrum_min = 0.0;
  double spectrum_max = 0.0;
  std::chrono::duration<double> wall_time{0.0};
};

// ||S f + i F|| / max(||F||, tiny).
double complex_residual(const TdvpProblem &prob, const ParameterVector &f);

SolverReport solve_regularized(const TdvpProblem &prob, double epsilon);

SolverReport solve_diagonalized(const TdvpProblem &prob, double zeta);

struct GeometricSystem {
  RealMatrix a_matrix;  // 4P x 4P, [[2g, omega^T], [omega, 0]]
  RealVector b_vector;  // 4P, [0, -F_geo]
  RealMatrix g;         // Re(S (x) [[1, i], [-i, 1]])
  RealMatrix omega;     // Im(S (x) [[1, i], [-i, 1]])
  RealVector f_geo;     // interleaved (Re F_k, Im F_k)
};

GeometricSystem build_geometric_system(const TdvpProblem &prob);

SolverReport solve_geometric(const TdvpProblem &prob,
                             std::optional<double> rcond = std::nullopt);

// Dispatches on the strategy and fills in the spectrum of S and the wall time.
SolverReport solve(const TdvpProblem &prob, const SolverStrategy &strategy);

}  // namespace nqs

#endif  // NQS_SOLVERS_HPP
