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

#ifndef NQS_TYPES_HPP
#define NQS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace nqs {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Spin configuration, entries in {-1, +1}.
using SpinConfig = Eigen::VectorXd;

// Flattened variational parameters in [a, b, w row-major] order.
using ParameterVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace nqs

#endif  // NQS_TYPES_HPP
