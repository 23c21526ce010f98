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

#include "nqs/exact.hpp"

#include <cmath>
#include <string>

#include "nqs/errors.hpp"

namespace nqs {

namespace {

Eigen::SelfAdjointEigenSolver<ComplexMatrix> diagonalize(
    const SpinHamiltonian &h, const SpinBasis &basis) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(dense_matrix(h, basis));
  if (eig.info() != Eigen::Success) {
    throw NumericError("Hermitian eigendecomposition of H did not converge");
  }
  return eig;
}

}  // namespace

GroundState ground_state(const SpinHamiltonian &h, const SpinBasis &basis) {
  auto eig = diagonalize(h, basis);
  GroundState gs;
  gs.energy = eig.eigenvalues()(0);
  gs.state = eig.eigenvectors().col(0).normalized();
  return gs;
}

ExactPropagator::ExactPropagator(const SpinHamiltonian &h,
                                 const SpinBasis &basis) {
  auto eig = diagonalize(h, basis);
  eigenvalues_ = eig.eigenvalues();
  eigenvectors_ = eig.eigenvectors();
}

ComplexVector ExactPropagator::evolve(const ComplexVector &psi0,
                                      double t) const {
  if (psi0.size() != eigenvectors_.rows()) {
    throw InputError("state has length " + std::to_string(psi0.size()) +
                     ", propagator dimension is " +
                     std::to_string(eigenvectors_.rows()));
  }
  if (!std::isfinite(t)) throw InputError("evolution time must be finite");
  if (std::abs(psi0.norm() - 1.0) > 1e-6) {
    throw InputError("initial state is not normalized (norm " +
                     std::to_string(psi0.norm()) + ")");
  }
  ComplexVector coeffs = eigenvectors_.adjoint() * psi0;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::exp(Complex(0.0, -eigenvalues_(k) * t));
  }
  return eigenvectors_ * coeffs;
}

ComplexVector exact_evolve(const SpinHamiltonian &h, const ComplexVector &psi0,
                           double t) {
  const SpinBasis basis(h.n_sites());
  return ExactPropagator(h, basis).evolve(psi0, t);
}

}  // namespace nqs
