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

#ifndef NQS_EXACT_HPP
#define NQS_EXACT_HPP

#include "nqs/hamiltonian.hpp"

namespace nqs {

struct GroundState {
  double energy = 0.0;
  ComplexVector state;
};

// Lowest eigenpair of the dense Hamiltonian.
GroundState ground_state(const SpinHamiltonian &h, const SpinBasis &basis);

// Full eigendecomposition of H, reused for propagation to many times.
class ExactPropagator {
 public:
  ExactPropagator(const SpinHamiltonian &h, const SpinBasis &basis);

  // exp(-i H t) psi0. psi0 must be normalized to within 1e-6.
  ComplexVector evolve(const ComplexVector &psi0, double t) const;

  const RealVector &eigenvalues() const { return eigenvalues_; }

 private:
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

ComplexVector exact_evolve(const SpinHamiltonian &h, const ComplexVector &psi0,
                           double t);

}  // namespace nqs

#endif  // NQS_EXACT_HPP
