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

#ifndef NQS_HAMILTONIAN_HPP
#define NQS_HAMILTONIAN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nqs/types.hpp"

namespace nqs {

// Default cap on the Hilbert-space dimension for dense and exact methods.
inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 14;

// Spin-1/2 configurations of n sites enumerated in bit-pattern order: bit i of
// the index stores (sigma_i + 1) / 2, so index 0 is all spins down.
class SpinBasis {
 public:
  explicit SpinBasis(int n_sites, std::size_t max_dim = kDefaultMaxDim);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const { return dim_; }

  SpinConfig config(std::size_t index) const;
  std::size_t index(const SpinConfig &sigma) const;

 private:
  int n_sites_;
  std::size_t dim_;
};

// Throws CapacityError when 2^n_sites exceeds max_dim.
void check_capacity(int n_sites, std::size_t max_dim);

struct Bond {
  int i = 0;
  int j = 0;
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
};

struct SiteField {
  double hx = 0.0;
  double hz = 0.0;
};

// H = sum_bonds (Jx XX + Jy YY + Jz ZZ) + sum_i (hx X_i + hz Z_i).
class SpinHamiltonian {
 public:
  SpinHamiltonian() = default;
  // Validates site indices and finiteness; throws InputError.
  SpinHamiltonian(int n_sites, std::vector<Bond> bonds,
                  std::vector<SiteField> fields);

  int n_sites() const { return n_sites_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  const std::vector<SiteField> &fields() const { return fields_; }

  // Upper bound on the number of entries returned by apply_hamiltonian_row.
  std::size_t max_connections() const {
    return 1 + 2 * bonds_.size() + static_cast<std::size_t>(n_sites_);
  }

 private:
  int n_sites_ = 0;
  std::vector<Bond> bonds_;
  std::vector<SiteField> fields_;
};

struct MatrixElement {
  SpinConfig sigma;
  Complex amplitude;
};

// Column of H at sigma: every sigma' with <sigma'|H|sigma> != 0. The diagonal
// element, when present, comes first.
std::vector<MatrixElement> apply_hamiltonian_row(const SpinHamiltonian &h,
                                                 const SpinConfig &sigma);

ComplexMatrix dense_matrix(const SpinHamiltonian &h, const SpinBasis &basis);

// Computes (H psi) without materializing H.
ComplexVector apply_hamiltonian(const SpinHamiltonian &h, const SpinBasis &basis,
                                const ComplexVector &psi);

enum class Boundary { kOpen, kPeriodic };

// Nearest-neighbour pairs of a chain.
std::vector<std::pair<int, int>> chain_edges(int n_sites, Boundary boundary);

// H = -J sum <ij> Z_i Z_j - hx sum X_i - hz sum Z_i.
SpinHamiltonian tfim_chain(int n_sites, Boundary boundary, double j, double hx,
                           double hz = 0.0);

// H = sum <ij> (Jx XX + Jy YY + Jz ZZ) + hz sum Z_i.
SpinHamiltonian heisenberg_chain(int n_sites, Boundary boundary, double jx,
                                 double jy, double jz, double hz = 0.0);

// Pre- and post-quench Hamiltonians on the same bond list.
class QuenchPair {
 public:
  QuenchPair(SpinHamiltonian initial, SpinHamiltonian final_h);

  const SpinHamiltonian &initial() const { return initial_; }
  const SpinHamiltonian &final() const { return final_; }

  // Largest relative change of a coupling or field, |p_f - p_i| / |p_i|.
  // Infinite when a parameter that is zero before the quench is switched on.
  double strength() const;

  // Interpolates the final Hamiltonian so that strength() == target.
  QuenchPair with_strength(double target) const;

 private:
  SpinHamiltonian initial_;
  SpinHamiltonian final_;
};

}  // namespace nqs

#endif  // NQS_HAMILTONIAN_HPP
