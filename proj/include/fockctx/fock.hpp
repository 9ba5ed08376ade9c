#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "fockctx/types.hpp"

namespace fockctx {

// Mode occupation numbers of a single Fock ket, e.g. {1, 1} for |1,1>.
using Occupation = std::vector<int>;

// Fixed-photon-number sector of an m-mode bosonic Fock space. Kets are
// ordered lexicographically decreasing, so the two-mode two-photon sector
// enumerates as (2,0), (1,1), (0,2).
class FockBasis {
 public:
  FockBasis(int modes, int photons);

  int modes() const { return modes_; }
  int photons() const { return photons_; }
  int dim() const { return static_cast<int>(states_.size()); }
  const std::vector<Occupation>& states() const { return states_; }
  const Occupation& state(int index) const;
  bool contains(const Occupation& occ) const;
  int index_of(const Occupation& occ) const;

 private:
  int modes_;
  int photons_;
  std::vector<Occupation> states_;
  std::map<Occupation, int> index_;
};

// Bases are immutable and shared between states and operators.
using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr enumerate_basis(int modes, int photons);

// Closed-form sector dimension C(photons + modes - 1, photons).
std::int64_t sector_dimension(int modes, int photons);

// True when both handles describe the same (modes, photons) sector.
bool same_sector(const BasisPtr& a, const BasisPtr& b);

struct BosonicState {
  BasisPtr basis;
  Vector amplitudes;
};

struct LinearOperator {
  BasisPtr basis;
  Matrix matrix;
};

// Unit-amplitude ket for one occupation pattern.
BosonicState basis_state(const BasisPtr& basis, const Occupation& occ);

bool is_normalized(const BosonicState& state, double tol = kPhysicalTol);

LinearOperator identity_operator(const BasisPtr& basis);

// Matrix of the quadratic ladder product a_create^dag a_annihilate on the
// sector: <n'|a_i^dag a_j|n> = sqrt(n_j (n_i - delta_ij + 1)) with one photon
// moved from mode j to mode i, and n_i on the diagonal when i == j.
LinearOperator quadratic_operator(const BasisPtr& basis, int create_mode,
                                  int annihilate_mode);

bool is_unitary(const LinearOperator& op, double tol = kStructuralTol);
bool is_hermitian(const LinearOperator& op, double tol = kStructuralTol);

// op * state, with no renormalization applied.
BosonicState apply(const LinearOperator& op, const BosonicState& state);

// <state|op|state>.
Complex expectation(const BosonicState& state, const LinearOperator& op);

// <a|b>.
Complex inner_product(const BosonicState& a, const BosonicState& b);

}  // namespace fockctx
