#pragma once

#include "fockctx/fock.hpp"

namespace fockctx {

// Two-port beam splitter with mixing angle theta and phase phi acting on one
// (upper, lower) mode pair. Parameters are equivalent under
// (theta, phi) -> (-theta, phi + pi); canonicalized() folds theta into
// [0, pi] and phi into [0, 2*pi) through that equivalence.
struct BeamSplitterParams {
  double theta = 0.0;
  double phi = 0.0;
  int upper_mode = 0;
  int lower_mode = 1;

  BeamSplitterParams canonicalized() const;
};

// Assignment of every mode to an upper or a lower group. Where a grouped
// beam splitter is built, upper[k] couples to lower[k] (equal sizes).
struct ModeGrouping {
  std::vector<int> upper;
  std::vector<int> lower;

  static ModeGrouping two_mode();             // {0} | {1}
  static ModeGrouping polarization_pairs();   // {0,1} | {2,3}

  bool is_partition_of(int modes) const;
};

// Hermitian generator H with U = exp(-iH) equal to bs_unitary; at phi = 0 the
// coupling is i(theta/2)(a^dag b - b^dag a).
LinearOperator bs_hamiltonian(const BasisPtr& basis, const BeamSplitterParams& params);

// exp[(theta/2)(e^{i phi} a^dag b - e^{-i phi} b^dag a)] on the sector, with
// a = upper mode and b = lower mode. Number-conserving and unitary; on the
// single-photon sector it sends a -> cos(theta/2) a - e^{i phi} sin(theta/2) b
// in the Heisenberg picture.
LinearOperator bs_unitary(const BasisPtr& basis, const BeamSplitterParams& params);

// One beam splitter with the same (theta, phi) applied across every
// upper[k]--lower[k] pair of the grouping; reduces to bs_unitary for the
// two-mode grouping.
LinearOperator grouped_bs_unitary(const BasisPtr& basis, const ModeGrouping& grouping,
                                  double theta, double phi);

// Closed form of bs_unitary on the two-mode two-photon sector, ordered
// (2,0), (1,1), (0,2).
Eigen::Matrix3cd qutrit_bs_matrix(double theta, double phi);

// Beam-splitter image of |1,1>:
//   (sin(theta) e^{i phi}/sqrt2)|2,0> + cos(theta)|1,1>
//   - (sin(theta) e^{-i phi}/sqrt2)|0,2>.
BosonicState prepare_two_photon_state(double theta, double phi);

// Spherical-component embedding of a real unit 3-vector into the two-photon
// sector: amplitudes ((v_x + i v_y)/sqrt2, v_z, (-v_x + i v_y)/sqrt2) on
// ((2,0), (1,1), (0,2)). Preserves real inner products.
BosonicState bosonic_state_from_unit_vector(const Eigen::Vector3d& v);

// Diagonal operator (N_upper - N_lower)/2 for the grouping.
LinearOperator grouped_sz(const BasisPtr& basis, const ModeGrouping& grouping);

// Diagonal phase exp(i pi (N_upper - N_lower)/2), computed exactly from the
// integer occupation imbalance. Hermitian with eigenvalues +-1 exactly when
// the photon number is even.
LinearOperator parity_unitary(const BasisPtr& basis, const ModeGrouping& grouping);

struct SpinOperators {
  LinearOperator sx;
  LinearOperator sy;
  LinearOperator sz;
};

// Two-mode realization of su(2) on the n-photon sector: S_x = (a^dag b +
// b^dag a)/2, S_y = (a^dag b - b^dag a)/(2i), S_z = (a^dag a - b^dag b)/2,
// carrying spin j = n/2.
SpinOperators schwinger_spin_ops(int photons);

// exp(-i H) of a Hermitian generator, via eigendecomposition.
LinearOperator evolution_unitary(const LinearOperator& hermitian_generator);

}  // namespace fockctx
