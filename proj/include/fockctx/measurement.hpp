#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fockctx/optics.hpp"

namespace fockctx {

struct MeasurementSettings {
  double theta = 0.0;
  double phi = 0.0;
  ModeGrouping grouping;
};

// Sharp two-outcome measurement built by conjugating the grouped parity with
// the beam splitter at the given settings: P = U Pi U^dag. P is unitary; it
// is Hermitian with +-1 outcomes exactly on even-photon-number sectors.
struct IdealMeasurement {
  LinearOperator parity;
  MeasurementSettings settings;
};

IdealMeasurement measurement_from_settings(const BasisPtr& basis, const ModeGrouping& grouping,
                                           double theta, double phi);

// K_+ = (1 + P)/2 and K_- = (1 - P)/2. Complementary projectors for even
// photon number; for any unitary P they satisfy K_+^dag K_+ + K_-^dag K_- = 1.
std::pair<LinearOperator, LinearOperator> kraus_pair(const IdealMeasurement& meas);

// Hermitian part (P + P^dag)/2; the +-1-outcome observable on even sectors.
LinearOperator observable_of(const IdealMeasurement& meas);

// Bosonic sector tensored with a register of ancilla qubits kept in the
// {|+>, |->} readout basis. Amplitudes are stored as a (sector dim) x 2^k
// matrix; column index c holds the register configuration with bit q of c
// equal to 0 for ancilla q in |+> and 1 for |->.
struct HybridState {
  BasisPtr basis;
  int ancillas = 0;
  Matrix amplitudes;
};

HybridState hybrid_from_bosonic(const BosonicState& state);

// Appends one fresh ancilla in |+> (the new highest index). Commutes with
// couplings addressed to the previously attached ancillas.
HybridState attach_ancilla(const HybridState& state);

// Coherent measurement coupling onto ancilla q: the joint unitary acting as
// |psi>|+>_q -> K_+|psi>|+>_q + K_-|psi>|->_q on every register branch.
HybridState couple_measurement(const HybridState& state, const IdealMeasurement& meas,
                               int ancilla);

struct ReadoutBranch {
  int outcome;          // +1 for |+>, -1 for |->
  double probability;
  HybridState state;    // renormalized; the read ancilla is left collapsed
};

// Projects ancilla q onto |+> / |->. Branches below the impossible-branch
// threshold are dropped.
std::vector<ReadoutBranch> readout(const HybridState& state, int ancilla);

// Distribution over outcome strings in {-1,+1}^length, in measurement order.
struct JointDistribution {
  int length = 0;
  std::map<std::vector<int>, double> probabilities;

  double probability(const std::vector<int>& outcomes) const;
};

// Joint outcome distribution of measuring the sequence in order, computed by
// a tree of Luders branches with no ancillas; must agree with the ancilla
// route in every readout order.
JointDistribution sequential_joint(const BosonicState& state,
                                   const std::vector<IdealMeasurement>& sequence);

// Sum over outcome strings of (product of outcomes) * probability.
double correlator(const JointDistribution& dist);

// Reduced density matrix of two ancillas after coupling first and second to
// the state, ordered (|++>, |+->, |-+>, |-->) with the first measurement's
// ancilla in the left slot.
Eigen::Matrix4cd ancilla_pair_density(const BosonicState& state, const IdealMeasurement& first,
                                      const IdealMeasurement& second);

// One Luders step: probability of the outcome and the renormalized
// post-measurement state. Throws if the outcome is impossible on the state.
std::pair<double, BosonicState> luders_update(const BosonicState& state,
                                              const IdealMeasurement& meas, int outcome);

}  // namespace fockctx
