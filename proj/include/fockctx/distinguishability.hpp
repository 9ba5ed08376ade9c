#pragma once

#include <string>
#include <vector>

#include "fockctx/witness.hpp"

namespace fockctx {

// Everything here lives on the four-mode two-photon sector with modes ordered
// (upper-H, upper-V, lower-H, lower-V): each spatial arm carries a hidden
// polarization label that the optics and the measurements never resolve.

// Two photons, one per arm, with tunable overlap of their internal labels:
// sqrt(1 - eta^2) |1,0,1,0> + eta |1,0,0,1>. eta = 0 is perfectly
// indistinguishable, eta = 1 perfectly distinguishable. Requires 0 <= eta <= 1.
BosonicState partial_input_state(double eta);

// Beam splitter acting identically on both polarization components
// (upper-H with lower-H, upper-V with lower-V).
LinearOperator polarization_blind_bs(double theta, double phi);

// Ideal measurement on the four-mode sector: polarization-blind beam
// splitter, then the parity of the photon-number difference between arms.
IdealMeasurement grouped_measurement(double theta, double phi);

// Probability of one photon per arm after a polarization-blind beam splitter
// hits the partial-overlap input: (1 - eta^2) cos^2(theta)
// + eta^2 (1 + cos^2(theta)) / 2. Computed by simulation, not from the
// closed form. Vanishes at eta = 0, theta = pi/2 (two-photon interference dip).
double coincidence_probability(double eta, double theta);

// Complement of the above: both photons leave through the same arm.
double bunching_probability(double eta, double theta);

struct SweepRow {
  double eta = 0.0;
  double value = 0.0;
  double prep_theta = 0.0;
  double prep_phi = 0.0;
};

struct SweepResult {
  std::string witness_name;
  std::vector<SweepRow> rows;
};

// Witness value as a function of the overlap parameter. For each eta the
// input state is passed through a preparation beam splitter
// (prep_theta, prep_phi) and the witness is evaluated on the operator route;
// at the first and last grid points the sequential route is run as a
// cross-check (disagreement beyond 1e-6 throws).
SweepResult witness_vs_eta(const WitnessSpec& spec, const std::vector<double>& grid,
                           double prep_theta = 0.0, double prep_phi = 0.0);

// Uniform grid of `count` points from start to stop inclusive.
std::vector<double> uniform_grid(double start, double stop, int count);

// CSV with header "eta,value,theta,phi"; theta/phi are the preparation angles.
std::string to_csv(const SweepResult& sweep);

std::string to_json(const SweepResult& sweep);

}  // namespace fockctx
