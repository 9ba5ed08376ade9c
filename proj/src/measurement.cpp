#include "fockctx/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fockctx {

namespace {

void require_sector(const BasisPtr& a, const BasisPtr& b, const char* where) {
  if (!same_sector(a, b))
    throw std::invalid_argument(std::string(where) + ": operands live on different sectors");
}

void require_ancilla(const HybridState& state, int ancilla, const char* where) {
  if (ancilla < 0 || ancilla >= state.ancillas)
    throw std::out_of_range(std::string(where) + ": ancilla index " + std::to_string(ancilla) +
                            " outside register of size " + std::to_string(state.ancillas));
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

void fill_subtree(JointDistribution& dist, std::vector<int>& prefix, int remaining) {
  if (remaining == 0) {
    dist.probabilities[prefix] = 0.0;
    return;
  }
  for (int a : {+1, -1}) {
    prefix.push_back(a);
    fill_subtree(dist, prefix, remaining - 1);
    prefix.pop_back();
  }
}

void branch(JointDistribution& dist, const std::vector<IdealMeasurement>& sequence,
            std::size_t depth, const Vector& unnormalized, std::vector<int>& prefix) {
  if (depth == sequence.size()) {
    dist.probabilities[prefix] = clamp01(unnormalized.squaredNorm());
    return;
  }
  const Matrix& p = sequence[depth].parity.matrix;
  const Vector pv = p * unnormalized;
  for (int a : {+1, -1}) {
    // K_{+-} v = (v +- P v)/2; the squared norm of the running vector is the
    // cumulative probability of the outcome prefix.
    Vector next = 0.5 * (unnormalized + static_cast<double>(a) * pv);
    prefix.push_back(a);
    if (next.squaredNorm() < kImpossibleBranch) {
      fill_subtree(dist, prefix, static_cast<int>(sequence.size() - depth - 1));
    } else {
      branch(dist, sequence, depth + 1, next, prefix);
    }
    prefix.pop_back();
  }
}

}  // namespace

IdealMeasurement measurement_from_settings(const BasisPtr& basis, const ModeGrouping& grouping,
                                           double theta, double phi) {
  const LinearOperator u = grouped_bs_unitary(basis, grouping, theta, phi);
  const LinearOperator pi = parity_unitary(basis, grouping);
  Matrix p = u.matrix * pi.matrix * u.matrix.adjoint();
  return {{basis, std::move(p)}, {theta, phi, grouping}};
}

std::pair<LinearOperator, LinearOperator> kraus_pair(const IdealMeasurement& meas) {
  const BasisPtr& basis = meas.parity.basis;
  const Matrix id = Matrix::Identity(basis->dim(), basis->dim());
  return {{basis, 0.5 * (id + meas.parity.matrix)}, {basis, 0.5 * (id - meas.parity.matrix)}};
}

LinearOperator observable_of(const IdealMeasurement& meas) {
  return {meas.parity.basis, 0.5 * (meas.parity.matrix + meas.parity.matrix.adjoint())};
}

HybridState hybrid_from_bosonic(const BosonicState& state) {
  return {state.basis, 0, state.amplitudes};
}

HybridState attach_ancilla(const HybridState& state) {
  const Eigen::Index d = state.amplitudes.rows();
  const Eigen::Index cols = state.amplitudes.cols();
  Matrix amp = Matrix::Zero(d, 2 * cols);
  amp.leftCols(cols) = state.amplitudes;  // new ancilla bit 0 <=> |+>
  return {state.basis, state.ancillas + 1, std::move(amp)};
}

HybridState couple_measurement(const HybridState& state, const IdealMeasurement& meas,
                               int ancilla) {
  require_sector(state.basis, meas.parity.basis, "couple_measurement");
  require_ancilla(state, ancilla, "couple_measurement");

  const auto [kp, km] = kraus_pair(meas);
  const Matrix plus = kp.matrix * state.amplitudes;
  const Matrix minus = km.matrix * state.amplitudes;

  const int mask = 1 << ancilla;
  Matrix amp(state.amplitudes.rows(), state.amplitudes.cols());
  for (int c = 0; c < state.amplitudes.cols(); ++c)
    amp.col(c) = plus.col(c) + minus.col(c ^ mask);
  return {state.basis, state.ancillas, std::move(amp)};
}

std::vector<ReadoutBranch> readout(const HybridState& state, int ancilla) {
  require_ancilla(state, ancilla, "readout");

  const int mask = 1 << ancilla;
  std::vector<ReadoutBranch> branches;
  for (int outcome : {+1, -1}) {
    const int want = outcome > 0 ? 0 : mask;
    Matrix amp = Matrix::Zero(state.amplitudes.rows(), state.amplitudes.cols());
    double p = 0.0;
    for (int c = 0; c < state.amplitudes.cols(); ++c) {
      if ((c & mask) != want) continue;
      amp.col(c) = state.amplitudes.col(c);
      p += state.amplitudes.col(c).squaredNorm();
    }
    if (p < kImpossibleBranch) continue;
    amp /= std::sqrt(p);
    branches.push_back({outcome, clamp01(p), {state.basis, state.ancillas, std::move(amp)}});
  }
  return branches;
}

double JointDistribution::probability(const std::vector<int>& outcomes) const {
  auto it = probabilities.find(outcomes);
  return it == probabilities.end() ? 0.0 : it->second;
}

JointDistribution sequential_joint(const BosonicState& state,
                                   const std::vector<IdealMeasurement>& sequence) {
  for (const auto& meas : sequence)
    require_sector(state.basis, meas.parity.basis, "sequential_joint");

  JointDistribution dist;
  dist.length = static_cast<int>(sequence.size());
  std::vector<int> prefix;
  branch(dist, sequence, 0, state.amplitudes, prefix);
  return dist;
}

double correlator(const JointDistribution& dist) {
  double sum = 0.0;
  for (const auto& [outcomes, p] : dist.probabilities) {
    int sign = 1;
    for (int a : outcomes) sign *= a;
    sum += sign * p;
  }
  return sum;
}

Eigen::Matrix4cd ancilla_pair_density(const BosonicState& state, const IdealMeasurement& first,
                                      const IdealMeasurement& second) {
  HybridState h = attach_ancilla(attach_ancilla(hybrid_from_bosonic(state)));
  h = couple_measurement(h, first, 0);
  h = couple_measurement(h, second, 1);

  // Partial trace over the bosonic factor, then reorder the register index
  // (bit 0 = first ancilla) into (first, second) tensor order.
  const Matrix rho_cfg = (h.amplitudes.adjoint() * h.amplitudes).transpose();
  const int order[4] = {0, 2, 1, 3};
  Eigen::Matrix4cd rho;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) rho(r, c) = rho_cfg(order[r], order[c]);
  return rho;
}

std::pair<double, BosonicState> luders_update(const BosonicState& state,
                                              const IdealMeasurement& meas, int outcome) {
  require_sector(state.basis, meas.parity.basis, "luders_update");
  if (outcome != 1 && outcome != -1)
    throw std::invalid_argument("luders_update: outcome must be +1 or -1");

  Vector v = 0.5 * (state.amplitudes +
                    static_cast<double>(outcome) * (meas.parity.matrix * state.amplitudes));
  const double p = v.squaredNorm();
  if (p < kImpossibleBranch)
    throw std::domain_error("luders_update: outcome has zero probability on this state");
  v /= std::sqrt(p);
  return {clamp01(p), {state.basis, std::move(v)}};
}

}  // namespace fockctx
