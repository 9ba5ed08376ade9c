#include "fockctx/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fockctx {

namespace {

constexpr double kPi = std::numbers::pi;

// Phase i^k for integer k, exact for the quarter turns that occupation
// imbalances produce.
Complex quarter_turn_phase(long long twice_sz) {
  switch (((twice_sz % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void require_grouping(const BasisPtr& basis, const ModeGrouping& grouping, const char* where) {
  if (!grouping.is_partition_of(basis->modes()))
    throw std::invalid_argument(std::string(where) + ": grouping is not a partition of the modes");
}

double grouped_imbalance(const Occupation& occ, const ModeGrouping& grouping) {
  long long up = 0, lo = 0;
  for (int k : grouping.upper) up += occ[k];
  for (int k : grouping.lower) lo += occ[k];
  return 0.5 * static_cast<double>(up - lo);
}

}  // namespace

BeamSplitterParams BeamSplitterParams::canonicalized() const {
  BeamSplitterParams out = *this;
  out.theta = std::remainder(theta, 2.0 * kPi);  // (-pi, pi]
  if (out.theta < 0.0) {
    out.theta = -out.theta;
    out.phi += kPi;
  }
  out.phi = std::fmod(out.phi, 2.0 * kPi);
  if (out.phi < 0.0) out.phi += 2.0 * kPi;
  return out;
}

ModeGrouping ModeGrouping::two_mode() { return {{0}, {1}}; }

ModeGrouping ModeGrouping::polarization_pairs() { return {{0, 1}, {2, 3}}; }

bool ModeGrouping::is_partition_of(int modes) const {
  std::vector<int> seen(modes, 0);
  for (int k : upper) {
    if (k < 0 || k >= modes) return false;
    seen[k] += 1;
  }
  for (int k : lower) {
    if (k < 0 || k >= modes) return false;
    seen[k] += 1;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

LinearOperator bs_hamiltonian(const BasisPtr& basis, const BeamSplitterParams& params) {
  if (params.upper_mode == params.lower_mode ||
      params.upper_mode < 0 || params.upper_mode >= basis->modes() ||
      params.lower_mode < 0 || params.lower_mode >= basis->modes())
    throw std::invalid_argument("bs_hamiltonian: mode pair must be two distinct modes of the sector");

  const Matrix t = quadratic_operator(basis, params.upper_mode, params.lower_mode).matrix;
  const Complex up = std::polar(1.0, params.phi);
  Matrix h = Complex(0.0, 0.5 * params.theta) * (up * t - std::conj(up) * t.adjoint());
  return {basis, std::move(h)};
}

LinearOperator bs_unitary(const BasisPtr& basis, const BeamSplitterParams& params) {
  return evolution_unitary(bs_hamiltonian(basis, params));
}

LinearOperator grouped_bs_unitary(const BasisPtr& basis, const ModeGrouping& grouping,
                                  double theta, double phi) {
  require_grouping(basis, grouping, "grouped_bs_unitary");
  if (grouping.upper.size() != grouping.lower.size())
    throw std::invalid_argument("grouped_bs_unitary: groups must pair up with equal sizes");

  const int d = basis->dim();
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < grouping.upper.size(); ++k) {
    BeamSplitterParams pair{theta, phi, grouping.upper[k], grouping.lower[k]};
    h += bs_hamiltonian(basis, pair).matrix;
  }
  return evolution_unitary({basis, std::move(h)});
}

Eigen::Matrix3cd qutrit_bs_matrix(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const Complex ep = std::polar(1.0, phi);
  const Complex ep2 = std::polar(1.0, 2.0 * phi);
  const double r = st / std::sqrt(2.0);

  Eigen::Matrix3cd u;
  u << Complex(c * c, 0.0), ep * r, ep2 * (s * s),
      -std::conj(ep) * r, Complex(ct, 0.0), ep * r,
      std::conj(ep2) * (s * s), -std::conj(ep) * r, Complex(c * c, 0.0);
  return u;
}

BosonicState prepare_two_photon_state(double theta, double phi) {
  BasisPtr basis = enumerate_basis(2, 2);
  const double st = std::sin(theta);
  const Complex ep = std::polar(1.0, phi);
  Vector amp(3);
  amp << ep * (st / std::sqrt(2.0)), Complex(std::cos(theta), 0.0),
      -std::conj(ep) * (st / std::sqrt(2.0));
  return {std::move(basis), std::move(amp)};
}

BosonicState bosonic_state_from_unit_vector(const Eigen::Vector3d& v) {
  if (std::abs(v.norm() - 1.0) > kPhysicalTol)
    throw std::invalid_argument("bosonic_state_from_unit_vector: input must be a unit vector");
  const double inv = 1.0 / std::sqrt(2.0);
  Vector amp(3);
  amp << Complex(v.x(), v.y()) * inv, Complex(v.z(), 0.0), Complex(-v.x(), v.y()) * inv;
  return {enumerate_basis(2, 2), std::move(amp)};
}

LinearOperator grouped_sz(const BasisPtr& basis, const ModeGrouping& grouping) {
  require_grouping(basis, grouping, "grouped_sz");
  const int d = basis->dim();
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = grouped_imbalance(basis->state(i), grouping);
  return {basis, std::move(m)};
}

LinearOperator parity_unitary(const BasisPtr& basis, const ModeGrouping& grouping) {
  require_grouping(basis, grouping, "parity_unitary");
  const int d = basis->dim();
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    long long up = 0, lo = 0;
    const Occupation& occ = basis->state(i);
    for (int k : grouping.upper) up += occ[k];
    for (int k : grouping.lower) lo += occ[k];
    m(i, i) = quarter_turn_phase(up - lo);  // exp(i pi (up - lo)/2)
  }
  return {basis, std::move(m)};
}

SpinOperators schwinger_spin_ops(int photons) {
  BasisPtr basis = enumerate_basis(2, photons);
  const Matrix t = quadratic_operator(basis, 0, 1).matrix;
  const Matrix na = quadratic_operator(basis, 0, 0).matrix;
  const Matrix nb = quadratic_operator(basis, 1, 1).matrix;
  SpinOperators ops{{basis, 0.5 * (t + t.adjoint())},
                    {basis, Complex(0.0, -0.5) * (t - t.adjoint())},
                    {basis, 0.5 * (na - nb)}};
  return ops;
}

LinearOperator evolution_unitary(const LinearOperator& hermitian_generator) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_generator.matrix);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("evolution_unitary: eigendecomposition failed");
  const auto& lambda = es.eigenvalues();
  Vector phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases(i) = std::polar(1.0, -lambda(i));
  Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return {hermitian_generator.basis, std::move(u)};
}

}  // namespace fockctx
