#include "fockctx/fock.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace fockctx {

namespace {

std::string occ_to_string(const Occupation& occ) {
  std::string s = "(";
  for (std::size_t k = 0; k < occ.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(occ[k]);
  }
  return s + ")";
}

}  // namespace

FockBasis::FockBasis(int modes, int photons) : modes_(modes), photons_(photons) {
  if (modes < 1) throw std::invalid_argument("FockBasis: at least one mode required");
  if (photons < 0) throw std::invalid_argument("FockBasis: photon number must be non-negative");

  Occupation occ(modes, 0);
  std::function<void(int, int)> fill = [&](int mode, int remaining) {
    if (mode == modes_ - 1) {
      occ[mode] = remaining;
      states_.push_back(occ);
      occ[mode] = 0;
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      occ[mode] = k;
      fill(mode + 1, remaining - k);
    }
    occ[mode] = 0;
  };
  fill(0, photons);

  for (int i = 0; i < dim(); ++i) index_[states_[i]] = i;
}

const Occupation& FockBasis::state(int index) const {
  if (index < 0 || index >= dim())
    throw std::out_of_range("FockBasis: ket index " + std::to_string(index) +
                            " outside sector of dimension " + std::to_string(dim()));
  return states_[index];
}

bool FockBasis::contains(const Occupation& occ) const {
  return index_.find(occ) != index_.end();
}

int FockBasis::index_of(const Occupation& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end())
    throw std::invalid_argument("FockBasis: occupation " + occ_to_string(occ) +
                                " is not a ket of this sector");
  return it->second;
}

BasisPtr enumerate_basis(int modes, int photons) {
  return std::make_shared<const FockBasis>(modes, photons);
}

std::int64_t sector_dimension(int modes, int photons) {
  if (modes < 1) throw std::invalid_argument("sector_dimension: at least one mode required");
  if (photons < 0) throw std::invalid_argument("sector_dimension: photon number must be non-negative");
  // C(photons + modes - 1, k) with k = min(photons, modes - 1); exact at
  // every step because each prefix product is itself a binomial.
  const std::int64_t top = photons + modes - 1;
  const std::int64_t k = std::min<std::int64_t>(photons, modes - 1);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (top - k + i) / i;
  return r;
}

bool same_sector(const BasisPtr& a, const BasisPtr& b) {
  if (!a || !b) return false;
  if (a == b) return true;
  return a->modes() == b->modes() && a->photons() == b->photons();
}

namespace {

void require_same_sector(const BasisPtr& a, const BasisPtr& b, const char* where) {
  if (!same_sector(a, b))
    throw std::invalid_argument(std::string(where) + ": operands live on different sectors");
}

}  // namespace

BosonicState basis_state(const BasisPtr& basis, const Occupation& occ) {
  Vector amp = Vector::Zero(basis->dim());
  amp(basis->index_of(occ)) = Complex(1.0, 0.0);
  return {basis, std::move(amp)};
}

bool is_normalized(const BosonicState& state, double tol) {
  return std::abs(state.amplitudes.norm() - 1.0) <= tol;
}

LinearOperator identity_operator(const BasisPtr& basis) {
  return {basis, Matrix::Identity(basis->dim(), basis->dim())};
}

LinearOperator quadratic_operator(const BasisPtr& basis, int create_mode,
                                  int annihilate_mode) {
  const int m = basis->modes();
  if (create_mode < 0 || create_mode >= m || annihilate_mode < 0 || annihilate_mode >= m)
    throw std::out_of_range("quadratic_operator: mode index outside 0.." + std::to_string(m - 1));

  const int d = basis->dim();
  Matrix mat = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    Occupation occ = basis->state(col);
    if (occ[annihilate_mode] == 0) continue;
    double amp = std::sqrt(static_cast<double>(occ[annihilate_mode]));
    occ[annihilate_mode] -= 1;
    amp *= std::sqrt(static_cast<double>(occ[create_mode] + 1));
    occ[create_mode] += 1;
    mat(basis->index_of(occ), col) = amp;
  }
  return {basis, std::move(mat)};
}

bool is_unitary(const LinearOperator& op, double tol) {
  const int d = op.basis->dim();
  return (op.matrix.adjoint() * op.matrix - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const LinearOperator& op, double tol) {
  return (op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

BosonicState apply(const LinearOperator& op, const BosonicState& state) {
  require_same_sector(op.basis, state.basis, "apply");
  return {state.basis, op.matrix * state.amplitudes};
}

Complex expectation(const BosonicState& state, const LinearOperator& op) {
  require_same_sector(op.basis, state.basis, "expectation");
  return state.amplitudes.dot(op.matrix * state.amplitudes);
}

Complex inner_product(const BosonicState& a, const BosonicState& b) {
  require_same_sector(a.basis, b.basis, "inner_product");
  return a.amplitudes.dot(b.amplitudes);
}

}  // namespace fockctx
