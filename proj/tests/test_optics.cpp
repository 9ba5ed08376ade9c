#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fockctx/optics.hpp"

using namespace fockctx;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937& rng() {
  static std::mt19937 gen(20260822u);
  return gen;
}

double random_theta() {
  static std::uniform_real_distribution<double> d(0.0, kPi);
  return d(rng());
}

double random_phi() {
  static std::uniform_real_distribution<double> d(0.0, 2.0 * kPi);
  return d(rng());
}

Eigen::Vector3d random_direction() {
  static std::normal_distribution<double> d(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v = Eigen::Vector3d(d(rng()), d(rng()), d(rng()));
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("single-photon beam-splitter matrix") {
  BasisPtr b = enumerate_basis(2, 1);
  for (int trial = 0; trial < 25; ++trial) {
    const double theta = random_theta();
    const double phi = random_phi();
    const Complex ep = std::polar(1.0, phi);
    Matrix expected(2, 2);
    expected << Complex(std::cos(0.5 * theta), 0.0), ep * std::sin(0.5 * theta),
        -std::conj(ep) * std::sin(0.5 * theta), Complex(std::cos(0.5 * theta), 0.0);
    LinearOperator u = bs_unitary(b, {theta, phi});
    CHECK(max_abs_diff(u.matrix, expected) < kStructuralTol);
    CHECK(is_unitary(u));
  }
}

TEST_CASE("two-photon beam-splitter matrix matches the closed form") {
  BasisPtr b = enumerate_basis(2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = random_theta();
    const double phi = random_phi();
    LinearOperator u = bs_unitary(b, {theta, phi});
    Eigen::Matrix3cd closed = qutrit_bs_matrix(theta, phi);
    CHECK(max_abs_diff(u.matrix, closed) < kStructuralTol);
    CHECK(is_unitary(u));
  }
}

TEST_CASE("prepared two-photon states") {
  BasisPtr b = enumerate_basis(2, 2);
  BosonicState balanced = basis_state(b, {1, 1});

  SUBCASE("zero angle keeps the balanced state") {
    BosonicState s = prepare_two_photon_state(0.0, 1.3);
    CHECK((s.amplitudes - balanced.amplitudes).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("preparation equals the splitter applied to the balanced state") {
    for (int trial = 0; trial < 30; ++trial) {
      const double theta = random_theta();
      const double phi = random_phi();
      BosonicState direct = prepare_two_photon_state(theta, phi);
      BosonicState routed = apply(bs_unitary(b, {theta, phi}), balanced);
      CHECK((direct.amplitudes - routed.amplitudes).cwiseAbs().maxCoeff() < kStructuralTol);
      CHECK(is_normalized(direct));
    }
  }

  SUBCASE("component signs and phases") {
    const double theta = 0.8;
    const double phi = 2.1;
    BosonicState s = prepare_two_photon_state(theta, phi);
    const Complex ep = std::polar(1.0, phi);
    CHECK(std::abs(s.amplitudes(0) - ep * (std::sin(theta) / std::sqrt(2.0))) < kStructuralTol);
    CHECK(std::abs(s.amplitudes(1) - Complex(std::cos(theta), 0.0)) < kStructuralTol);
    CHECK(std::abs(s.amplitudes(2) + std::conj(ep) * (std::sin(theta) / std::sqrt(2.0))) <
          kStructuralTol);
  }
}

TEST_CASE("pairwise overlaps follow the angle formula") {
  for (int trial = 0; trial < 50; ++trial) {
    const double ti = random_theta(), pi_ = random_phi();
    const double tj = random_theta(), pj = random_phi();
    Complex overlap = inner_product(prepare_two_photon_state(ti, pi_),
                                    prepare_two_photon_state(tj, pj));
    const double expected =
        std::cos(ti) * std::cos(tj) + std::sin(ti) * std::sin(tj) * std::cos(pj - pi_);
    CHECK(std::abs(overlap.imag()) < kStructuralTol);
    CHECK(std::abs(overlap.real() - expected) < kStructuralTol);
  }

  SUBCASE("pentagon settings are adjacent-orthogonal") {
    const double theta = std::acos(std::pow(5.0, -0.25));
    const double step = 4.0 * kPi / 5.0;
    for (int j = 0; j < 5; ++j) {
      Complex overlap = inner_product(prepare_two_photon_state(theta, step * j),
                                      prepare_two_photon_state(theta, step * (j + 1)));
      CHECK(std::abs(overlap) < 1e-13);
    }
  }
}

TEST_CASE("beam-splitter group composition") {
  BasisPtr b = enumerate_basis(2, 2);

  SUBCASE("same-axis angles add") {
    for (int trial = 0; trial < 20; ++trial) {
      const double t1 = random_theta(), t2 = random_theta();
      const double phi = random_phi();
      Matrix product = bs_unitary(b, {t1, phi}).matrix * bs_unitary(b, {t2, phi}).matrix;
      Matrix combined = bs_unitary(b, {t1 + t2, phi}).matrix;
      CHECK(max_abs_diff(product, combined) < kStructuralTol);
    }
  }

  SUBCASE("negated angle inverts") {
    const double theta = 1.234, phi = 0.777;
    Matrix u = bs_unitary(b, {theta, phi}).matrix;
    Matrix v = bs_unitary(b, {-theta, phi}).matrix;
    CHECK(max_abs_diff(u * v, Matrix::Identity(3, 3)) < kStructuralTol);
    CHECK(max_abs_diff(v, u.adjoint()) < kStructuralTol);
  }

  SUBCASE("canonical parameters generate the same unitary on an even sector") {
    std::uniform_real_distribution<double> wide(-10.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
      BeamSplitterParams p{wide(rng()), wide(rng())};
      BeamSplitterParams q = p.canonicalized();
      CHECK(q.theta >= 0.0);
      CHECK(q.theta <= kPi + 1e-12);
      CHECK(q.phi >= 0.0);
      CHECK(q.phi < 2.0 * kPi);
      CHECK(max_abs_diff(bs_unitary(b, p).matrix, bs_unitary(b, q).matrix) < kPhysicalTol);
    }
  }

  SUBCASE("sign flip with phase shift is exactly the same generator on any sector") {
    BasisPtr single = enumerate_basis(2, 1);
    for (int trial = 0; trial < 10; ++trial) {
      const double theta = random_theta(), phi = random_phi();
      Matrix h1 = bs_hamiltonian(single, {theta, phi}).matrix;
      Matrix h2 = bs_hamiltonian(single, {-theta, phi + kPi}).matrix;
      CHECK(max_abs_diff(h1, h2) < kStructuralTol);
    }
  }
}

TEST_CASE("state from a real direction") {
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d v = random_direction();
    BosonicState from_vec = bosonic_state_from_unit_vector(v);
    BosonicState from_angles =
        prepare_two_photon_state(std::acos(std::clamp(v.z(), -1.0, 1.0)),
                                 std::atan2(v.y(), v.x()));
    CHECK((from_vec.amplitudes - from_angles.amplitudes).cwiseAbs().maxCoeff() < kPhysicalTol);
  }

  SUBCASE("overlaps reproduce the euclidean inner product") {
    for (int trial = 0; trial < 30; ++trial) {
      Eigen::Vector3d u = random_direction(), v = random_direction();
      Complex overlap =
          inner_product(bosonic_state_from_unit_vector(u), bosonic_state_from_unit_vector(v));
      CHECK(std::abs(overlap - Complex(u.dot(v), 0.0)) < kStructuralTol);
    }
  }

  CHECK_THROWS_AS(bosonic_state_from_unit_vector(Eigen::Vector3d(1.0, 1.0, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("arm parity") {
  SUBCASE("two-mode two-photon values are exact") {
    LinearOperator p = parity_unitary(enumerate_basis(2, 2), ModeGrouping::two_mode());
    Matrix expected = Matrix::Zero(3, 3);
    expected(0, 0) = Complex(-1.0, 0.0);
    expected(1, 1) = Complex(1.0, 0.0);
    expected(2, 2) = Complex(-1.0, 0.0);
    CHECK(max_abs_diff(p.matrix, expected) == 0.0);
    CHECK(is_unitary(p));
    CHECK(is_hermitian(p));
  }

  SUBCASE("odd sectors give quarter turns and are not hermitian") {
    LinearOperator p = parity_unitary(enumerate_basis(2, 3), ModeGrouping::two_mode());
    // occupations (3,0), (2,1), (1,2), (0,3) have imbalances 3, 1, -1, -3
    CHECK(p.matrix(0, 0) == Complex(0.0, -1.0));
    CHECK(p.matrix(1, 1) == Complex(0.0, 1.0));
    CHECK(p.matrix(2, 2) == Complex(0.0, -1.0));
    CHECK(p.matrix(3, 3) == Complex(0.0, 1.0));
    CHECK(is_unitary(p));
    CHECK_FALSE(is_hermitian(p));
    CHECK_FALSE(is_hermitian(parity_unitary(enumerate_basis(2, 1), ModeGrouping::two_mode())));
  }

  SUBCASE("grouped parity on four modes") {
    BasisPtr b = enumerate_basis(4, 2);
    LinearOperator p = parity_unitary(b, ModeGrouping::polarization_pairs());
    CHECK(is_hermitian(p));
    for (int i = 0; i < b->dim(); ++i) {
      const Occupation& occ = b->state(i);
      const int diff = occ[0] + occ[1] - occ[2] - occ[3];
      const double expected = diff % 4 == 0 ? 1.0 : -1.0;
      CHECK(p.matrix(i, i) == Complex(expected, 0.0));
    }
  }

  SUBCASE("parity is the half-turn generated by the imbalance") {
    for (auto [m, n, grouping] :
         {std::tuple{2, 2, ModeGrouping::two_mode()}, {2, 4, ModeGrouping::two_mode()},
          {4, 2, ModeGrouping::polarization_pairs()}}) {
      BasisPtr b = enumerate_basis(m, n);
      LinearOperator sz = grouped_sz(b, grouping);
      LinearOperator rotated = evolution_unitary({b, -kPi * sz.matrix});
      CHECK(max_abs_diff(rotated.matrix, parity_unitary(b, grouping).matrix) < kStructuralTol);
    }
  }
}

TEST_CASE("polarization-blind splitter acts identically on both polarization blocks") {
  BasisPtr b = enumerate_basis(4, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = random_theta();
    const double phi = random_phi();
    LinearOperator u = grouped_bs_unitary(b, ModeGrouping::polarization_pairs(), theta, phi);
    CHECK(is_unitary(u));

    Eigen::Matrix3cd closed = qutrit_bs_matrix(theta, phi);
    const int hh[3] = {b->index_of({2, 0, 0, 0}), b->index_of({1, 0, 1, 0}),
                       b->index_of({0, 0, 2, 0})};
    const int vv[3] = {b->index_of({0, 2, 0, 0}), b->index_of({0, 1, 0, 1}),
                       b->index_of({0, 0, 0, 2})};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        CHECK(std::abs(u.matrix(hh[r], hh[c]) - closed(r, c)) < kStructuralTol);
        CHECK(std::abs(u.matrix(vv[r], vv[c]) - closed(r, c)) < kStructuralTol);
      }

    // the one-photon-per-arm H state evolves inside the H block
    for (int r = 0; r < b->dim(); ++r) {
      const bool in_block = r == hh[0] || r == hh[1] || r == hh[2];
      if (!in_block) CHECK(std::abs(u.matrix(r, hh[1])) < kStructuralTol);
    }
  }
}

TEST_CASE("spin operators obey the angular-momentum algebra") {
  for (int n = 1; n <= 6; ++n) {
    SpinOperators s = schwinger_spin_ops(n);
    const int d = s.sx.basis->dim();
    const Complex i_unit(0.0, 1.0);

    CHECK(max_abs_diff(s.sx.matrix * s.sy.matrix - s.sy.matrix * s.sx.matrix,
                       i_unit * s.sz.matrix) < kStructuralTol);
    CHECK(max_abs_diff(s.sy.matrix * s.sz.matrix - s.sz.matrix * s.sy.matrix,
                       i_unit * s.sx.matrix) < kStructuralTol);
    CHECK(max_abs_diff(s.sz.matrix * s.sx.matrix - s.sx.matrix * s.sz.matrix,
                       i_unit * s.sy.matrix) < kStructuralTol);

    const double j = 0.5 * n;
    Matrix casimir =
        s.sx.matrix * s.sx.matrix + s.sy.matrix * s.sy.matrix + s.sz.matrix * s.sz.matrix;
    CHECK(max_abs_diff(casimir, j * (j + 1.0) * Matrix::Identity(d, d)) < kStructuralTol);

    CHECK(is_hermitian(s.sx));
    CHECK(is_hermitian(s.sy));
    CHECK(is_hermitian(s.sz));
    for (int k = 0; k < d; ++k) {
      const Occupation& occ = s.sz.basis->state(k);
      CHECK(std::abs(s.sz.matrix(k, k) - Complex(0.5 * (occ[0] - occ[1]), 0.0)) <
            kStructuralTol);
    }
  }
}

TEST_CASE("evolution of hermitian generators") {
  BasisPtr b = enumerate_basis(2, 2);

  SUBCASE("zero generator gives the identity") {
    LinearOperator u = evolution_unitary({b, Matrix::Zero(3, 3)});
    CHECK(max_abs_diff(u.matrix, Matrix::Identity(3, 3)) < kStructuralTol);
  }

  SUBCASE("diagonal generators give pointwise phases") {
    Matrix h = Matrix::Zero(3, 3);
    h(0, 0) = 0.4;
    h(1, 1) = -1.1;
    h(2, 2) = 2.9;
    LinearOperator u = evolution_unitary({b, h});
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(u.matrix(i, i) - std::polar(1.0, -h(i, i).real())) < kStructuralTol);
  }

  SUBCASE("random generators give unitaries") {
    for (int trial = 0; trial < 10; ++trial) {
      Matrix raw = Matrix::Random(3, 3);
      LinearOperator u = evolution_unitary({b, raw + raw.adjoint()});
      CHECK(is_unitary(u));
    }
  }
}

TEST_CASE("grouping and parameter validation") {
  BasisPtr b4 = enumerate_basis(4, 2);
  CHECK(ModeGrouping::two_mode().is_partition_of(2));
  CHECK(ModeGrouping::polarization_pairs().is_partition_of(4));
  CHECK_FALSE(ModeGrouping::polarization_pairs().is_partition_of(3));
  const ModeGrouping doubled{{0, 0}, {1, 2}};
  CHECK_FALSE(doubled.is_partition_of(4));

  CHECK_THROWS_AS(grouped_bs_unitary(b4, ModeGrouping{{0}, {1}}, 0.3, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(grouped_bs_unitary(b4, ModeGrouping{{0}, {1, 2, 3}}, 0.3, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(bs_hamiltonian(enumerate_basis(2, 2), {0.3, 0.0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parity_unitary(b4, ModeGrouping::two_mode()), std::invalid_argument);
}
