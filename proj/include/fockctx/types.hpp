#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fockctx {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerance policy, shared by library checks and tests. Structural checks
// (unitarity, hermiticity) are tighter than physical equalities, which
// accumulate roundoff through operator compositions; branches whose
// probability falls below kImpossibleBranch are treated as impossible.
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kPhysicalTol = 1e-9;
inline constexpr double kRouteTol = 1e-8;
inline constexpr double kImpossibleBranch = 1e-12;

}  // namespace fockctx
