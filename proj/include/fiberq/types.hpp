#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fiberq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Default tolerances used across the library: one for floating-point
// equality checks, one for relative numerical-rank cutoffs.
inline constexpr double kEqualityTol = 1e-10;
inline constexpr double kRankTol = 1e-8;

}  // namespace fiberq
