#include "fiberq/separability.hpp"

#include <stdexcept>

namespace fiberq {

namespace {

int rank_from_singular_values(const RVector& sigma, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("rank tolerance must be positive");
  const double cutoff = tol * sigma[0];
  int rank = 0;
  for (Eigen::Index r = 0; r < sigma.size(); ++r) {
    if (sigma[r] >= cutoff) ++rank;
  }
  return rank;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const TensorState& s) {
  if (s.norm_squared() == 0.0) throw std::invalid_argument("schmidt_decompose: zero state");
  Eigen::JacobiSVD<CMatrix> svd(s.amplitudes, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SchmidtDecomposition{svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

int schmidt_rank(const TensorState& s, double tol) {
  return rank_from_singular_values(schmidt_decompose(s).singular_values, tol);
}

int value_span_rank(const FiberState& f, double tol) {
  if (f.values.squaredNorm() == 0.0) throw std::invalid_argument("value_span_rank: zero fiber");
  const CMatrix weighted =
      f.basis_v.node_weights().cwiseSqrt().cast<Complex>().asDiagonal() * f.values;
  Eigen::JacobiSVD<CMatrix> svd(weighted);
  return rank_from_singular_values(svd.singularValues(), tol);
}

DecomposabilityResult is_decomposable(const TensorState& s, double tol) {
  const SchmidtDecomposition schmidt = schmidt_decompose(s);
  if (rank_from_singular_values(schmidt.singular_values, tol) != 1) {
    return DecomposabilityResult{false, std::nullopt, std::nullopt};
  }

  // A = sigma_0 u_0 v_0^†, so the second factor carries conj(v_0). Split the
  // weight evenly and rotate the reciprocal phase pair so phi's
  // largest-magnitude entry is real positive.
  const double scale = std::sqrt(schmidt.singular_values[0]);
  CVector psi = scale * schmidt.left.col(0);
  CVector phi = scale * schmidt.right.col(0).conjugate();

  Eigen::Index peak = 0;
  phi.cwiseAbs().maxCoeff(&peak);
  const Complex gauge = phi[peak] / std::abs(phi[peak]);
  phi *= std::conj(gauge);
  psi *= gauge;

  return DecomposabilityResult{true, FactorVector{s.basis_v, std::move(psi)},
                               FactorVector{s.basis_w, std::move(phi)}};
}

}  // namespace fiberq
