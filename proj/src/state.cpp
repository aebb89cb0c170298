#include "fiberq/state.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace fiberq {

namespace detail {
void require_same_basis(const HermiteBasis& a, const HermiteBasis& b, const char* where) {
  if (a != b) {
    throw std::invalid_argument(std::string(where) + ": basis mismatch (dim/order/quad_nodes " +
                                std::to_string(a.dim()) + "/" + std::to_string(a.order()) + "/" +
                                std::to_string(a.quad_nodes()) + " vs " + std::to_string(b.dim()) +
                                "/" + std::to_string(b.order()) + "/" +
                                std::to_string(b.quad_nodes()) + ")");
  }
}
}  // namespace detail

FactorVector basis_vector(const HermiteBasis& basis, int index) {
  if (index < 0 || index >= basis.flat_order()) {
    throw std::out_of_range("basis_vector: index out of range");
  }
  CVector c = CVector::Zero(basis.flat_order());
  c[index] = 1.0;
  return FactorVector{basis, std::move(c)};
}

FactorVector random_unit_vector(const HermiteBasis& basis, Rng& rng) {
  CVector c(basis.flat_order());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Complex(rng.normal(), rng.normal());
  c /= c.norm();
  return FactorVector{basis, std::move(c)};
}

TensorState product_state(const FactorVector& psi, const FactorVector& phi) {
  return TensorState{psi.basis, phi.basis, psi.coefficients * phi.coefficients.transpose()};
}

TensorState superpose(Complex a, const TensorState& s1, Complex b, const TensorState& s2) {
  detail::require_same_basis(s1.basis_v, s2.basis_v, "superpose");
  detail::require_same_basis(s1.basis_w, s2.basis_w, "superpose");
  return TensorState{s1.basis_v, s1.basis_w, a * s1.amplitudes + b * s2.amplitudes};
}

Complex inner_product_tensor(const TensorState& s1, const TensorState& s2) {
  detail::require_same_basis(s1.basis_v, s2.basis_v, "inner_product_tensor");
  detail::require_same_basis(s1.basis_w, s2.basis_w, "inner_product_tensor");
  return (s1.amplitudes.conjugate().cwiseProduct(s2.amplitudes)).sum();
}

Complex inner_product_fiber(const FiberState& f1, const FiberState& f2) {
  detail::require_same_basis(f1.basis_v, f2.basis_v, "inner_product_fiber");
  detail::require_same_basis(f1.basis_w, f2.basis_w, "inner_product_fiber");
  const RVector& w = f1.basis_v.node_weights();
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < f1.values.rows(); ++k) {
    // Eigen's dot conjugates its left operand, matching our convention.
    acc += w[k] * f1.values.row(k).dot(f2.values.row(k));
  }
  return acc;
}

CMatrix random_unitary(int n, Rng& rng) {
  CMatrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

TensorState random_state(const HermiteBasis& basis_v, const HermiteBasis& basis_w,
                         std::uint64_t seed, std::optional<int> schmidt_rank) {
  Rng rng(seed);
  return random_state(basis_v, basis_w, rng, schmidt_rank);
}

TensorState random_state(const HermiteBasis& basis_v, const HermiteBasis& basis_w, Rng& rng,
                         std::optional<int> schmidt_rank) {
  const int nv = basis_v.flat_order();
  const int nw = basis_w.flat_order();

  if (!schmidt_rank) {
    CMatrix a(nv, nw);
    for (int r = 0; r < nv; ++r) {
      for (int c = 0; c < nw; ++c) a(r, c) = Complex(rng.normal(), rng.normal());
    }
    a /= a.norm();
    return TensorState{basis_v, basis_w, std::move(a)};
  }

  const int rank = *schmidt_rank;
  if (rank < 1 || rank > std::min(nv, nw)) {
    throw std::invalid_argument("random_state: schmidt_rank must lie in [1, min(N_V, N_W)]");
  }

  // Random orthonormal factor sets via thin QR.
  const auto orthonormal_columns = [&rng](int n, int r) {
    CMatrix g(n, r);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < r; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    return CMatrix(qr.householderQ() * CMatrix::Identity(n, r));
  };
  const CMatrix u = orthonormal_columns(nv, rank);
  const CMatrix v = orthonormal_columns(nw, rank);

  // Singular values drawn from [0.5, 1] keep the planted rank numerically
  // unambiguous after normalization.
  RVector sigma(rank);
  for (int r = 0; r < rank; ++r) sigma[r] = rng.uniform(0.5, 1.0);
  std::sort(sigma.data(), sigma.data() + rank, std::greater<double>());
  sigma /= sigma.norm();

  CMatrix a = u * sigma.cast<Complex>().asDiagonal() * v.transpose();
  return TensorState{basis_v, basis_w, std::move(a)};
}

}  // namespace fiberq
