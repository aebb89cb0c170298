#pragma once

#include <cmath>
#include <optional>

#include "fiberq/hermite_basis.hpp"
#include "fiberq/rng.hpp"
#include "fiberq/types.hpp"

namespace fiberq {

// A vector in a single factor space, expressed in its Hermite basis.
struct FactorVector {
  HermiteBasis basis;
  CVector coefficients;

  double norm() const { return coefficients.norm(); }
};

// State of the combined system as a coefficient matrix on the tensor
// product basis: amplitudes(m, i) multiplies h_m (first factor) tensor
// h_i (second factor). States are plain immutable values and are not kept
// normalized; norms are computed on demand.
struct TensorState {
  HermiteBasis basis_v;
  HermiteBasis basis_w;
  CMatrix amplitudes;  // flat_order(V) x flat_order(W)

  double norm() const { return amplitudes.norm(); }
  double norm_squared() const { return amplitudes.squaredNorm(); }
};

// The same state as a W-valued function sampled on the first factor's
// quadrature grid: row k holds the value at grid point k, expressed in the
// W basis. Column i, viewed as a function of the node, is the i-th
// component function.
struct FiberState {
  HermiteBasis basis_v;
  HermiteBasis basis_w;
  CMatrix values;  // flat_nodes(V) x flat_order(W)

  double norm_squared() const {
    return (basis_v.node_weights().array() * values.rowwise().squaredNorm().array()).sum();
  }
  double norm() const { return std::sqrt(norm_squared()); }
};

FactorVector basis_vector(const HermiteBasis& basis, int index);
FactorVector random_unit_vector(const HermiteBasis& basis, Rng& rng);

// psi tensor phi: amplitudes(m, i) = psi[m] * phi[i].
TensorState product_state(const FactorVector& psi, const FactorVector& phi);

// a*s1 + b*s2 without normalization.
TensorState superpose(Complex a, const TensorState& s1, Complex b, const TensorState& s2);

// Hilbert inner products, conjugate-linear in the first argument.
Complex inner_product_tensor(const TensorState& s1, const TensorState& s2);

// Quadrature inner product sum_k w_k <w1(x_k), w2(x_k)>_W; agrees with the
// component-function sum sum_i <c_i, c'_i> and, through the isomorphism,
// with inner_product_tensor of the preimages.
Complex inner_product_fiber(const FiberState& f1, const FiberState& f2);

// Normalized random state, deterministic for a fixed seed. When
// schmidt_rank is given the state is built as sum_r sigma_r u_r tensor v_r
// with random orthonormal factors and singular values bounded well away
// from zero, so the numerical Schmidt rank equals the request.
TensorState random_state(const HermiteBasis& basis_v, const HermiteBasis& basis_w,
                         std::uint64_t seed, std::optional<int> schmidt_rank = std::nullopt);

// Same construction driven by a caller-owned generator.
TensorState random_state(const HermiteBasis& basis_v, const HermiteBasis& basis_w, Rng& rng,
                         std::optional<int> schmidt_rank = std::nullopt);

// Random unitary on flat_order(basis) dimensions (QR of a complex Gaussian
// matrix); used by tests and by the invariance checks.
CMatrix random_unitary(int n, Rng& rng);

namespace detail {
void require_same_basis(const HermiteBasis& a, const HermiteBasis& b, const char* where);
}

}  // namespace fiberq
