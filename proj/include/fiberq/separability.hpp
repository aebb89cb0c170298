#pragma once

#include <optional>

#include "fiberq/state.hpp"

namespace fiberq {

// Schmidt structure of the amplitude matrix: A = left * diag(sigma) * right^†
// with orthonormal columns on both sides and sigma descending. The count of
// singular values above tolerance is the Schmidt rank; rank one is exactly
// decomposability.
struct SchmidtDecomposition {
  RVector singular_values;  // descending, nonnegative
  CMatrix left;             // flat_order(V) x r
  CMatrix right;            // flat_order(W) x r
};

struct DecomposabilityResult {
  bool decomposable;
  // Witness factors with product_state(psi, phi) reproducing the state to
  // tol * ||s||; present only when decomposable. The gauge is fixed by
  // making the largest-magnitude entry of phi real and positive.
  std::optional<FactorVector> psi;
  std::optional<FactorVector> phi;
};

// Throws std::invalid_argument on a zero state.
SchmidtDecomposition schmidt_decompose(const TensorState& s);

// Number of singular values >= tol * sigma_0. The threshold is relative so
// the answer is scale invariant; a value exactly at the threshold counts
// (ties resolve toward entanglement).
int schmidt_rank(const TensorState& s, double tol = kRankTol);

// Numerical rank of the matrix of weighted fiber values (row k scaled by
// sqrt(w_k)). The scaling makes its singular values coincide with the
// Schmidt singular values of the preimage, so this equals
// schmidt_rank(from_fiber(f), tol): a fiber's values span a one-dimensional
// subspace of W exactly when the state is decomposable.
int value_span_rank(const FiberState& f, double tol = kRankTol);

// Rank-1 test plus witness extraction.
DecomposabilityResult is_decomposable(const TensorState& s, double tol = kRankTol);

}  // namespace fiberq
