#pragma once

#include "fiberq/state.hpp"

namespace fiberq {

// Hermitian operator on one factor. The lift to the combined system
// (identity on the other factor) is implicit: expectations and
// measurements take the factor from context.
class Observable {
 public:
  // Throws std::invalid_argument if the matrix is not Hermitian to 1e-12
  // (max entrywise deviation) or does not match the basis dimension.
  Observable(HermiteBasis basis, CMatrix matrix);

  const HermiteBasis& basis() const { return basis_; }
  const CMatrix& matrix() const { return matrix_; }

  static Observable diagonal(const HermiteBasis& basis, const RVector& entries);

 private:
  HermiteBasis basis_;
  CMatrix matrix_;
};

// Gram matrix of the component functions, G(i, j) = <c_i, c_j> = (A* A)(i, j).
// Positive semidefinite with trace equal to the squared norm. This is also
// the reduced density matrix of the second factor; all lifted one-factor
// expectations are contractions against it.
CMatrix reduced_gram(const TensorState& s);

// The unnormalized quadratic form sum_ij Q(i, j) G(i, j); real for
// Hermitian Q and PSD G up to roundoff. Exposed so callers can probe how
// an expectation depends on individual Gram entries.
Complex gram_contraction(const Observable& q, const CMatrix& gram);

// Expectation of the lift of q acting on the second factor,
// <s, (I ⊗ Q) s> / <s, s>, evaluated through the component-function Gram
// matrix. Throws on a zero state or a basis mismatch.
double expectation_lifted(const Observable& q, const TensorState& s);

// Mirror image for the lift acting on the first factor, Q ⊗ I.
double expectation_lifted_first(const Observable& q, const TensorState& s);

// Free (non-interacting) evolution with both factors governed by the
// harmonic oscillator, which is diagonal in the Hermite basis: each
// amplitude picks up exp(-i (E_m + E_i) t). Unitary, and it maps
// decomposable states to decomposable states.
TensorState evolve_free(const TensorState& s, double t);

}  // namespace fiberq
