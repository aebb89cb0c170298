#pragma once

#include "fiberq/state.hpp"

namespace fiberq {

// The unitary identification between the tensor-product picture and the
// vector-valued (fiber) picture. Both directions are dense linear maps
// through the first factor's quadrature grid:
//
//   forward:  w(x_k)[i] = sum_m A(m, i) h_m(x_k)
//   inverse:  A(m, i)   = sum_k w_k h_m(x_k) w(x_k)[i]
//
// The inverse is exact on the truncated span because the grid integrates
// products of basis functions exactly. A decomposable state psi tensor phi
// maps to the fiber whose value at every node is psi(x_k) * phi.
FiberState to_fiber(const TensorState& s);
TensorState from_fiber(const FiberState& f);

// The i-th component function of the fiber, as a coefficient vector on the
// first factor's basis. Stacking all components column-by-column recovers
// the tensor amplitudes; this is the direct-sum view of the fiber space.
CVector component_function(const FiberState& f, int i);

// The mirrored identification (first factor treated as the value space):
// exchanges the two factors by transposing the amplitude matrix.
TensorState swap_factors(const TensorState& s);

}  // namespace fiberq
