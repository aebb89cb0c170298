#pragma once

#include <vector>

#include "fiberq/types.hpp"

namespace fiberq {

// Truncated orthonormal Hermite-function basis with a Gauss-Hermite
// quadrature grid. The stored weights absorb the Gaussian weight function,
// so L2 inner products of basis elements become plain weighted sums over
// the nodes:
//
//   sum_k weight[k] * h_i(node[k]) * h_j(node[k]) = delta_ij   for i,j < order
//
// whenever quad_nodes >= order. Basis functions are h_n(x) =
// H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)), the harmonic-oscillator
// eigenfunctions in natural units (hbar = m = omega = 1).
//
// Multidimensional bases are tensor products of the 1-D basis along each
// axis, flattened lexicographically (axis 0 slowest). Objects are immutable
// after construction and safe for concurrent shared reads.
class HermiteBasis {
 public:
  // Throws std::invalid_argument unless dim >= 1, order >= 1 and
  // quad_nodes >= order (fewer nodes than functions breaks discrete
  // orthonormality).
  HermiteBasis(int dim, int order, int quad_nodes);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int quad_nodes() const { return quad_nodes_; }

  // Flattened sizes: order^dim basis functions, quad_nodes^dim grid points.
  int flat_order() const { return flat_order_; }
  int flat_nodes() const { return flat_nodes_; }

  // Per-axis grid (strictly increasing nodes, strictly positive weights).
  const RVector& axis_nodes() const { return axis_nodes_; }
  const RVector& axis_weights() const { return axis_weights_; }

  // Flattened product weights, length flat_nodes().
  const RVector& node_weights() const { return node_weights_; }

  // Basis functions tabulated on the grid: (flat_nodes x flat_order) with
  // entry [k][n] = h_n evaluated at grid point k. Satisfies
  // eval^T * diag(node_weights) * eval = identity.
  const RMatrix& eval_matrix() const { return eval_; }

  // Harmonic-oscillator eigenvalue of flattened basis index n: the sum of
  // the per-axis quantum numbers plus dim/2.
  double oscillator_energy(int flat_index) const;

  // Bases compare equal when their descriptors do; grids are a pure
  // function of the descriptor.
  bool operator==(const HermiteBasis& other) const {
    return dim_ == other.dim_ && order_ == other.order_ && quad_nodes_ == other.quad_nodes_;
  }
  bool operator!=(const HermiteBasis& other) const { return !(*this == other); }

 private:
  int dim_;
  int order_;
  int quad_nodes_;
  int flat_order_;
  int flat_nodes_;
  RVector axis_nodes_;
  RVector axis_weights_;
  RVector node_weights_;
  RMatrix eval_;
};

// Convenience factory; quad_nodes defaults to 2*order, which leaves
// quadrature headroom for observable sandwiches h_i * Q * h_j.
HermiteBasis make_basis(int dim, int order, int quad_nodes = 0);

// n-th orthonormal Hermite function via the stable three-term recurrence;
// requires n >= 0. Bounded by 1 in magnitude for all real x.
double eval_hermite_function(int n, double x);

// Values h_0(x) .. h_{order-1}(x) in one recurrence sweep.
RVector hermite_function_values(int order, double x);

// Discrete L2 projection of samples given at the grid points:
// c_n = sum_k weight[k] * h_n(node[k]) * samples[k]. Exact for functions in
// the truncated span. Throws on a length mismatch with the grid.
CVector project_function(const CVector& samples, const HermiteBasis& basis);

// Evaluates a coefficient vector back on the grid; inverse of
// project_function on the truncated span.
CVector synthesize_function(const CVector& coeffs, const HermiteBasis& basis);

}  // namespace fiberq
