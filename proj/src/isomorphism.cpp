#include "fiberq/isomorphism.hpp"

#include <stdexcept>

namespace fiberq {

FiberState to_fiber(const TensorState& s) {
  return FiberState{s.basis_v, s.basis_w,
                    s.basis_v.eval_matrix().cast<Complex>() * s.amplitudes};
}

TensorState from_fiber(const FiberState& f) {
  const CMatrix weighted = f.basis_v.node_weights().cast<Complex>().asDiagonal() * f.values;
  return TensorState{f.basis_v, f.basis_w,
                     f.basis_v.eval_matrix().transpose().cast<Complex>() * weighted};
}

CVector component_function(const FiberState& f, int i) {
  if (i < 0 || i >= f.basis_w.flat_order()) {
    throw std::out_of_range("component_function: component index out of range");
  }
  return project_function(f.values.col(i), f.basis_v);
}

TensorState swap_factors(const TensorState& s) {
  return TensorState{s.basis_w, s.basis_v, s.amplitudes.transpose()};
}

}  // namespace fiberq
