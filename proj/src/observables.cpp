#include "fiberq/observables.hpp"

#include <stdexcept>

namespace fiberq {

Observable::Observable(HermiteBasis basis, CMatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != basis_.flat_order() || matrix_.cols() != basis_.flat_order()) {
    throw std::invalid_argument("Observable: matrix shape does not match the basis");
  }
  const double dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12) {
    throw std::invalid_argument("Observable: matrix is not Hermitian (max deviation " +
                                std::to_string(dev) + ")");
  }
}

Observable Observable::diagonal(const HermiteBasis& basis, const RVector& entries) {
  if (entries.size() != basis.flat_order()) {
    throw std::invalid_argument("Observable::diagonal: entry count does not match the basis");
  }
  CMatrix m = CMatrix::Zero(entries.size(), entries.size());
  m.diagonal() = entries.cast<Complex>();
  return Observable(basis, std::move(m));
}

CMatrix reduced_gram(const TensorState& s) {
  return s.amplitudes.adjoint() * s.amplitudes;
}

Complex gram_contraction(const Observable& q, const CMatrix& gram) {
  return q.matrix().cwiseProduct(gram).sum();
}

double expectation_lifted(const Observable& q, const TensorState& s) {
  detail::require_same_basis(q.basis(), s.basis_w, "expectation_lifted");
  const double norm2 = s.norm_squared();
  if (norm2 == 0.0) throw std::invalid_argument("expectation_lifted: zero state");
  return gram_contraction(q, reduced_gram(s)).real() / norm2;
}

double expectation_lifted_first(const Observable& q, const TensorState& s) {
  detail::require_same_basis(q.basis(), s.basis_v, "expectation_lifted_first");
  const double norm2 = s.norm_squared();
  if (norm2 == 0.0) throw std::invalid_argument("expectation_lifted_first: zero state");
  // <s, (Q ⊗ I) s> = tr(Q A A*).
  return (q.matrix() * (s.amplitudes * s.amplitudes.adjoint())).trace().real() / norm2;
}

TensorState evolve_free(const TensorState& s, double t) {
  const int nv = s.basis_v.flat_order();
  const int nw = s.basis_w.flat_order();
  CVector phase_v(nv), phase_w(nw);
  for (int m = 0; m < nv; ++m) phase_v[m] = std::polar(1.0, -s.basis_v.oscillator_energy(m) * t);
  for (int i = 0; i < nw; ++i) phase_w[i] = std::polar(1.0, -s.basis_w.oscillator_energy(i) * t);
  return TensorState{s.basis_v, s.basis_w,
                     phase_v.asDiagonal() * s.amplitudes * phase_w.asDiagonal()};
}

}  // namespace fiberq
