#include "fiberq/hermite_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fiberq {

namespace {

constexpr double kPi = 3.141592653589793238462643;

// Gauss-Hermite abscissae by Golub-Welsch: eigenvalues of the symmetric
// tridiagonal Jacobi matrix for the physicists' weight exp(-x^2), whose
// off-diagonal entries are sqrt(k/2).
RVector gauss_hermite_nodes(int n) {
  if (n == 1) return RVector::Zero(1);
  RVector diag = RVector::Zero(n);
  RVector subdiag(n - 1);
  for (int k = 1; k < n; ++k) subdiag[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<RMatrix> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();  // ascending
}

}  // namespace

double eval_hermite_function(int n, double x) {
  if (n < 0) throw std::invalid_argument("eval_hermite_function: n must be >= 0");
  double h_prev = 0.0;
  double h = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 1; k <= n; ++k) {
    const double h_next = std::sqrt(2.0 / k) * x * h - std::sqrt((k - 1.0) / k) * h_prev;
    h_prev = h;
    h = h_next;
  }
  return h;
}

RVector hermite_function_values(int order, double x) {
  RVector values(order);
  double h_prev = 0.0;
  double h = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < order; ++k) {
    values[k] = h;
    const double h_next =
        std::sqrt(2.0 / (k + 1.0)) * x * h - std::sqrt(k / (k + 1.0)) * h_prev;
    h_prev = h;
    h = h_next;
  }
  return values;
}

HermiteBasis::HermiteBasis(int dim, int order, int quad_nodes)
    : dim_(dim), order_(order), quad_nodes_(quad_nodes) {
  if (dim < 1) throw std::invalid_argument("HermiteBasis: dim must be >= 1");
  if (order < 1) throw std::invalid_argument("HermiteBasis: order must be >= 1");
  if (quad_nodes < order) {
    throw std::invalid_argument(
        "HermiteBasis: quad_nodes must be >= order (got " + std::to_string(quad_nodes) +
        " nodes for order " + std::to_string(order) + ")");
  }

  axis_nodes_ = gauss_hermite_nodes(quad_nodes);

  // Basis functions already carry the Gaussian, so the classical weights
  // are rescaled by exp(x_k^2). That factor is computed stably through the
  // Christoffel identity 1 / sum_n h_n(x_k)^2 rather than by exponentiating.
  RMatrix axis_eval(quad_nodes, order);
  axis_weights_.resize(quad_nodes);
  for (int k = 0; k < quad_nodes; ++k) {
    const RVector h = hermite_function_values(quad_nodes, axis_nodes_[k]);
    axis_eval.row(k) = h.head(order).transpose();
    axis_weights_[k] = 1.0 / h.squaredNorm();
  }

  flat_order_ = 1;
  flat_nodes_ = 1;
  for (int a = 0; a < dim; ++a) {
    flat_order_ *= order;
    flat_nodes_ *= quad_nodes;
  }

  if (dim == 1) {
    eval_ = axis_eval;
    node_weights_ = axis_weights_;
    return;
  }

  // Lexicographic tensor grid: axis 0 varies slowest, matching a repeated
  // Kronecker product of the per-axis tables.
  eval_ = axis_eval;
  node_weights_ = axis_weights_;
  for (int a = 1; a < dim; ++a) {
    RMatrix next(eval_.rows() * quad_nodes, eval_.cols() * order);
    RVector next_weights(node_weights_.size() * quad_nodes);
    for (Eigen::Index r = 0; r < eval_.rows(); ++r) {
      for (Eigen::Index c = 0; c < eval_.cols(); ++c) {
        next.block(r * quad_nodes, c * order, quad_nodes, order) = eval_(r, c) * axis_eval;
      }
      next_weights.segment(r * quad_nodes, quad_nodes) = node_weights_[r] * axis_weights_;
    }
    eval_ = std::move(next);
    node_weights_ = std::move(next_weights);
  }
}

double HermiteBasis::oscillator_energy(int flat_index) const {
  if (flat_index < 0 || flat_index >= flat_order_) {
    throw std::out_of_range("oscillator_energy: basis index out of range");
  }
  int sum = 0;
  int rest = flat_index;
  for (int a = 0; a < dim_; ++a) {
    sum += rest % order_;
    rest /= order_;
  }
  return sum + 0.5 * dim_;
}

HermiteBasis make_basis(int dim, int order, int quad_nodes) {
  return HermiteBasis(dim, order, quad_nodes > 0 ? quad_nodes : 2 * order);
}

CVector project_function(const CVector& samples, const HermiteBasis& basis) {
  if (samples.size() != basis.flat_nodes()) {
    throw std::invalid_argument("project_function: sample count does not match the grid");
  }
  return basis.eval_matrix().transpose().cast<Complex>() *
         basis.node_weights().cast<Complex>().cwiseProduct(samples);
}

CVector synthesize_function(const CVector& coeffs, const HermiteBasis& basis) {
  if (coeffs.size() != basis.flat_order()) {
    throw std::invalid_argument("synthesize_function: coefficient count does not match the basis");
  }
  return basis.eval_matrix().cast<Complex>() * coeffs;
}

}  // namespace fiberq
