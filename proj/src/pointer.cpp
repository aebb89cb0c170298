#include "fiberq/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "fiberq/isomorphism.hpp"
#include "fiberq/separability.hpp"

namespace fiberq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t c = 0; c < n; ++c) labels.push_back("c" + std::to_string(c));
  return labels;
}

FactorVector normalized_copy(const FactorVector& v, const char* where) {
  const double n = v.norm();
  if (n == 0.0) throw std::invalid_argument(std::string(where) + ": zero factor vector");
  return {v.basis, v.coefficients / n};
}

}  // namespace

PointerPartition::PointerPartition(HermiteBasis basis, std::vector<std::vector<int>> classes,
                                   std::vector<std::string> labels)
    : basis_(std::move(basis)), classes_(std::move(classes)), labels_(std::move(labels)) {
  if (classes_.empty()) throw std::invalid_argument("PointerPartition: no classes");
  if (labels_.size() != classes_.size())
    throw std::invalid_argument("PointerPartition: one label per class required");
  const int flat = basis_.flat_order();
  class_of_.assign(flat, -1);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    auto& cls = classes_[c];
    if (cls.empty()) throw std::invalid_argument("PointerPartition: empty class");
    std::sort(cls.begin(), cls.end());
    for (int i : cls) {
      if (i < 0 || i >= flat)
        throw std::invalid_argument("PointerPartition: index " + std::to_string(i) +
                                    " outside basis of order " + std::to_string(flat));
      if (class_of_[i] != -1)
        throw std::invalid_argument("PointerPartition: index " + std::to_string(i) +
                                    " appears in two classes");
      class_of_[i] = static_cast<int>(c);
    }
  }
  for (int i = 0; i < flat; ++i)
    if (class_of_[i] == -1)
      throw std::invalid_argument("PointerPartition: index " + std::to_string(i) +
                                  " not covered by any class");
}

PointerPartition::PointerPartition(HermiteBasis basis, std::vector<std::vector<int>> classes)
    // `classes` is passed by copy: moving it here would race the
    // default_labels(classes.size()) argument (evaluation order unspecified).
    : PointerPartition(std::move(basis), classes, default_labels(classes.size())) {}

int PointerPartition::class_of(int index) const {
  if (index < 0 || index >= static_cast<int>(class_of_.size()))
    throw std::out_of_range("PointerPartition::class_of: index " + std::to_string(index));
  return class_of_[index];
}

Observable induced_observable(const MacroObservable& m) {
  const int flat = m.partition.basis().flat_order();
  RVector diag(flat);
  for (int i = 0; i < flat; ++i) diag[i] = m.class_values[m.partition.class_of(i)];
  return Observable::diagonal(m.partition.basis(), diag);
}

double ClassicalFiberState::total_mass() const {
  const RVector& w = basis_v.node_weights();
  double mass = 0.0;
  for (int k = 0; k < static_cast<int>(node_measures.size()); ++k)
    mass += w[k] * node_measures[k].total_mass();
  return mass;
}

ClassicalMeasure coarse_grain_vector(const FactorVector& v, const PointerPartition& p) {
  detail::require_same_basis(v.basis, p.basis(), "coarse_grain_vector");
  RVector weights = RVector::Zero(p.class_count());
  for (int i = 0; i < v.coefficients.size(); ++i)
    weights[p.class_of(i)] += std::norm(v.coefficients[i]);
  return {p, weights};
}

ClassicalFiberState coarse_grain_state(const TensorState& s, const PointerPartition& p) {
  detail::require_same_basis(s.basis_w, p.basis(), "coarse_grain_state");
  const FiberState f = to_fiber(s);
  ClassicalFiberState out{s.basis_v, p, {}};
  out.node_measures.reserve(f.values.rows());
  for (int k = 0; k < f.values.rows(); ++k)
    out.node_measures.push_back(
        coarse_grain_vector({s.basis_w, f.values.row(k).transpose()}, p));
  return out;
}

double macro_expectation(const MacroObservable& m, const TensorState& s) {
  detail::require_same_basis(s.basis_w, m.partition.basis(), "macro_expectation");
  const double norm2 = s.norm_squared();
  if (norm2 == 0.0) throw std::invalid_argument("macro_expectation: zero state");
  const FiberState f = to_fiber(s);
  // Per-component quadrature mass, then pooled by class: the classical mean
  // over the coarse-grained state, no Gram off-diagonals anywhere.
  const RVector component_mass =
      (s.basis_v.node_weights().asDiagonal() * f.values.cwiseAbs2()).colwise().sum();
  double expectation = 0.0;
  for (int i = 0; i < component_mass.size(); ++i)
    expectation += m.class_values[m.partition.class_of(i)] * component_mass[i];
  return expectation / norm2;
}

TensorState EntangledBranches::assemble() const {
  return superpose(alpha, product_state(psi1, phi1), beta, product_state(psi2, phi2));
}

EntangledBranches make_branches(FactorVector psi1, FactorVector phi1, FactorVector psi2,
                                FactorVector phi2, Complex alpha, Complex beta) {
  detail::require_same_basis(psi1.basis, psi2.basis, "make_branches (first factor)");
  detail::require_same_basis(phi1.basis, phi2.basis, "make_branches (second factor)");
  if (alpha == Complex(0.0) && beta == Complex(0.0))
    throw std::invalid_argument("make_branches: both amplitudes vanish");
  EntangledBranches b{normalized_copy(psi1, "make_branches"),
                      normalized_copy(psi2, "make_branches"),
                      normalized_copy(phi1, "make_branches"),
                      normalized_copy(phi2, "make_branches"), alpha, beta};
  const double overlap = std::abs(b.phi1.coefficients.dot(b.phi2.coefficients));
  if (overlap > kEqualityTol)
    throw std::invalid_argument("make_branches: second factors not orthogonal (|<phi1, phi2>| = " +
                                std::to_string(overlap) + ")");
  return b;
}

EntangledBranches random_merged_branches(const HermiteBasis& basis_v, const PointerPartition& p,
                                         double alpha2, Rng& rng) {
  if (!(alpha2 >= 0.0 && alpha2 <= 1.0))
    throw std::invalid_argument("random_merged_branches: alpha2 must lie in [0, 1]");
  const auto& classes = p.classes();
  const auto host = std::max_element(
      classes.begin(), classes.end(),
      [](const auto& a, const auto& b) { return a.size() < b.size(); });
  if (host->size() < 2)
    throw std::invalid_argument(
        "random_merged_branches: partition needs a class with at least two indices");

  FactorVector psi1 = random_unit_vector(basis_v, rng);
  FactorVector psi2 = random_unit_vector(basis_v, rng);

  const int flat_w = p.basis().flat_order();
  auto draw_in_class = [&]() {
    CVector v = CVector::Zero(flat_w);
    for (int i : *host) v[i] = Complex(rng.normal(), rng.normal());
    return v;
  };
  CVector phi1 = draw_in_class();
  phi1 /= phi1.norm();
  CVector phi2 = draw_in_class();
  phi2 -= phi1 * phi1.dot(phi2);
  phi2 /= phi2.norm();

  const Complex alpha = std::sqrt(alpha2);
  const Complex beta =
      std::sqrt(1.0 - alpha2) * std::exp(Complex(0.0, rng.uniform(0.0, kTwoPi)));
  return make_branches(psi1, {p.basis(), phi1}, psi2, {p.basis(), phi2}, alpha, beta);
}

TensorState surrogate_decomposable(const EntangledBranches& b, const PointerPartition& p) {
  detail::require_same_basis(b.phi1.basis, p.basis(), "surrogate_decomposable");
  if (b.alpha == Complex(0.0) && b.beta == Complex(0.0))
    throw std::invalid_argument("surrogate_decomposable: both amplitudes vanish");
  const FactorVector psi = normalized_copy(b.psi1, "surrogate_decomposable");
  const FactorVector phi1 = normalized_copy(b.phi1, "surrogate_decomposable");
  const FactorVector phi2 = normalized_copy(b.phi2, "surrogate_decomposable");
  const double overlap = std::abs(phi1.coefficients.dot(phi2.coefficients));
  if (overlap > kEqualityTol)
    throw std::invalid_argument("surrogate_decomposable: second factors not orthogonal");
  return product_state(psi, {phi1.basis, b.alpha * phi1.coefficients +
                                             b.beta * phi2.coefficients});
}

MacroObservable random_macro_observable(const PointerPartition& p, Rng& rng) {
  RVector values(p.class_count());
  for (int c = 0; c < p.class_count(); ++c) values[c] = rng.uniform(-1.0, 1.0);
  return {p, values};
}

IndistinguishabilityReport indistinguishability_report(const EntangledBranches& b,
                                                       const PointerPartition& p, int trials,
                                                       std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("indistinguishability_report: trials must be >= 1");
  const TensorState entangled = b.assemble();
  const TensorState surrogate = surrogate_decomposable(b, p);

  IndistinguishabilityReport report;
  report.rank_entangled = schmidt_rank(entangled);
  report.rank_surrogate = schmidt_rank(surrogate);
  report.max_deviation = 0.0;
  report.trials.reserve(trials);

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const MacroObservable m = random_macro_observable(p, rng);
    const double e_ent = macro_expectation(m, entangled);
    const double e_sur = macro_expectation(m, surrogate);
    report.trials.push_back({e_ent, e_sur});
    report.max_deviation = std::max(report.max_deviation, std::abs(e_ent - e_sur));
  }

  // Microscopic positive control. The two expectations differ, entry by
  // entry of the Gram diagonal, by 2 Re(K z_i) with
  // K = conj(alpha) beta (<psi1, psi2> - 1) / ||s||^2 and
  // z_i = conj(phi1[i]) phi2[i]; the diagonal q_i = sign(Re(K z_i))
  // collects every term with its sign, the largest gap any [-1, 1]-valued
  // diagonal can reach. The Re(K z_i) sum to zero within each class (the
  // class overlaps vanish), so a nonvanishing control always mixes signs
  // inside a class: it is never class-constant.
  const Complex psi_overlap = b.psi1.coefficients.dot(b.psi2.coefficients);
  const Complex k_factor =
      std::conj(b.alpha) * b.beta * (psi_overlap - 1.0) / entangled.norm_squared();
  RVector control(p.basis().flat_order());
  for (int i = 0; i < control.size(); ++i) {
    const double term =
        (k_factor * std::conj(b.phi1.coefficients[i]) * b.phi2.coefficients[i]).real();
    control[i] = term > 0.0 ? 1.0 : (term < 0.0 ? -1.0 : 0.0);
  }
  report.positive_control_values = control;
  const Observable control_obs = Observable::diagonal(p.basis(), control);
  report.positive_control_gap = std::abs(expectation_lifted(control_obs, entangled) -
                                         expectation_lifted(control_obs, surrogate));
  return report;
}

}  // namespace fiberq
