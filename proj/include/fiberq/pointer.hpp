#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiberq/observables.hpp"
#include "fiberq/state.hpp"

namespace fiberq {

// Partition of the W basis indices into macroscopically distinguishable
// classes. Classes are disjoint, nonempty, and together cover every index;
// there is at least one class. Each class models one pointer position: a
// collection of basis states no macroscopic observation can tell apart.
class PointerPartition {
 public:
  // Throws std::invalid_argument unless `classes` is an exact partition of
  // {0, ..., flat_order-1} and `labels` has one entry per class.
  PointerPartition(HermiteBasis basis, std::vector<std::vector<int>> classes,
                   std::vector<std::string> labels);

  // Same, with labels auto-generated as "c0", "c1", ...
  PointerPartition(HermiteBasis basis, std::vector<std::vector<int>> classes);

  const HermiteBasis& basis() const { return basis_; }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int class_count() const { return static_cast<int>(classes_.size()); }

  // Class containing basis index i. Throws std::out_of_range.
  int class_of(int index) const;

 private:
  HermiteBasis basis_;
  std::vector<std::vector<int>> classes_;  // each sorted ascending
  std::vector<std::string> labels_;
  std::vector<int> class_of_;  // flat index -> class
};

// Positive atomic measure on the pointer classes: one nonnegative weight
// per class. This is the classical description a macroscopic observer can
// access; the indicator of class i is the measure with unit weight there.
struct ClassicalMeasure {
  PointerPartition partition;
  RVector weights;  // one per class, all >= 0

  double total_mass() const { return weights.sum(); }
};

// Macroscopic observable: constant value per pointer class. Its induced
// W-matrix is diagonal with Q(i, i) = class_values[class_of(i)], so its
// expectation is blind to every off-class-diagonal Gram entry.
struct MacroObservable {
  PointerPartition partition;
  RVector class_values;  // one per class
};

// The induced diagonal operator on W. Expectations of this observable and
// macro_expectation agree identically; the pair is the washout check.
Observable induced_observable(const MacroObservable& m);

// Classical shadow of a state: at each quadrature node of the first factor
// the W value collapses to a measure on the pointer classes. Total mass
// sum_k w_k * mass(mu_k) equals the source state's squared norm.
struct ClassicalFiberState {
  HermiteBasis basis_v;
  PointerPartition partition;
  std::vector<ClassicalMeasure> node_measures;  // one per flat node of basis_v

  double total_mass() const;
};

// Born-weight coarse-graining of a W vector: weight(c) = sum of |v[i]|^2
// over the indices of class c, so total mass = ||v||^2. Throws on basis
// mismatch.
ClassicalMeasure coarse_grain_vector(const FactorVector& v, const PointerPartition& p);

// Node-wise coarse-graining of the state's fiber values. Throws on basis
// mismatch.
ClassicalFiberState coarse_grain_state(const TensorState& s, const PointerPartition& p);

// Expectation of a macroscopic observable: sum_c q_c mu(c) / ||s||^2 with
// mu(c) = sum_k w_k mu_k(c), i.e. the classical mean over the coarse-grained
// state. Equals expectation_lifted of the induced diagonal observable.
// Throws on a zero state or basis mismatch.
double macro_expectation(const MacroObservable& m, const TensorState& s);

// A two-branch superposition alpha psi1 x phi1 + beta psi2 x phi2 with unit
// factors and orthogonal W branches; the configuration behind the
// entangled-vs-decomposable comparison.
struct EntangledBranches {
  FactorVector psi1, psi2;  // unit vectors on V
  FactorVector phi1, phi2;  // unit vectors on W, phi1 orthogonal to phi2
  Complex alpha, beta;

  TensorState assemble() const;
};

// Validating constructor: normalizes the four factors (throws on zero
// vectors, mismatched bases, non-orthogonal W branches, or alpha = beta = 0).
EntangledBranches make_branches(FactorVector psi1, FactorVector phi1, FactorVector psi2,
                                FactorVector phi2, Complex alpha, Complex beta);

// Branches with both W factors drawn inside one multi-element class of p
// (the largest), making them orthogonal yet macroscopically merged: no
// class-constant observable can separate the superposition from its
// decomposable surrogate, while microscopic diagonals still can. alpha =
// sqrt(alpha2), beta = sqrt(1 - alpha2) times a random phase. Throws if no
// class has at least two indices or alpha2 is outside [0, 1].
EntangledBranches random_merged_branches(const HermiteBasis& basis_v, const PointerPartition& p,
                                         double alpha2, Rng& rng);

// The decomposable state psi1 x (alpha phi1 + beta phi2). For every
// macroscopic observable whose classes separate phi1 from phi2 or merge
// them into one class, its macro expectations match the entangled
// superposition's exactly; only its Schmidt rank differs.
TensorState surrogate_decomposable(const EntangledBranches& b, const PointerPartition& p);

// Macroscopic observable with class values drawn uniformly from [-1, 1].
MacroObservable random_macro_observable(const PointerPartition& p, Rng& rng);

struct IndistinguishabilityTrial {
  double expectation_entangled;
  double expectation_surrogate;
};

// Outcome of the indistinguishability experiment: max deviation between
// entangled and surrogate macro expectations over random macroscopic
// observables, the two Schmidt ranks (2 vs 1 for genuine branches), and a
// microscopic positive control - a non-class-constant diagonal observable
// whose expectations do split the pair.
struct IndistinguishabilityReport {
  double max_deviation;
  int rank_entangled;
  int rank_surrogate;
  double positive_control_gap;
  RVector positive_control_values;  // diagonal entries of the control
  std::vector<IndistinguishabilityTrial> trials;
};

// Runs `trials` random macroscopic observables against the branch pair and
// its surrogate. Deterministic for a fixed seed. Throws if trials < 1.
IndistinguishabilityReport indistinguishability_report(const EntangledBranches& b,
                                                       const PointerPartition& p, int trials,
                                                       std::uint64_t seed);

}  // namespace fiberq
