#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fiberq/observables.hpp"

namespace fiberq {

// One projective outcome: the realized eigenvalue, its Born probability,
// and the reduced (projected and renormalized) state. Probabilities over a
// complete outcome set sum to one.
struct MeasurementOutcome {
  double eigenvalue;
  double probability;
  TensorState post_state;
};

// Eigenvalue / eigenprojector pair of a Hermitian observable.
struct SpectralComponent {
  double eigenvalue;
  CMatrix projector;  // orthogonal, idempotent; components sum to identity
};

// Spectral resolution with eigenvalues clustered when they fall within
// degeneracy_tol relative to the spectral diameter; a cluster's eigenvalue
// is the mean of its members. Components are ordered by eigenvalue.
std::vector<SpectralComponent> spectral_decompose(const Observable& q,
                                                  double degeneracy_tol = 1e-9);

// Projective measurement of the lift I ⊗ Q (second factor). For each
// eigenprojector P the probability is ||(I ⊗ P) s||^2 / ||s||^2 and the
// post state is the projection, renormalized. Outcomes with probability
// below 1e-14 are omitted. Throws on a zero state or basis mismatch.
//
// When the realized eigenspace is one-dimensional the post state is
// decomposable (Schmidt rank 1): measuring one factor with a nondegenerate
// observable collapses the combined system onto the product manifold.
std::vector<MeasurementOutcome> measure_second(const Observable& q, const TensorState& s);

// Mirror image for Q ⊗ I (first factor).
std::vector<MeasurementOutcome> measure_first(const Observable& q, const TensorState& s);

// n_shots independent draws from the measure_second distribution, as an
// eigenvalue -> count histogram. Deterministic for a fixed seed.
std::map<double, std::int64_t> sample_measurement(const Observable& q, const TensorState& s,
                                                  std::uint64_t seed, int n_shots);

}  // namespace fiberq
