#include "fiberq/measurement.hpp"

#include <stdexcept>

#include "fiberq/rng.hpp"

namespace fiberq {

namespace {

constexpr double kOutcomeFloor = 1e-14;

std::vector<MeasurementOutcome> measure_with_lift(const Observable& q, const TensorState& s,
                                                  bool second_factor) {
  const double norm2 = s.norm_squared();
  if (norm2 == 0.0) throw std::invalid_argument("measure: zero state");

  std::vector<MeasurementOutcome> outcomes;
  for (const SpectralComponent& component : spectral_decompose(q)) {
    // (I ⊗ P) right-multiplies the amplitudes by P^T; (P ⊗ I) left-multiplies by P.
    CMatrix projected = second_factor ? CMatrix(s.amplitudes * component.projector.transpose())
                                      : CMatrix(component.projector * s.amplitudes);
    const double weight = projected.squaredNorm();
    const double probability = weight / norm2;
    if (probability < kOutcomeFloor) continue;
    projected /= std::sqrt(weight);
    outcomes.push_back(MeasurementOutcome{component.eigenvalue, probability,
                                          TensorState{s.basis_v, s.basis_w, std::move(projected)}});
  }
  return outcomes;
}

}  // namespace

std::vector<SpectralComponent> spectral_decompose(const Observable& q, double degeneracy_tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(q.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectral_decompose: eigensolver failed");
  }
  const RVector& eigenvalues = solver.eigenvalues();  // ascending
  const CMatrix& vectors = solver.eigenvectors();
  const int n = static_cast<int>(eigenvalues.size());

  // Relative clustering scale: the spectral diameter, with the magnitude
  // floor so a fully degenerate spectrum still collapses to one component.
  const double diameter = eigenvalues[n - 1] - eigenvalues[0];
  const double scale = std::max({diameter, std::abs(eigenvalues[0]),
                                 std::abs(eigenvalues[n - 1]), 1e-300});
  const double cluster_gap = degeneracy_tol * scale;

  std::vector<SpectralComponent> components;
  int begin = 0;
  while (begin < n) {
    int end = begin + 1;
    while (end < n && eigenvalues[end] - eigenvalues[end - 1] <= cluster_gap) ++end;
    const auto block = vectors.middleCols(begin, end - begin);
    components.push_back(SpectralComponent{
        eigenvalues.segment(begin, end - begin).mean(), block * block.adjoint()});
    begin = end;
  }
  return components;
}

std::vector<MeasurementOutcome> measure_second(const Observable& q, const TensorState& s) {
  detail::require_same_basis(q.basis(), s.basis_w, "measure_second");
  return measure_with_lift(q, s, /*second_factor=*/true);
}

std::vector<MeasurementOutcome> measure_first(const Observable& q, const TensorState& s) {
  detail::require_same_basis(q.basis(), s.basis_v, "measure_first");
  return measure_with_lift(q, s, /*second_factor=*/false);
}

std::map<double, std::int64_t> sample_measurement(const Observable& q, const TensorState& s,
                                                  std::uint64_t seed, int n_shots) {
  if (n_shots < 1) throw std::invalid_argument("sample_measurement: n_shots must be >= 1");
  const std::vector<MeasurementOutcome> outcomes = measure_second(q, s);

  std::map<double, std::int64_t> histogram;
  Rng rng(seed);
  for (int shot = 0; shot < n_shots; ++shot) {
    const double u = rng.uniform01();
    double cdf = 0.0;
    double drawn = outcomes.back().eigenvalue;  // guards against roundoff in the sum
    for (const MeasurementOutcome& outcome : outcomes) {
      cdf += outcome.probability;
      if (u < cdf) {
        drawn = outcome.eigenvalue;
        break;
      }
    }
    ++histogram[drawn];
  }
  return histogram;
}

}  // namespace fiberq
