#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "doctest.h"

#include "fiberq/isomorphism.hpp"
#include "fiberq/observables.hpp"
#include "fiberq/separability.hpp"
#include "fiberq/state.hpp"

using namespace fiberq;

namespace {

TensorState bell_state(const HermiteBasis& basis) {
  const double amp = 1.0 / std::sqrt(2.0);
  return superpose(amp, product_state(basis_vector(basis, 0), basis_vector(basis, 0)), amp,
                   product_state(basis_vector(basis, 1), basis_vector(basis, 1)));
}

// State with a hand-planted Schmidt spectrum: A = U diag(sigma) V^dagger.
TensorState planted_state(const HermiteBasis& bv, const HermiteBasis& bw, const RVector& sigma,
                          Rng& rng) {
  const int r = static_cast<int>(sigma.size());
  const CMatrix u = random_unitary(bv.flat_order(), rng).leftCols(r);
  const CMatrix v = random_unitary(bw.flat_order(), rng).leftCols(r);
  return TensorState{bv, bw, u * sigma.cast<Complex>().asDiagonal() * v.adjoint()};
}

}  // namespace

TEST_SUITE("separability") {
  TEST_CASE("a unit product state has the singular spectrum (1, 0, ...)") {
    const HermiteBasis basis = make_basis(1, 8);
    Rng rng(1);
    const TensorState s =
        product_state(random_unit_vector(basis, rng), random_unit_vector(basis, rng));
    const SchmidtDecomposition schmidt = schmidt_decompose(s);
    CHECK(std::abs(schmidt.singular_values[0] - 1.0) <= 1e-12);
    for (int r = 1; r < schmidt.singular_values.size(); ++r)
      CHECK(schmidt.singular_values[r] <= 1e-13);
  }

  TEST_CASE("the Bell-type state splits into two equal Schmidt weights") {
    const HermiteBasis basis = make_basis(1, 8);
    const SchmidtDecomposition schmidt = schmidt_decompose(bell_state(basis));
    const double half = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(schmidt.singular_values[0] - half) <= 1e-14);
    CHECK(std::abs(schmidt.singular_values[1] - half) <= 1e-14);
    for (int r = 2; r < schmidt.singular_values.size(); ++r)
      CHECK(schmidt.singular_values[r] <= 1e-14);
  }

  TEST_CASE("the decomposition reconstructs the state with orthonormal factors") {
    const HermiteBasis bv = make_basis(1, 8);
    const HermiteBasis bw = make_basis(1, 6);
    const TensorState s = random_state(bv, bw, 2);
    const SchmidtDecomposition schmidt = schmidt_decompose(s);

    const CMatrix rebuilt = schmidt.left *
                            schmidt.singular_values.cast<Complex>().asDiagonal() *
                            schmidt.right.adjoint();
    CHECK((rebuilt - s.amplitudes).cwiseAbs().maxCoeff() <= 1e-10);

    const CMatrix gram_left = schmidt.left.adjoint() * schmidt.left;
    const CMatrix gram_right = schmidt.right.adjoint() * schmidt.right;
    CHECK((gram_left - CMatrix::Identity(gram_left.rows(), gram_left.cols()))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    CHECK((gram_right - CMatrix::Identity(gram_right.rows(), gram_right.cols()))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    CHECK(std::abs(schmidt.singular_values.squaredNorm() - s.norm_squared()) <= 1e-10);
  }

  TEST_CASE("planted singular values are recovered") {
    const HermiteBasis bv = make_basis(1, 8);
    const HermiteBasis bw = make_basis(1, 6);
    Rng rng(3);
    RVector sigma(3);
    sigma << 0.9, 0.5, 0.2;
    const TensorState s = planted_state(bv, bw, sigma, rng);
    const SchmidtDecomposition schmidt = schmidt_decompose(s);
    for (int r = 0; r < 3; ++r) CHECK(std::abs(schmidt.singular_values[r] - sigma[r]) <= 1e-8);
    for (int r = 3; r < schmidt.singular_values.size(); ++r)
      CHECK(schmidt.singular_values[r] <= 1e-12);
  }

  TEST_CASE("Schmidt rank counts the planted rank for every feasible value") {
    const HermiteBasis bv = make_basis(1, 8);
    const HermiteBasis bw = make_basis(1, 6);
    for (int rank = 1; rank <= 6; ++rank) {
      const TensorState s = random_state(bv, bw, 100 + rank, rank);
      CHECK(schmidt_rank(s) == rank);
    }
    CHECK(schmidt_rank(product_state(basis_vector(bv, 2), basis_vector(bw, 3))) == 1);
    CHECK(schmidt_rank(bell_state(make_basis(1, 8))) == 2);
  }

  TEST_CASE("a singular value exactly at the cutoff counts toward the rank") {
    // Diagonal amplitudes keep the singular values exact, so the tie is real.
    const HermiteBasis basis = make_basis(1, 8);
    CMatrix at_threshold = CMatrix::Zero(8, 8);
    at_threshold(0, 0) = 1.0;
    at_threshold(1, 1) = 0.25;
    CHECK(schmidt_rank(TensorState{basis, basis, at_threshold}, 0.25) == 2);

    Rng rng(4);
    RVector below(2);
    below << 1.0, 0.2;
    CHECK(schmidt_rank(planted_state(basis, basis, below, rng), 0.25) == 1);
  }

  TEST_CASE("the rank threshold is relative, so rescaling changes nothing") {
    const HermiteBasis basis = make_basis(1, 8);
    const TensorState s = random_state(basis, basis, 5, 3);
    const TensorState tiny{basis, basis, CMatrix(1e-6 * s.amplitudes)};
    CHECK(schmidt_rank(tiny) == 3);
  }

  TEST_CASE("fiber values of a product state span a line") {
    const HermiteBasis basis = make_basis(1, 8);
    Rng rng(6);
    const TensorState s =
        product_state(random_unit_vector(basis, rng), random_unit_vector(basis, rng));
    CHECK(value_span_rank(to_fiber(s)) == 1);
  }

  TEST_CASE("fiber values of the Bell-type state span a plane") {
    const HermiteBasis basis = make_basis(1, 8);
    CHECK(value_span_rank(to_fiber(bell_state(basis))) == 2);
  }

  TEST_CASE("value-span rank agrees with Schmidt rank across fifty random states") {
    const HermiteBasis bv = make_basis(1, 8);
    const HermiteBasis bw = make_basis(1, 6);
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const int rank = 1 + static_cast<int>(rng.next_u64() % 6);
      const TensorState s = random_state(bv, bw, rng, rank);
      CHECK(value_span_rank(to_fiber(s)) == schmidt_rank(s));
      CHECK(schmidt_rank(s) == rank);
    }
  }

  TEST_CASE("weighted node values carry the full Schmidt spectrum") {
    const HermiteBasis bv = make_basis(1, 8);
    const HermiteBasis bw = make_basis(1, 6);
    const TensorState s = random_state(bv, bw, 8);
    const FiberState f = to_fiber(s);
    const CMatrix weighted =
        f.basis_v.node_weights().cwiseSqrt().cast<Complex>().asDiagonal() * f.values;
    const RVector fiber_sigma = Eigen::JacobiSVD<CMatrix>(weighted).singularValues();
    const RVector schmidt_sigma = schmidt_decompose(s).singular_values;
    CHECK((fiber_sigma - schmidt_sigma).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("zero inputs are rejected everywhere") {
    const HermiteBasis basis = make_basis(1, 4);
    const TensorState zero{basis, basis, CMatrix::Zero(4, 4)};
    CHECK_THROWS_AS(schmidt_decompose(zero), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_rank(zero), std::invalid_argument);
    CHECK_THROWS_AS(is_decomposable(zero), std::invalid_argument);
    const FiberState zero_fiber{basis, basis, CMatrix::Zero(basis.flat_nodes(), 4)};
    CHECK_THROWS_AS(value_span_rank(zero_fiber), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_rank(random_state(basis, basis, 1), 0.0), std::invalid_argument);
  }

  TEST_CASE("a product state yields a reconstructing witness") {
    const HermiteBasis bv = make_basis(1, 8);
    const HermiteBasis bw = make_basis(1, 6);
    Rng rng(9);
    const TensorState s =
        product_state(random_unit_vector(bv, rng), random_unit_vector(bw, rng));
    const DecomposabilityResult result = is_decomposable(s);
    REQUIRE(result.decomposable);
    REQUIRE(result.psi.has_value());
    REQUIRE(result.phi.has_value());
    const TensorState rebuilt = product_state(*result.psi, *result.phi);
    CHECK((rebuilt.amplitudes - s.amplitudes).cwiseAbs().maxCoeff() <= 1e-10 * s.norm());
  }

  TEST_CASE("the witness gauge makes the dominant second-factor entry real positive") {
    const HermiteBasis basis = make_basis(1, 6);
    Rng rng(10);
    // Scramble the input phases so the gauge has work to do.
    FactorVector psi = random_unit_vector(basis, rng);
    FactorVector phi = random_unit_vector(basis, rng);
    psi.coefficients *= std::polar(1.0, 2.1);
    const DecomposabilityResult result = is_decomposable(product_state(psi, phi));
    REQUIRE(result.decomposable);
    Eigen::Index peak = 0;
    result.phi->coefficients.cwiseAbs().maxCoeff(&peak);
    CHECK(result.phi->coefficients[peak].real() > 0.0);
    CHECK(std::abs(result.phi->coefficients[peak].imag()) <= 1e-14);

    // Determinism: a second run returns bit-identical witnesses.
    const DecomposabilityResult rerun = is_decomposable(product_state(psi, phi));
    CHECK((result.psi->coefficients - rerun.psi->coefficients).cwiseAbs().maxCoeff() == 0.0);
    CHECK((result.phi->coefficients - rerun.phi->coefficients).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("entangled states are reported without a witness") {
    const DecomposabilityResult result = is_decomposable(bell_state(make_basis(1, 8)));
    CHECK_FALSE(result.decomposable);
    CHECK_FALSE(result.psi.has_value());
    CHECK_FALSE(result.phi.has_value());
  }

  TEST_CASE("a faintly perturbed product state still registers as decomposable") {
    const HermiteBasis basis = make_basis(1, 8);
    Rng rng(11);
    const TensorState s =
        product_state(random_unit_vector(basis, rng), random_unit_vector(basis, rng));
    CMatrix noisy = s.amplitudes;
    for (int m = 0; m < noisy.rows(); ++m)
      for (int i = 0; i < noisy.cols(); ++i)
        noisy(m, i) += 1e-12 * Complex(rng.normal(), rng.normal());
    CHECK(is_decomposable(TensorState{basis, basis, noisy}, 1e-8).decomposable);
  }

  TEST_CASE("Schmidt rank survives free evolution and factor rotations") {
    const HermiteBasis bv = make_basis(1, 8);
    const HermiteBasis bw = make_basis(1, 6);
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const int rank = 1 + static_cast<int>(rng.next_u64() % 6);
      const TensorState s = random_state(bv, bw, rng, rank);
      CHECK(schmidt_rank(evolve_free(s, rng.uniform(-10.0, 10.0))) == rank);

      const CMatrix u = random_unitary(bv.flat_order(), rng);
      const CMatrix v = random_unitary(bw.flat_order(), rng);
      CHECK(schmidt_rank(TensorState{bv, bw, u * s.amplitudes}) == rank);
      CHECK(schmidt_rank(TensorState{bv, bw, s.amplitudes * v.transpose()}) == rank);
    }
  }
}
