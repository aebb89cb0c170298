// Acceptance gate: one self-contained check per release criterion, each
// printing a single [PASS]/[FAIL] line with the measured numbers. The only
// argument is the path to the command-line binary (used by criterion 8).
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fiberq/io.hpp"
#include "fiberq/isomorphism.hpp"
#include "fiberq/measurement.hpp"
#include "fiberq/pointer.hpp"
#include "fiberq/separability.hpp"
#include "fiberq/state.hpp"
#include "oracles.hpp"

using namespace fiberq;

namespace {

constexpr double kTol = 1e-10;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

bool report(int number, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << detail
            << std::endl;
  return pass;
}

std::string fmt(double x) { return io::format_double(x); }

// Desk scale fixed by the release gate.
const HermiteBasis& desk_basis() {
  static const HermiteBasis basis = make_basis(1, 8, 16);
  return basis;
}

CMatrix random_hermitian(int n, Rng& rng) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  return 0.5 * (m + m.adjoint());
}

TensorState bell_state(const HermiteBasis& basis) {
  const double amp = 1.0 / std::sqrt(2.0);
  return superpose(amp, product_state(basis_vector(basis, 0), basis_vector(basis, 0)), amp,
                   product_state(basis_vector(basis, 1), basis_vector(basis, 1)));
}

Observable spin_like(const HermiteBasis& basis) {
  RVector d = RVector::Zero(basis.flat_order());
  d[0] = 1.0;
  d[1] = -1.0;
  return Observable::diagonal(basis, d);
}

// --------------------------------------------------------------------------
// 1. Isometry of the fiber map over 200 random pairs, under five seconds.

bool criterion_1() {
  const HermiteBasis& basis = desk_basis();
  Timer timer;
  double worst_ip = 0.0;
  double worst_roundtrip = 0.0;
  Rng rng(1001);
  for (int pair = 0; pair < 200; ++pair) {
    const TensorState s1 = random_state(basis, basis, rng);
    const TensorState s2 = random_state(basis, basis, rng);
    const Complex tensor_ip = inner_product_tensor(s1, s2);
    const Complex fiber_ip = inner_product_fiber(to_fiber(s1), to_fiber(s2));
    worst_ip = std::max(worst_ip, std::abs(tensor_ip - fiber_ip));
    worst_roundtrip = std::max(
        worst_roundtrip,
        (from_fiber(to_fiber(s1)).amplitudes - s1.amplitudes).cwiseAbs().maxCoeff());
  }
  const double elapsed = timer.seconds();
  const bool pass = worst_ip <= kTol && worst_roundtrip <= kTol && elapsed < 5.0;
  return report(1, pass,
                "fiber map isometry over 200 pairs: max inner-product deviation " +
                    fmt(worst_ip) + ", max round-trip error " + fmt(worst_roundtrip) + ", " +
                    fmt(elapsed) + " s (limits 1e-10, 1e-10, 5 s)");
}

// --------------------------------------------------------------------------
// 2. Three routes to the same expectation over 100 random (Q, s): component
// functions under quadrature, the dense Kronecker lift, and the
// probability-weighted eigenvalue sum.

bool criterion_2() {
  const HermiteBasis& basis = desk_basis();
  const int n = basis.flat_order();
  Rng rng(2002);
  double worst_lift = 0.0;
  double worst_measure = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Observable q(basis, random_hermitian(n, rng));
    const TensorState s = random_state(basis, basis, rng);

    // Route one: Gram matrix of the component functions by quadrature.
    const FiberState f = to_fiber(s);
    const CMatrix gram =
        f.values.adjoint() * basis.node_weights().cast<Complex>().asDiagonal() * f.values;
    const double via_components =
        (q.matrix().cwiseProduct(gram)).sum().real() / s.norm_squared();

    // Route two: explicit Kronecker lift acting on the vectorized amplitudes.
    const double via_lift =
        oracles::dense_expectation(oracles::lift_second(q.matrix(), n),
                                   oracles::vectorize(s.amplitudes)) /
        s.norm_squared();

    // Route three: probability-weighted eigenvalues of the measurement.
    double via_measurement = 0.0;
    for (const MeasurementOutcome& outcome : measure_second(q, s))
      via_measurement += outcome.eigenvalue * outcome.probability;

    worst_lift = std::max(worst_lift, std::abs(via_components - via_lift));
    worst_measure = std::max(worst_measure, std::abs(via_components - via_measurement));
  }
  const bool pass = worst_lift <= kTol && worst_measure <= kTol;
  return report(2, pass,
                "expectation routes over 100 random (Q, s): components vs Kronecker lift " +
                    fmt(worst_lift) + ", components vs measurement mean " + fmt(worst_measure) +
                    " (limit 1e-10)");
}

// --------------------------------------------------------------------------
// 3. Value-span rank equals Schmidt rank on 50 states of planted rank 1-6.

bool criterion_3() {
  const HermiteBasis& basis = desk_basis();
  Rng rng(3003);
  int agreements = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int planted = 1 + trial % 6;
    const TensorState s = random_state(basis, basis, rng, planted);
    if (schmidt_rank(s) == planted && value_span_rank(to_fiber(s)) == planted) ++agreements;
  }
  const bool pass = agreements == 50;
  return report(3, pass,
                "value-span rank vs Schmidt rank on 50 planted states: " +
                    std::to_string(agreements) + "/50 exact agreements");
}

// --------------------------------------------------------------------------
// 4. Nondegenerate measurement collapses onto products; one degenerate
// counterexample stays entangled.

bool criterion_4() {
  const HermiteBasis& basis = desk_basis();
  const int n = basis.flat_order();
  Rng rng(4004);

  // Nondegenerate observable in a generic eigenbasis.
  RVector distinct(n);
  for (int i = 0; i < n; ++i) distinct[i] = -3.5 + static_cast<double>(i);
  const CMatrix u = random_unitary(n, rng);
  const Observable q(basis, u * distinct.cast<Complex>().asDiagonal() * u.adjoint());

  int collapsed_states = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int planted = 2 + trial % 5;
    const TensorState s = random_state(basis, basis, rng, planted);
    bool all_rank_one = true;
    for (const MeasurementOutcome& outcome : measure_second(q, s))
      all_rank_one = all_rank_one && schmidt_rank(outcome.post_state) == 1;
    if (all_rank_one) ++collapsed_states;
  }

  // Counterexample: a projector with a two-dimensional eigenspace holding
  // both Bell branches leaves the post state entangled.
  RVector degenerate = RVector::Zero(n);
  degenerate[0] = 1.0;
  degenerate[1] = 1.0;
  const auto outcomes = measure_second(Observable::diagonal(basis, degenerate),
                                       bell_state(basis));
  const int counterexample_rank =
      outcomes.empty() ? 0 : schmidt_rank(outcomes.front().post_state);

  const bool pass = collapsed_states == 50 && counterexample_rank >= 2;
  return report(4, pass,
                "nondegenerate collapse on 50 entangled states: " +
                    std::to_string(collapsed_states) +
                    "/50 with every branch at rank 1; degenerate counterexample rank " +
                    std::to_string(counterexample_rank) + " (needs >= 2)");
}

// --------------------------------------------------------------------------
// 5. Born statistics of the Bell state: ten thousand shots near half-half,
// bitwise reproducible.

bool criterion_5() {
  const HermiteBasis& basis = desk_basis();
  const TensorState bell = bell_state(basis);
  const Observable q = spin_like(basis);
  const auto histogram = sample_measurement(q, bell, 1, 10000);
  const auto rerun = sample_measurement(q, bell, 1, 10000);

  std::int64_t low = 0, high = 0;
  for (const auto& [eigenvalue, count] : histogram)
    (eigenvalue < 0 ? low : high) = count;

  const bool within = std::abs(low - 5000) <= 200 && std::abs(high - 5000) <= 200;
  const bool pass = histogram.size() == 2 && within && histogram == rerun;
  return report(5, pass,
                "Born sampling of the Bell state, 10000 shots, seed 1: counts " +
                    std::to_string(low) + " / " + std::to_string(high) +
                    " (each within 200 of 5000), rerun " +
                    (histogram == rerun ? "identical" : "differs"));
}

// --------------------------------------------------------------------------
// 6. Headline indistinguishability: 20 branch configurations, 100 macro
// observables each, under ten seconds.

bool criterion_6() {
  const HermiteBasis& basis = desk_basis();
  std::vector<int> low_half, high_half;
  for (int i = 0; i < basis.flat_order(); ++i)
    (i < basis.flat_order() / 2 ? low_half : high_half).push_back(i);
  const PointerPartition partition(basis, {low_half, high_half});

  Timer timer;
  double worst_deviation = 0.0;
  double weakest_control = 1e300;
  bool ranks_ok = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(6000 + seed);
    const double alpha2 = 0.15 + 0.7 * rng.uniform01();
    const EntangledBranches branches = random_merged_branches(basis, partition, alpha2, rng);
    const IndistinguishabilityReport r =
        indistinguishability_report(branches, partition, 100, rng.next_u64());
    worst_deviation = std::max(worst_deviation, r.max_deviation);
    weakest_control = std::min(weakest_control, r.positive_control_gap);
    ranks_ok = ranks_ok && r.rank_entangled == 2 && r.rank_surrogate == 1;
  }
  const double elapsed = timer.seconds();
  const bool pass =
      worst_deviation <= kTol && weakest_control >= 0.01 && ranks_ok && elapsed < 10.0;
  return report(6, pass,
                "20 branch configurations x 100 macro observables: max deviation " +
                    fmt(worst_deviation) + ", ranks 2 vs 1 " +
                    (ranks_ok ? "throughout" : "VIOLATED") + ", weakest control gap " +
                    fmt(weakest_control) + ", " + fmt(elapsed) +
                    " s (limits 1e-10, 0.01, 10 s)");
}

// --------------------------------------------------------------------------
// 7. Free evolution: unitary, Schmidt-invariant, periodic with period 2 pi.

bool criterion_7() {
  const HermiteBasis& basis = desk_basis();
  Rng rng(7007);
  double worst_norm = 0.0;
  double worst_sigma = 0.0;
  double worst_recurrence = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const TensorState s = random_state(basis, basis, rng);
    const double t = rng.uniform(-20.0, 20.0);
    const TensorState evolved = evolve_free(s, t);
    worst_norm = std::max(worst_norm, std::abs(evolved.norm() - s.norm()));
    const RVector before = schmidt_decompose(s).singular_values;
    const RVector after = schmidt_decompose(evolved).singular_values;
    worst_sigma = std::max(worst_sigma, (before - after).cwiseAbs().maxCoeff());

    const TensorState period = evolve_free(s, 2.0 * 3.14159265358979323846);
    worst_recurrence = std::max(
        worst_recurrence, (period.amplitudes - s.amplitudes).cwiseAbs().maxCoeff());
  }
  const bool pass = worst_norm <= kTol && worst_sigma <= kTol && worst_recurrence <= kTol;
  return report(7, pass,
                "free evolution over 50 random (s, t): norm drift " + fmt(worst_norm) +
                    ", Schmidt spectrum drift " + fmt(worst_sigma) +
                    ", period-2pi recurrence error " + fmt(worst_recurrence) +
                    " (limit 1e-10)");
}

// --------------------------------------------------------------------------
// 8. The command-line binary repeats byte-for-byte on every subcommand.

struct CommandResult {
  int code;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string output;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, got);
  const int status = pclose(pipe);
  return {status, output};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool criterion_8(const std::string& cli_binary) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fiberq-acceptance";
  fs::create_directories(dir);
  const auto at = [&](const char* name) { return (dir / name).string(); };

  // Observable file shared by the expect/measure invocations.
  io::save_text_file(at("observable.json"),
                     io::dump_json(io::to_json(spin_like(desk_basis()))));

  struct Invocation {
    std::string name;
    std::string args;
    std::vector<std::string> files;  // outputs whose bytes must repeat
  };
  const std::vector<Invocation> invocations{
      {"make",
       "make --random --seed 21 --out " + at("state.json"), {at("state.json")}},
      {"convert", "convert " + at("state.json") + " --out " + at("fiber.json"),
       {at("fiber.json")}},
      {"expect",
       "expect --state " + at("state.json") + " --observable " + at("observable.json"), {}},
      {"schmidt", "schmidt " + at("state.json"), {}},
      {"measure",
       "measure --state " + at("state.json") + " --observable " + at("observable.json") +
           " --shots 2000 --seed 4",
       {}},
      {"evolve",
       "evolve --state " + at("state.json") + " --t 0.7 --out " + at("evolved.json"),
       {at("evolved.json")}},
      {"pointer-demo",
       "pointer-demo --alpha2 0.3 --seed 5 --trials 50 --out " + at("report.json") +
           " --csv " + at("trials.csv"),
       {at("report.json"), at("trials.csv")}},
  };

  std::string failures;
  for (const Invocation& invocation : invocations) {
    const std::string command = cli_binary + " " + invocation.args + " 2>/dev/null";
    const CommandResult first = run_command(command);
    std::vector<std::string> first_files;
    for (const std::string& f : invocation.files) first_files.push_back(read_file(f));

    const CommandResult second = run_command(command);
    bool same = first.code == 0 && second.code == 0 && first.output == second.output;
    for (std::size_t i = 0; i < invocation.files.size() && same; ++i)
      same = read_file(invocation.files[i]) == first_files[i];

    if (!same) failures += (failures.empty() ? "" : ", ") + invocation.name;
  }
  return report(8, failures.empty(),
                failures.empty()
                    ? "all seven subcommands repeat byte-for-byte (stdout and files)"
                    : "nondeterministic subcommands: " + failures);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli-binary>" << std::endl;
    return 1;
  }

  int failed = 0;
  failed += !criterion_1();
  failed += !criterion_2();
  failed += !criterion_3();
  failed += !criterion_4();
  failed += !criterion_5();
  failed += !criterion_6();
  failed += !criterion_7();
  failed += !criterion_8(argv[1]);

  std::cout << (failed == 0 ? "acceptance: all 8 criteria passed"
                            : "acceptance: " + std::to_string(failed) + " criteria FAILED")
            << std::endl;
  return failed;
}
