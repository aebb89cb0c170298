#include "fiberq/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "fiberq/io.hpp"
#include "fiberq/isomorphism.hpp"
#include "fiberq/measurement.hpp"
#include "fiberq/pointer.hpp"
#include "fiberq/separability.hpp"

namespace fiberq::cli {

namespace {

using io::Json;

// ---------------------------------------------------------------------------
// Flag-content parsers. All failures surface as CLI::ValidationError so they
// exit with the usage code and a message naming the flag.

std::string_view trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, const std::string& flag) {
  token = trimmed(token);
  double value = 0.0;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value,
                                      std::chars_format::general);
  if (result.ec != std::errc{} || result.ptr != token.data() + token.size())
    throw CLI::ValidationError(flag + ": malformed number '" + std::string(token) + "'");
  return value;
}

int parse_int(std::string_view token, const std::string& flag) {
  token = trimmed(token);
  int value = 0;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc{} || result.ptr != token.data() + token.size())
    throw CLI::ValidationError(flag + ": malformed integer '" + std::string(token) + "'");
  return value;
}

// "re" or "re:im".
Complex parse_complex(std::string_view token, const std::string& flag) {
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) return {parse_number(token, flag), 0.0};
  return {parse_number(token.substr(0, colon), flag),
          parse_number(token.substr(colon + 1), flag)};
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// Comma-separated complex coefficients, e.g. "1, 0, 0.5:-0.5".
CVector parse_coefficients(const std::string& list, int expected, const std::string& flag) {
  const auto tokens = split(list, ',');
  if (static_cast<int>(tokens.size()) != expected)
    throw CLI::ValidationError(flag + ": expected " + std::to_string(expected) +
                               " coefficients, found " + std::to_string(tokens.size()));
  CVector v(expected);
  for (int i = 0; i < expected; ++i) v[i] = parse_complex(tokens[i], flag);
  return v;
}

// Class spec like "0,1|2,3": groups of basis indices separated by '|'.
std::vector<std::vector<int>> parse_classes(const std::string& text, const std::string& flag) {
  std::vector<std::vector<int>> classes;
  for (const auto group : split(text, '|')) {
    std::vector<int> indices;
    for (const auto token : split(group, ','))
      indices.push_back(parse_int(token, flag));
    classes.push_back(std::move(indices));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Shared plumbing.

TensorState as_tensor(std::variant<TensorState, FiberState> state) {
  if (auto* t = std::get_if<TensorState>(&state)) return std::move(*t);
  return from_fiber(std::get<FiberState>(state));
}

TensorState load_tensor_state(const std::string& path) {
  return as_tensor(io::state_from_json(io::load_json_file(path)));
}

void require_factor_basis(const Observable& q, const HermiteBasis& factor, bool first,
                          const std::string& observable_path, const std::string& state_path) {
  if (q.basis() == factor) return;
  throw std::invalid_argument("observable basis in " + observable_path +
                              " does not match the " + (first ? "first" : "second") +
                              " factor of the state in " + state_path);
}

void emit(const Json& j, std::ostream& out, const std::string& file_path) {
  const std::string text = io::dump_json(j);
  if (!file_path.empty()) io::save_text_file(file_path, text);
  out << text;
}

// ---------------------------------------------------------------------------
// Subcommand options.

struct BasisFlags {
  int nv = 8;
  int nw = 8;
  int dim = 1;
  int quad = 0;  // 0: twice the order

  HermiteBasis basis_v() const { return make_basis(dim, nv, quad); }
  HermiteBasis basis_w() const { return make_basis(dim, nw, quad); }
};

void add_basis_flags(CLI::App* sub, BasisFlags& flags) {
  sub->add_option("--nv", flags.nv, "Order of the first-factor basis per axis");
  sub->add_option("--nw", flags.nw, "Order of the second-factor basis per axis");
  sub->add_option("--dim", flags.dim, "Spatial dimension of each factor");
  sub->add_option("--quad", flags.quad, "Quadrature nodes per axis (default: twice the order)");
}

struct MakeOptions {
  BasisFlags basis;
  std::vector<std::string> product;    // listV listW
  std::vector<std::string> superpose;  // a1 listV1 listW1 a2 listV2 listW2
  bool bell = false;
  bool random = false;
  int rank = 0;  // 0: no rank constraint
  std::uint64_t seed = 0;
  double tol = kRankTol;
  std::string out_path = "state.json";
};

int run_make(const MakeOptions& opt, std::ostream& out) {
  const int modes = int(!opt.product.empty()) + int(!opt.superpose.empty()) + int(opt.bell) +
                    int(opt.random);
  if (modes != 1)
    throw CLI::ValidationError(
        "make: choose exactly one of --product, --superpose, --bell, --random");
  if (opt.rank > 0 && !opt.random) throw CLI::ValidationError("--rank requires --random");

  const HermiteBasis bv = opt.basis.basis_v();
  const HermiteBasis bw = opt.basis.basis_w();

  TensorState state{bv, bw, CMatrix::Zero(bv.flat_order(), bw.flat_order())};
  if (!opt.product.empty()) {
    state = product_state({bv, parse_coefficients(opt.product[0], bv.flat_order(), "--product")},
                          {bw, parse_coefficients(opt.product[1], bw.flat_order(), "--product")});
  } else if (!opt.superpose.empty()) {
    const Complex a1 = parse_complex(opt.superpose[0], "--superpose");
    const TensorState s1 =
        product_state({bv, parse_coefficients(opt.superpose[1], bv.flat_order(), "--superpose")},
                      {bw, parse_coefficients(opt.superpose[2], bw.flat_order(), "--superpose")});
    const Complex a2 = parse_complex(opt.superpose[3], "--superpose");
    const TensorState s2 =
        product_state({bv, parse_coefficients(opt.superpose[4], bv.flat_order(), "--superpose")},
                      {bw, parse_coefficients(opt.superpose[5], bw.flat_order(), "--superpose")});
    state = superpose(a1, s1, a2, s2);
  } else if (opt.bell) {
    if (bv.flat_order() < 2 || bw.flat_order() < 2)
      throw CLI::ValidationError("--bell: both bases need at least two elements");
    const double amp = 1.0 / std::sqrt(2.0);
    state = superpose(amp, product_state(basis_vector(bv, 0), basis_vector(bw, 0)), amp,
                      product_state(basis_vector(bv, 1), basis_vector(bw, 1)));
  } else {
    state = random_state(bv, bw, opt.seed,
                         opt.rank > 0 ? std::optional<int>(opt.rank) : std::nullopt);
  }

  io::save_text_file(opt.out_path, io::dump_json(io::to_json(state)));
  emit(Json{{"out", opt.out_path},
            {"norm", state.norm()},
            {"schmidt_rank", schmidt_rank(state, opt.tol)}},
       out, "");
  return 0;
}

struct ConvertOptions {
  std::string in_path;
  std::string out_path = "converted.json";
};

int run_convert(const ConvertOptions& opt, std::ostream& out) {
  auto state = io::state_from_json(io::load_json_file(opt.in_path));
  Json converted;
  std::string repr;
  double roundtrip = 0.0;
  if (auto* t = std::get_if<TensorState>(&state)) {
    const FiberState fiber = to_fiber(*t);
    roundtrip = (from_fiber(fiber).amplitudes - t->amplitudes).cwiseAbs().maxCoeff();
    converted = io::to_json(fiber);
    repr = "fiber";
  } else {
    const FiberState& f = std::get<FiberState>(state);
    const TensorState tensor = from_fiber(f);
    roundtrip = (to_fiber(tensor).values - f.values).cwiseAbs().maxCoeff();
    converted = io::to_json(tensor);
    repr = "tensor";
  }
  io::save_text_file(opt.out_path, io::dump_json(converted));
  emit(Json{{"out", opt.out_path}, {"representation", repr}, {"max_roundtrip_error", roundtrip}},
       out, "");
  return 0;
}

struct ExpectOptions {
  std::string state_path;
  std::string observable_path;
  bool first = false;
  std::string out_path;
};

int run_expect(const ExpectOptions& opt, std::ostream& out) {
  const TensorState state = load_tensor_state(opt.state_path);
  const Observable q = io::observable_from_json(io::load_json_file(opt.observable_path));
  require_factor_basis(q, opt.first ? state.basis_v : state.basis_w, opt.first,
                       opt.observable_path, opt.state_path);
  const double expectation =
      opt.first ? expectation_lifted_first(q, state) : expectation_lifted(q, state);
  emit(Json{{"expectation", expectation}}, out, opt.out_path);
  return 0;
}

struct SchmidtOptions {
  std::string state_path;
  double tol = kRankTol;
  std::string out_path;
};

int run_schmidt(const SchmidtOptions& opt, std::ostream& out) {
  const TensorState state = load_tensor_state(opt.state_path);
  const SchmidtDecomposition d = schmidt_decompose(state);
  const int rank = schmidt_rank(state, opt.tol);
  Json singular_values = Json::array();
  for (int r = 0; r < d.singular_values.size(); ++r)
    singular_values.push_back(d.singular_values[r]);
  emit(Json{{"singular_values", singular_values},
            {"rank", rank},
            {"decomposable", is_decomposable(state, opt.tol).decomposable}},
       out, opt.out_path);
  return 0;
}

struct MeasureOptions {
  std::string state_path;
  std::string observable_path;
  int shots = 0;
  std::uint64_t seed = 0;
  bool first = false;
  std::string out_path;
};

int run_measure(const MeasureOptions& opt, std::ostream& out) {
  TensorState state = load_tensor_state(opt.state_path);
  const Observable q = io::observable_from_json(io::load_json_file(opt.observable_path));
  require_factor_basis(q, opt.first ? state.basis_v : state.basis_w, opt.first,
                       opt.observable_path, opt.state_path);
  // The sampler addresses the second factor; measuring the first is the
  // same experiment on the swapped state.
  if (opt.first) state = swap_factors(state);

  const std::vector<MeasurementOutcome> outcomes = measure_second(q, state);
  const std::map<double, std::int64_t> counts =
      sample_measurement(q, state, opt.seed, opt.shots);

  Json outcome_list = Json::array();
  Json histogram = Json::object();
  for (const auto& outcome : outcomes) {
    outcome_list.push_back(
        Json{{"eigenvalue", outcome.eigenvalue}, {"probability", outcome.probability}});
    const auto hit = counts.find(outcome.eigenvalue);
    histogram[io::format_double(outcome.eigenvalue)] =
        hit == counts.end() ? std::int64_t{0} : hit->second;
  }
  emit(Json{{"outcomes", outcome_list}, {"histogram", histogram}}, out, opt.out_path);
  return 0;
}

struct EvolveOptions {
  std::string state_path;
  double t = 0.0;
  std::string out_path = "evolved.json";
};

int run_evolve(const EvolveOptions& opt, std::ostream& out) {
  const TensorState state = load_tensor_state(opt.state_path);
  const TensorState evolved = evolve_free(state, opt.t);
  io::save_text_file(opt.out_path, io::dump_json(io::to_json(evolved)));
  emit(Json{{"out", opt.out_path}, {"t", opt.t}, {"norm", evolved.norm()}}, out, "");
  return 0;
}

struct PointerDemoOptions {
  BasisFlags basis;
  double alpha2 = 0.5;
  std::string classes;  // empty: split the W basis into two halves
  int trials = 100;
  std::uint64_t seed = 0;
  std::string out_path = "pointer_report.json";
  std::string csv_path = "pointer_trials.csv";
};

int run_pointer_demo(const PointerDemoOptions& opt, std::ostream& out) {
  const HermiteBasis bv = opt.basis.basis_v();
  const HermiteBasis bw = opt.basis.basis_w();

  std::vector<std::vector<int>> classes;
  if (opt.classes.empty()) {
    const int n = bw.flat_order();
    classes.resize(n > 1 ? 2 : 1);
    for (int i = 0; i < n; ++i) classes[i < (n + 1) / 2 ? 0 : 1].push_back(i);
  } else {
    classes = parse_classes(opt.classes, "--classes");
  }

  try {
    const PointerPartition partition(bw, std::move(classes));
    Rng rng(opt.seed);
    const EntangledBranches branches = random_merged_branches(bv, partition, opt.alpha2, rng);
    const IndistinguishabilityReport report =
        indistinguishability_report(branches, partition, opt.trials, rng.next_u64());

    std::string csv = "trial,expectation_entangled,expectation_surrogate,deviation\n";
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
      const auto& trial = report.trials[i];
      csv += std::to_string(i) + ',' + io::format_double(trial.expectation_entangled) + ',' +
             io::format_double(trial.expectation_surrogate) + ',' +
             io::format_double(std::abs(trial.expectation_entangled -
                                        trial.expectation_surrogate)) +
             '\n';
    }
    io::save_text_file(opt.csv_path, csv);

    emit(Json{{"max_deviation", report.max_deviation},
              {"rank_entangled", report.rank_entangled},
              {"rank_surrogate", report.rank_surrogate},
              {"positive_control_gap", report.positive_control_gap}},
         out, opt.out_path);
  } catch (const std::invalid_argument& e) {
    // Partition and branch construction fail only on unusable --classes
    // content (bad cover, no class of size two); report it as usage.
    throw CLI::ValidationError(std::string("--classes: ") + e.what());
  }
  return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bipartite states as vector-valued wavefunctions on a Hermite basis"};
  app.name("fiberq");
  app.require_subcommand(1);

  MakeOptions make_opt;
  CLI::App* make_cmd = app.add_subcommand("make", "Construct a state file");
  add_basis_flags(make_cmd, make_opt.basis);
  make_cmd->add_option("--product", make_opt.product,
                       "Product state from two coefficient lists (e.g. \"1,0\" \"0.5:0.5,0\")")
      ->expected(2);
  make_cmd->add_option("--superpose", make_opt.superpose,
                       "a1 listV1 listW1 a2 listV2 listW2: superposition of two products")
      ->expected(6);
  make_cmd->add_flag("--bell", make_opt.bell, "Bell-type state (e0 x e0 + e1 x e1) / sqrt(2)");
  make_cmd->add_flag("--random", make_opt.random, "Seeded random normalized state");
  make_cmd->add_option("--rank", make_opt.rank, "Schmidt rank for --random");
  make_cmd->add_option("--seed", make_opt.seed, "Random seed");
  make_cmd->add_option("--tol", make_opt.tol, "Relative singular-value cutoff for the rank");
  make_cmd->add_option("--out", make_opt.out_path, "Output state file")->capture_default_str();

  ConvertOptions convert_opt;
  CLI::App* convert_cmd =
      app.add_subcommand("convert", "Toggle a state file between tensor and fiber form");
  convert_cmd->add_option("input", convert_opt.in_path, "State file")->required();
  convert_cmd->add_option("--out", convert_opt.out_path, "Output state file")->capture_default_str();

  ExpectOptions expect_opt;
  CLI::App* expect_cmd =
      app.add_subcommand("expect", "Expectation of a lifted one-factor observable");
  expect_cmd->add_option("--state", expect_opt.state_path, "State file")->required();
  expect_cmd->add_option("--observable", expect_opt.observable_path, "Observable file")
      ->required();
  expect_cmd->add_flag("--first", expect_opt.first, "Lift onto the first factor instead");
  expect_cmd->add_option("--out", expect_opt.out_path, "Also write the result here");

  SchmidtOptions schmidt_opt;
  CLI::App* schmidt_cmd =
      app.add_subcommand("schmidt", "Singular values, rank, and decomposability");
  schmidt_cmd->add_option("input", schmidt_opt.state_path, "State file")->required();
  schmidt_cmd->add_option("--tol", schmidt_opt.tol, "Relative singular-value cutoff")->capture_default_str();
  schmidt_cmd->add_option("--out", schmidt_opt.out_path, "Also write the result here");

  MeasureOptions measure_opt;
  CLI::App* measure_cmd =
      app.add_subcommand("measure", "Projective measurement probabilities and sampling");
  measure_cmd->add_option("--state", measure_opt.state_path, "State file")->required();
  measure_cmd->add_option("--observable", measure_opt.observable_path, "Observable file")
      ->required();
  measure_cmd->add_option("--shots", measure_opt.shots, "Number of samples")
      ->required()
      ->check(CLI::PositiveNumber);
  measure_cmd->add_option("--seed", measure_opt.seed, "Random seed");
  measure_cmd->add_flag("--first", measure_opt.first, "Measure the first factor instead");
  measure_cmd->add_option("--out", measure_opt.out_path, "Also write the result here");

  EvolveOptions evolve_opt;
  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Free harmonic evolution for time t");
  evolve_cmd->add_option("--state", evolve_opt.state_path, "State file")->required();
  evolve_cmd->add_option("--t", evolve_opt.t, "Evolution time")->required();
  evolve_cmd->add_option("--out", evolve_opt.out_path, "Output state file")->capture_default_str();

  PointerDemoOptions pointer_opt;
  CLI::App* pointer_cmd = app.add_subcommand(
      "pointer-demo", "Entangled vs decomposable under macroscopic pointer observables");
  add_basis_flags(pointer_cmd, pointer_opt.basis);
  pointer_cmd->add_option("--alpha2", pointer_opt.alpha2, "Squared amplitude of the first branch")
      ->check(CLI::Range(0.0, 1.0));
  pointer_cmd->add_option("--classes", pointer_opt.classes,
                          "Pointer classes as index groups, e.g. \"0,1|2,3\" "
                          "(default: two halves)");
  pointer_cmd->add_option("--trials", pointer_opt.trials, "Random macro observables to test")->capture_default_str()
      ->check(CLI::PositiveNumber);
  pointer_cmd->add_option("--seed", pointer_opt.seed, "Random seed");
  pointer_cmd->add_option("--out", pointer_opt.out_path, "Output report file")->capture_default_str();
  pointer_cmd->add_option("--csv", pointer_opt.csv_path, "Per-trial expectation table")->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
    if (make_cmd->parsed()) return run_make(make_opt, out);
    if (convert_cmd->parsed()) return run_convert(convert_opt, out);
    if (expect_cmd->parsed()) return run_expect(expect_opt, out);
    if (schmidt_cmd->parsed()) return run_schmidt(schmidt_opt, out);
    if (measure_cmd->parsed()) return run_measure(measure_opt, out);
    if (evolve_cmd->parsed()) return run_evolve(evolve_opt, out);
    if (pointer_cmd->parsed()) return run_pointer_demo(pointer_opt, out);
    return 2;  // unreachable: require_subcommand guards
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const io::SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    // I/O failures and other conditions outside the documented codes.
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fiberq::cli
