#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "fiberq/observables.hpp"
#include "fiberq/state.hpp"

namespace fiberq::io {

// Insertion-ordered JSON so emitted files keep a stable key layout.
using Json = nlohmann::ordered_json;

// Input-file violation; `path` is the JSON pointer of the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Basis descriptor <-> {"dim": d, "order": n, "quad_nodes": k}.
Json to_json(const HermiteBasis& basis);
HermiteBasis basis_from_json(const Json& j, const std::string& path);

// State files: {"basis_v": {...}, "basis_w": {...},
// "representation": "tensor" | "fiber", "amplitudes": [[[re, im], ...], ...]}
// with rows indexed by the V basis (tensor) or the V quadrature node (fiber).
Json to_json(const TensorState& s);
Json to_json(const FiberState& f);
std::variant<TensorState, FiberState> state_from_json(const Json& j);

// Observable files: {"basis": {...}, "matrix": [[[re, im], ...], ...]}.
Json to_json(const Observable& q);
Observable observable_from_json(const Json& j);

// Shortest decimal form accurate to 15 significant digits,
// locale-independent; the one number format used in every emitted file.
std::string format_double(double x);

// Deterministic renderer: two-space indent, arrays of plain numbers (e.g.
// complex [re, im] pairs) kept on one line, trailing newline.
std::string dump_json(const Json& j);

// Throws SchemaError on unreadable files or malformed JSON.
Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& content);

}  // namespace fiberq::io
