#include "fiberq/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace fiberq::io {

namespace {

const Json& get_field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

int get_int(const Json& j, const char* key, const std::string& path) {
  const Json& field = get_field(j, key, path);
  if (!field.is_number_integer())
    throw SchemaError(path + "/" + key, "expected an integer");
  return field.get<int>();
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError(path, "expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json cmatrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const Json& j, const std::string& path, int rows, int cols) {
  if (!j.is_array())
    throw SchemaError(path, "expected an array of rows");
  if (static_cast<int>(j.size()) != rows)
    throw SchemaError(path, "expected " + std::to_string(rows) + " rows, found " +
                                std::to_string(j.size()));
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    const std::string row_path = path + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw SchemaError(row_path, "expected a row of " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[c], row_path + "/" + std::to_string(c));
  }
  return m;
}

}  // namespace

Json to_json(const HermiteBasis& basis) {
  return Json{{"dim", basis.dim()}, {"order", basis.order()}, {"quad_nodes", basis.quad_nodes()}};
}

HermiteBasis basis_from_json(const Json& j, const std::string& path) {
  const int dim = get_int(j, "dim", path);
  const int order = get_int(j, "order", path);
  const int quad_nodes = get_int(j, "quad_nodes", path);
  try {
    return HermiteBasis(dim, order, quad_nodes);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

Json to_json(const TensorState& s) {
  return Json{{"basis_v", to_json(s.basis_v)},
              {"basis_w", to_json(s.basis_w)},
              {"representation", "tensor"},
              {"amplitudes", cmatrix_to_json(s.amplitudes)}};
}

Json to_json(const FiberState& f) {
  return Json{{"basis_v", to_json(f.basis_v)},
              {"basis_w", to_json(f.basis_w)},
              {"representation", "fiber"},
              {"amplitudes", cmatrix_to_json(f.values)}};
}

std::variant<TensorState, FiberState> state_from_json(const Json& j) {
  HermiteBasis basis_v = basis_from_json(get_field(j, "basis_v", ""), "/basis_v");
  HermiteBasis basis_w = basis_from_json(get_field(j, "basis_w", ""), "/basis_w");
  const Json& repr = get_field(j, "representation", "");
  if (!repr.is_string())
    throw SchemaError("/representation", "expected \"tensor\" or \"fiber\"");
  const std::string kind = repr.get<std::string>();
  const Json& amplitudes = get_field(j, "amplitudes", "");
  if (kind == "tensor") {
    CMatrix m = cmatrix_from_json(amplitudes, "/amplitudes", basis_v.flat_order(),
                                  basis_w.flat_order());
    return TensorState{std::move(basis_v), std::move(basis_w), std::move(m)};
  }
  if (kind == "fiber") {
    CMatrix m = cmatrix_from_json(amplitudes, "/amplitudes", basis_v.flat_nodes(),
                                  basis_w.flat_order());
    return FiberState{std::move(basis_v), std::move(basis_w), std::move(m)};
  }
  throw SchemaError("/representation", "unknown representation \"" + kind + "\"");
}

Json to_json(const Observable& q) {
  return Json{{"basis", to_json(q.basis())}, {"matrix", cmatrix_to_json(q.matrix())}};
}

Observable observable_from_json(const Json& j) {
  HermiteBasis basis = basis_from_json(get_field(j, "basis", ""), "/basis");
  const int n = basis.flat_order();
  CMatrix m = cmatrix_from_json(get_field(j, "matrix", ""), "/matrix", n, n);
  return Observable(std::move(basis), std::move(m));
}

std::string format_double(double x) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), x, std::chars_format::general, 15);
  return std::string(buffer, result.ptr);
}

namespace {

bool is_flat_number_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& item : j)
    if (!item.is_number()) return false;
  return true;
}

void dump_value(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string inner_pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      if (is_flat_number_array(j)) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_value(j[i], out, depth);
        }
        out += ']';
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += inner_pad;
        dump_value(j[i], out, depth + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += inner_pad + Json(it.key()).dump() + ": ";
        dump_value(it.value(), out, depth + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      break;
    }
    default:
      // null, booleans, strings, and integers have one canonical rendering.
      out += j.dump();
      break;
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += '\n';
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("/", "cannot read file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return Json::parse(text.str());
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void save_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fiberq::io
