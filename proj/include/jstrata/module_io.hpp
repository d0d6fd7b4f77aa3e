#pragma once

// JSON serialization of modules. Output is deterministic: fixed key order,
// one matrix row per line.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jstrata/error.hpp"
#include "jstrata/module.hpp"

namespace jstrata {

namespace detail {

inline std::string scalar_json(const Field& f, Scalar v) {
  if (f.is_prime_field()) return std::to_string(v);
  std::string out = "[";
  const auto c = f.coefficients(v);
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
  return out + "]";
}

inline std::string json_escape(const std::string& s) { return nlohmann::json(s).dump(); }

inline Scalar scalar_from_json(const Field& f, const nlohmann::json& v) {
  if (v.is_number_integer()) return f.from_int(v.get<long long>());
  if (v.is_array()) {
    if (f.is_prime_field()) throw InputError("coefficient vector given for a prime-field entry");
    std::vector<std::uint32_t> c;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw InputError("field coefficients must be integers");
      c.push_back(static_cast<std::uint32_t>(f.from_int(x.get<long long>())));
    }
    return f.from_coefficients(c);
  }
  throw InputError("matrix entries must be integers or coefficient vectors");
}

}  // namespace detail

inline std::string matrix_to_json(const Matrix& m, const std::string& indent) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",\n" : "\n") << indent << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << detail::scalar_json(m.field(), m(i, j));
    os << "]";
  }
  if (m.rows()) os << "\n" << indent;
  os << "]";
  return os.str();
}

inline Matrix matrix_from_json(const Field& f, const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw InputError("matrix must have " + std::to_string(rows) + " rows");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw InputError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = detail::scalar_from_json(f, j[i][c]);
  }
  return m;
}

inline std::string module_to_json(const ModuleRep& m) {
  std::ostringstream os;
  os << "{\n";
  if (!m.name().empty()) os << "  \"name\": " << detail::json_escape(m.name()) << ",\n";
  os << "  \"p\": " << m.p() << ",\n";
  os << "  \"ext_degree\": " << m.field().degree() << ",\n";
  os << "  \"family\": \"" << family_name(m.group().family) << "\",\n";
  os << "  \"hopf\": \"" << hopf_name(m.group().hopf) << "\",\n";
  os << "  \"dim\": " << m.dim() << ",\n";
  os << "  \"generators\": [";
  for (std::size_t g = 0; g < m.generators().size(); ++g)
    os << (g ? ",\n    " : "\n    ") << matrix_to_json(m.generator(g), "    ");
  if (!m.generators().empty()) os << "\n  ";
  os << "]\n}\n";
  return os.str();
}

inline ModuleRep module_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("module JSON must be an object");
    const auto p = j.at("p").get<std::uint32_t>();
    const auto m = j.contains("ext_degree") ? j.at("ext_degree").get<unsigned>() : 1u;
    const Family fam = parse_family(j.at("family").get<std::string>());
    const auto& gens_json = j.at("generators");
    if (!gens_json.is_array()) throw InputError("\"generators\" must be an array");
    GroupData g = GroupData::make(fam, p, static_cast<unsigned>(gens_json.size()));
    if (j.contains("hopf")) g.hopf = parse_hopf(j.at("hopf").get<std::string>());
    const auto dim = j.at("dim").get<std::size_t>();
    Field f(p, m);
    std::vector<Matrix> gens;
    for (const auto& x : gens_json) gens.push_back(matrix_from_json(f, x, dim, dim));
    const std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
    return ModuleRep(g, f, dim, gens, name);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed module JSON: ") + e.what());
  }
}

inline ModuleRep module_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return module_from_json(j);
}

inline ModuleRep load_module(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open module file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return module_from_string(ss.str());
}

}  // namespace jstrata
