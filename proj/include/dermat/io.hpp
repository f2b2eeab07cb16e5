#pragma once

// JSON file formats. Every rational is a string ("p" or "p/q") so values stay
// exact end to end; indices are 0-based.
//
// Algebra file:
//   {"name": "dual_numbers", "dim": 2, "basis_labels": ["1", "eps"],
//    "unit": ["1", "0"],
//    "mult": [{"i": 0, "j": 0, "k": 0, "c": "1"}, ...]}       e_i e_j += c e_k
//
// Module file:
//   {"name": "...", "dim": m, "algebra_dim": d,
//    "left":  [{"i": 0, "p": 0, "q": 0, "c": "1"}, ...],       e_i . f_p += c f_q
//    "right": [{"p": 0, "i": 0, "q": 0, "c": "1"}, ...]}       f_p . e_i += c f_q
//
// Map file:
//   {"kind": "derivation" | "linear_map", "algebra": "<name>",
//    "module": "regular" | "<name>", "n": 2 (optional),
//    "matrix": [["0", "1/2", ...], ...]}     module_dim rows, column j = image of e_j

#include "dermat/algebra.hpp"
#include "dermat/dercalc.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dermat {

/// Unreadable or ill-formed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline Rational json_rational(const nlohmann::json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": rational must be a string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline std::size_t json_index(const nlohmann::json& obj, const char* key, std::size_t bound, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_number_unsigned())
    throw ParseError(where + ": missing or non-integer field '" + key + "'");
  const auto v = obj.at(key).get<std::size_t>();
  if (v >= bound) throw ParseError(where + ": index '" + key + "' out of range");
  return v;
}

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline std::string rational_json(const Rational& r) { return to_string(r); }

}  // namespace detail

inline Algebra algebra_from_json(const nlohmann::json& j, const std::string& where = "algebra") {
  using detail::field;
  const auto& dim_v = field(j, "dim", where);
  if (!dim_v.is_number_unsigned() || dim_v.get<std::size_t>() == 0) throw ParseError(where + ": dim must be a positive integer");
  const std::size_t d = dim_v.get<std::size_t>();
  const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "unnamed";

  std::vector<std::string> labels;
  if (j.contains("basis_labels")) {
    const auto& l = j.at("basis_labels");
    if (!l.is_array() || l.size() != d) throw ParseError(where + ": basis_labels must list dim strings");
    for (const auto& s : l) {
      if (!s.is_string()) throw ParseError(where + ": basis label must be a string");
      labels.push_back(s.get<std::string>());
    }
  }
  const auto& unit_v = field(j, "unit", where);
  if (!unit_v.is_array() || unit_v.size() != d) throw ParseError(where + ": unit must list dim rationals");
  Vector unit;
  for (const auto& x : unit_v) unit.push_back(detail::json_rational(x, where + ".unit"));

  const auto& mult_v = field(j, "mult", where);
  if (!mult_v.is_array()) throw ParseError(where + ": mult must be an array");
  std::vector<StructureTriple> triples;
  for (const auto& t : mult_v) {
    const std::string w = where + ".mult";
    if (!t.is_object()) throw ParseError(w + ": entries must be objects");
    triples.push_back({detail::json_index(t, "i", d, w), detail::json_index(t, "j", d, w), detail::json_index(t, "k", d, w),
                       detail::json_rational(field(t, "c", w), w)});
  }
  return Algebra::from_triples(name, d, std::move(labels), triples, std::move(unit));
}

inline nlohmann::json algebra_to_json(const Algebra& a) {
  nlohmann::json j;
  j["name"] = a.name();
  j["dim"] = a.dim();
  j["basis_labels"] = a.labels();
  j["unit"] = nlohmann::json::array();
  for (const auto& x : a.unit()) j["unit"].push_back(detail::rational_json(x));
  j["mult"] = nlohmann::json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      for (const auto& [t, c] : a.product(i, k))
        j["mult"].push_back({{"i", i}, {"j", k}, {"k", t}, {"c", detail::rational_json(c)}});
  return j;
}

inline Algebra load_algebra(const std::string& path) { return algebra_from_json(detail::read_json(path), path); }

inline Bimodule bimodule_from_json(const nlohmann::json& j, std::size_t algebra_dim, const std::string& where = "module") {
  using detail::field;
  const auto& dim_v = field(j, "dim", where);
  if (!dim_v.is_number_unsigned() || dim_v.get<std::size_t>() == 0) throw ParseError(where + ": dim must be a positive integer");
  const std::size_t m = dim_v.get<std::size_t>();
  const auto& ad = field(j, "algebra_dim", where);
  if (!ad.is_number_unsigned() || ad.get<std::size_t>() != algebra_dim)
    throw ParseError(where + ": algebra_dim does not match the algebra");
  const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "unnamed";
  const std::size_t d = algebra_dim;
  std::vector<Rational> left(d * m * m, Rational(0)), right(m * d * m, Rational(0));
  for (const auto& t : field(j, "left", where)) {
    const std::string w = where + ".left";
    const auto i = detail::json_index(t, "i", d, w), p = detail::json_index(t, "p", m, w), q = detail::json_index(t, "q", m, w);
    left[(i * m + p) * m + q] += detail::json_rational(field(t, "c", w), w);
  }
  for (const auto& t : field(j, "right", where)) {
    const std::string w = where + ".right";
    const auto p = detail::json_index(t, "p", m, w), i = detail::json_index(t, "i", d, w), q = detail::json_index(t, "q", m, w);
    right[(p * d + i) * m + q] += detail::json_rational(field(t, "c", w), w);
  }
  return Bimodule(name, m, d, std::move(left), std::move(right));
}

inline nlohmann::json bimodule_to_json(const Bimodule& mb) {
  const std::size_t d = mb.algebra_dim(), m = mb.dim();
  nlohmann::json j;
  j["name"] = mb.name();
  j["dim"] = m;
  j["algebra_dim"] = d;
  j["left"] = nlohmann::json::array();
  j["right"] = nlohmann::json::array();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t p = 0; p < m; ++p) {
      for (const auto& [q, c] : mb.left_terms(i, p))
        j["left"].push_back({{"i", i}, {"p", p}, {"q", q}, {"c", detail::rational_json(c)}});
      for (const auto& [q, c] : mb.right_terms(p, i))
        j["right"].push_back({{"p", p}, {"i", i}, {"q", q}, {"c", detail::rational_json(c)}});
    }
  return j;
}

inline Bimodule load_bimodule(const std::string& path, std::size_t algebra_dim) {
  return bimodule_from_json(detail::read_json(path), algebra_dim, path);
}

struct MapFile {
  std::string kind = "linear_map";
  std::string algebra;
  std::string module = "regular";
  std::optional<std::size_t> n;
  Matrix matrix;
};

inline MapFile map_from_json(const nlohmann::json& j, const std::string& where = "map") {
  using detail::field;
  MapFile f;
  const auto& kind = field(j, "kind", where);
  if (!kind.is_string() || (kind != "derivation" && kind != "linear_map"))
    throw ParseError(where + ": kind must be \"derivation\" or \"linear_map\"");
  f.kind = kind.get<std::string>();
  if (j.contains("algebra") && j.at("algebra").is_string()) f.algebra = j.at("algebra").get<std::string>();
  if (j.contains("module") && j.at("module").is_string()) f.module = j.at("module").get<std::string>();
  if (j.contains("n")) {
    if (!j.at("n").is_number_unsigned()) throw ParseError(where + ": n must be a non-negative integer");
    f.n = j.at("n").get<std::size_t>();
  }
  const auto& rows = field(j, "matrix", where);
  if (!rows.is_array() || rows.empty() || !rows.at(0).is_array() || rows.at(0).empty())
    throw ParseError(where + ": matrix must be a non-empty array of rows");
  const std::size_t cols = rows.at(0).size();
  f.matrix = Matrix(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows.at(r).is_array() || rows.at(r).size() != cols) throw ParseError(where + ": matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) f.matrix(r, c) = detail::json_rational(rows.at(r).at(c), where + ".matrix");
  }
  return f;
}

inline nlohmann::json map_to_json(const MapFile& f) {
  nlohmann::json j;
  j["kind"] = f.kind;
  j["algebra"] = f.algebra;
  j["module"] = f.module;
  if (f.n) j["n"] = *f.n;
  j["matrix"] = nlohmann::json::array();
  for (std::size_t r = 0; r < f.matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < f.matrix.cols(); ++c) row.push_back(detail::rational_json(f.matrix(r, c)));
    j["matrix"].push_back(std::move(row));
  }
  return j;
}

inline MapFile load_map(const std::string& path) { return map_from_json(detail::read_json(path), path); }

}  // namespace dermat
