#pragma once

// JSON forms of exact values, input files and reports.

#include "mathieu/exact_scalar.hpp"
#include "mathieu/haar.hpp"
#include "mathieu/hull.hpp"
#include "mathieu/power.hpp"
#include "mathieu/wigner.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mathieu {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// Malformed input; field() names the offending location, e.g. "terms[1].l".
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// ---------------------------------------------------------------------------
// Values

inline Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Json to_json(const RadicalScalar& x) {
  auto part = [](const RadicalScalar::TermMap& m) {
    Json arr = Json::array();
    for (const auto& [radicand, coeff] : m) arr.push_back({{"radicand", integer_json(radicand)}, {"coeff", to_string(coeff)}});
    return arr;
  };
  return {{"real", part(x.real_part())}, {"imag", part(x.imag_part())}};
}

inline Json to_json(const GaussianRational& z) { return {{"re", to_string(z.re)}, {"im", to_string(z.im)}}; }

inline Json to_json(const MatrixElementIndex& idx) {
  return {{"l", idx.l.to_string()}, {"m", idx.m.to_string()}, {"n", idx.n.to_string()}};
}

inline Json to_json(const WeightPoint& p) { return Json::array({p.m.to_string(), p.n.to_string()}); }

namespace detail {

inline const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where.empty() ? key : where + "." + key, "missing field");
  return *it;
}

inline std::string field_path(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

inline std::string require_string(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(field_path(where, key), "expected a string");
  return v.get<std::string>();
}

inline HalfInt parse_half(const Json& obj, const std::string& key, const std::string& where) {
  const auto text = require_string(obj, key, where);
  try {
    return HalfInt::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(field_path(where, key), e.what());
  }
}

inline Rational parse_rational_field(const Json& obj, const std::string& key, const std::string& where) {
  const auto text = require_string(obj, key, where);
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw ParseError(field_path(where, key), e.what());
  }
}

inline Integer parse_integer_json(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(v.get<long>());
  if (v.is_string()) {
    try {
      return detail::parse_integer(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  throw ParseError(where, "expected an integer");
}

inline void check_schema(const Json& doc) {
  if (!doc.is_object()) throw ParseError("(root)", "expected a JSON object");
  if (auto it = doc.find("schema"); it != doc.end() && (!it->is_number_integer() || it->get<int>() != schema_version))
    throw ParseError("schema", "unsupported schema version");
}

}  // namespace detail

inline MatrixElementIndex index_from_json(const Json& obj, const std::string& where) {
  MatrixElementIndex idx{detail::parse_half(obj, "l", where), detail::parse_half(obj, "m", where),
                         detail::parse_half(obj, "n", where)};
  if (!idx.is_valid()) throw ParseError(where, "invalid matrix element index " + idx.to_string());
  return idx;
}

inline RadicalScalar radical_from_json(const Json& obj, const std::string& where = "") {
  std::map<Integer, Rational> parts[2];
  const char* keys[2] = {"real", "imag"};
  for (int p = 0; p < 2; ++p) {
    const std::string path = detail::field_path(where, keys[p]);
    const Json& arr = detail::require(obj, keys[p], where);
    if (!arr.is_array()) throw ParseError(path, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string item = path + "[" + std::to_string(i) + "]";
      const Integer radicand = detail::parse_integer_json(detail::require(arr[i], "radicand", item), item + ".radicand");
      if (radicand <= 0) throw ParseError(item + ".radicand", "radicand must be positive");
      parts[p][radicand] += detail::parse_rational_field(arr[i], "coeff", item);
    }
  }
  return RadicalScalar::from_terms(parts[0], parts[1]);
}

/// "l,a,b" with each entry "k" or "k/2".
inline MatrixElementIndex parse_index_triple(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  parts.push_back(current);
  if (parts.size() != 3) throw ParseError("index", "expected 'l,m,n', got '" + std::string(text) + "'");
  MatrixElementIndex idx;
  const char* names[3] = {"l", "m", "n"};
  HalfInt* slots[3] = {&idx.l, &idx.m, &idx.n};
  for (int i = 0; i < 3; ++i) {
    try {
      *slots[i] = HalfInt::parse(parts[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      throw ParseError(std::string("index.") + names[i], e.what());
    }
  }
  if (!idx.is_valid()) throw ParseError("index", "invalid matrix element index " + idx.to_string());
  return idx;
}

// ---------------------------------------------------------------------------
// Input files

/// {"schema": 1, "terms": [{"l": "1/2", "m": "1/2", "n": "-1/2", "coeff": {"re": "1", "im": "0"}}, ...]}
inline Json function_to_json(const FiniteFunction& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    Json term = to_json(t.index);
    term["coeff"] = to_json(t.coeff);
    terms.push_back(std::move(term));
  }
  return {{"schema", schema_version}, {"terms", std::move(terms)}};
}

inline FiniteFunction function_from_json(const Json& doc) {
  detail::check_schema(doc);
  const Json& terms = detail::require(doc, "terms", "");
  if (!terms.is_array()) throw ParseError("terms", "expected an array");
  std::vector<Term> out;
  std::set<MatrixElementIndex> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    const auto idx = index_from_json(terms[i], where);
    const Json& coeff = detail::require(terms[i], "coeff", where);
    const std::string cpath = where + ".coeff";
    GaussianRational c(detail::parse_rational_field(coeff, "re", cpath),
                       coeff.contains("im") ? detail::parse_rational_field(coeff, "im", cpath) : Rational(0));
    if (c.is_zero()) throw ParseError(cpath, "coefficient must be nonzero");
    if (!seen.insert(idx).second) throw ParseError(where, "duplicate index " + idx.to_string());
    out.push_back({idx, c});
  }
  return FiniteFunction(std::move(out));
}

/// {"schema": 1, "factors": [{"l": "1", "m": "0", "n": "0", "power": 2}, ...]}; power defaults to 1.
inline Json product_to_json(const ProductSpec& spec) {
  Json factors = Json::array();
  for (const auto& f : spec.factors()) {
    Json item = to_json(f.index);
    item["power"] = f.power;
    factors.push_back(std::move(item));
  }
  return {{"schema", schema_version}, {"factors", std::move(factors)}};
}

inline ProductSpec product_from_json(const Json& doc) {
  detail::check_schema(doc);
  const Json& factors = detail::require(doc, "factors", "");
  if (!factors.is_array()) throw ParseError("factors", "expected an array");
  ProductSpec spec;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string where = "factors[" + std::to_string(i) + "]";
    const auto idx = index_from_json(factors[i], where);
    unsigned long power = 1;
    if (auto it = factors[i].find("power"); it != factors[i].end()) {
      if (!it->is_number_unsigned()) throw ParseError(where + ".power", "expected a nonnegative integer");
      power = it->get<unsigned long>();
    }
    spec.multiply(idx, power);
  }
  return spec;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("(file)", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("(file)", std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const HullVerdict& v, const SupportHull& hull) {
  Json out{{"contains_origin", v.contains_origin}};
  Json points = Json::array();
  for (const auto& p : hull.points()) points.push_back(to_json(p));
  out["points"] = std::move(points);
  if (v.contains_origin) {
    Json weights = Json::array();
    for (const auto& w : v.weights) weights.push_back(to_string(w));
    out["weights"] = std::move(weights);
  } else if (v.separator) {
    out["separator"] = {{"u", to_string(v.separator->u)},
                        {"v", to_string(v.separator->v)},
                        {"rhs", to_string(v.separator->rhs)},
                        {"text", to_string(v.separator->u) + "*m + " + to_string(v.separator->v) +
                                     "*n >= " + to_string(v.separator->rhs)}};
  }
  return out;
}

inline Json scan_to_json(const std::vector<std::pair<unsigned long, RadicalScalar>>& scan) {
  Json rows = Json::array();
  for (const auto& [p, value] : scan) rows.push_back({{"P", p}, {"value", to_json(value)}, {"text", value.to_string()}});
  return rows;
}

}  // namespace mathieu
