#pragma once

// JSON and CSV emission and parsing for series, tensors, forest-formula
// terms, tree statistics and cumulant tables. Rationals are always strings.

#include <prelie/forest.hpp>
#include <prelie/freeprelie.hpp>
#include <prelie/nc.hpp>
#include <prelie/trees.hpp>
#include <prelie/words.hpp>

#include <json.hpp>

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace prelie::io {

using json = nlohmann::ordered_json;

inline std::string slot_string(const Forest& f) { return to_string(f); }
inline std::string slot_string(const WordMonomial& m) { return to_string(m); }

/// [{"forest": "<bracket string>", "coeff": "p/q"}, ...] in tree order.
inline json series_json(const TreeCombination& x) {
  json out = json::array();
  for (const auto& [t, c] : x) out.push_back({{"forest", t.key()}, {"coeff", c.str()}});
  return out;
}

inline json series_json(const TreeSeries& x) { return series_json(x.terms()); }

inline json forest_poly_json(const ForestPoly& x) {
  json out = json::array();
  for (const auto& [f, c] : x) out.push_back({{"forest", to_string(f)}, {"coeff", c.str()}});
  return out;
}

inline json word_poly_json(const WordPoly& x) {
  json out = json::array();
  for (const auto& [m, c] : x) out.push_back({{"monomial", to_string(m)}, {"coeff", c.str()}});
  return out;
}

template <class G>
json tensor_json(const Tensor<G>& t) {
  json out = json::array();
  for (const auto& [slots, c] : t) {
    json s = json::array();
    for (const auto& m : slots) s.push_back(slot_string(m));
    out.push_back({{"slots", s}, {"coeff", c.str()}});
  }
  return out;
}

/// {"tree": "(d1;d2)[...]", "lambda": "p/q", "slots": [...]}
template <class Index>
json forest_term_json(const ForestTerm<Index>& term) {
  json slots = json::array();
  for (const auto& m : term.slots) slots.push_back(slot_string(m));
  return {{"tree", term.tree.key()}, {"lambda", term.lambda.str()}, {"slots", slots}};
}

struct TreeRow {
  RootedTree tree;
  Integer sigma;
  Integer factorial;
  Integer linearizations;
  Rational cm;
  Rational omega;
};

inline TreeRow tree_row(const RootedTree& t) {
  return {t, sigma(t), tree_factorial(t), num_linearizations(t), cm_coefficient(t), murua_omega(t)};
}

inline const std::vector<std::string>& tree_columns() {
  static const std::vector<std::string> cols{"tree", "size", "sigma", "factorial", "linearizations", "cm", "omega"};
  return cols;
}

inline json tree_rows_json(const std::vector<TreeRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"tree", r.tree.key()},
                   {"size", r.tree.size()},
                   {"sigma", r.sigma.get_str()},
                   {"factorial", r.factorial.get_str()},
                   {"linearizations", r.linearizations.get_str()},
                   {"cm", r.cm.str()},
                   {"omega", r.omega.str()}});
  return out;
}

/// Header line plus one row per tree; no field needs quoting.
inline std::string tree_rows_csv(const std::vector<TreeRow>& rows) {
  std::ostringstream os;
  const auto& cols = tree_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& r : rows)
    os << r.tree.key() << "," << r.tree.size() << "," << r.sigma.get_str() << "," << r.factorial.get_str() << ","
       << r.linearizations.get_str() << "," << r.cm.str() << "," << r.omega.str() << "\n";
  return os.str();
}

inline json cumulant_table_json(const CumulantTable& t) {
  json vars = json::array();
  for (char v : t.variables()) vars.push_back(std::string(1, v));
  json values = json::object();
  for (const auto& [w, c] : t.values()) values[w.letters()] = c.str();
  return {{"brand", to_string(t.brand())}, {"variables", vars}, {"maxlen", t.maxlen()}, {"values", values}};
}

inline Rational parse_rational_field(const json& v, const std::string& where) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw std::invalid_argument(where + ": expected a rational string \"p/q\"");
}

/// Parses {"brand", "variables", "maxlen", "values"}; variables are
/// single-character symbols. Completeness is not checked here.
inline CumulantTable parse_cumulant_table(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("cumulant table: expected a JSON object");
  for (const char* field : {"brand", "variables", "maxlen", "values"})
    if (!j.contains(field)) throw std::invalid_argument(std::string("cumulant table: missing field '") + field + "'");
  const Brand brand = parse_brand(j.at("brand").get<std::string>());
  std::string variables;
  for (const auto& v : j.at("variables")) {
    const auto s = v.get<std::string>();
    if (s.size() != 1) throw std::invalid_argument("cumulant table: variable '" + s + "' is not a single character");
    variables += s;
  }
  if (!j.at("maxlen").is_number_integer()) throw std::invalid_argument("cumulant table: maxlen must be an integer");
  const int maxlen = j.at("maxlen").get<int>();
  CumulantTable table(brand, variables, maxlen);
  if (!j.at("values").is_object()) throw std::invalid_argument("cumulant table: values must be an object");
  for (const auto& [word, value] : j.at("values").items()) {
    if (word.empty()) throw std::invalid_argument("cumulant table: empty word key");
    table.set(Word(word), parse_rational_field(value, "value of '" + word + "'"));
  }
  return table;
}

inline CumulantTable parse_cumulant_table(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("cumulant table: invalid JSON: ") + e.what());
  }
  return parse_cumulant_table(j);
}

inline CumulantTable parse_cumulant_table(const char* text) { return parse_cumulant_table(std::string(text)); }

}  // namespace prelie::io
