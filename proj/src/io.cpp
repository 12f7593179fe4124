#include "dnov/io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dnov/errors.hpp"

#ifndef DNOV_DEFAULT_FIXTURE_DIR
#define DNOV_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace dnov {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scalar expression grammar
// ---------------------------------------------------------------------------

namespace {

struct ScalarParser {
  const std::string& s;
  std::size_t pos = 0;
  const ParamMap& params;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  Scalar parse_expr() {
    Scalar v = parse_term();
    for (;;) {
      if (eat('+'))
        v += parse_term();
      else if (eat('-'))
        v -= parse_term();
      else
        return v;
    }
  }

  Scalar parse_term() {
    Scalar v = parse_factor();
    for (;;) {
      if (eat('*'))
        v *= parse_factor();
      else if (eat('/'))
        v /= parse_factor();
      else
        return v;
    }
  }

  Scalar parse_factor() {
    if (eat('-')) return -parse_factor();
    if (eat('+')) return parse_factor();
    Scalar base = parse_atom();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw parse_error("expected exponent in scalar expression");
      base = base.pow(static_cast<unsigned>(std::stoul(s.substr(start, pos - start))));
    }
    return base;
  }

  Scalar parse_atom() {
    skip_ws();
    if (pos >= s.size()) throw parse_error("unexpected end of scalar expression");
    if (eat('(')) {
      Scalar v = parse_expr();
      if (!eat(')')) throw parse_error("missing ')' in scalar expression");
      return v;
    }
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return Scalar(Rational::parse(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                s[pos] == '_'))
        ++pos;
      const std::string name = s.substr(start, pos - start);
      if (name == "delta") return Scalar::delta();
      auto it = params.find(name);
      if (it == params.end())
        throw parse_error("unbound parameter '" + name + "' in scalar expression");
      return Scalar(it->second);
    }
    throw parse_error(std::string("unexpected character '") + c +
                      "' in scalar expression");
  }
};

}  // namespace

Scalar parse_scalar(const std::string& text, const ParamMap& params) {
  ScalarParser p{text, 0, params};
  Scalar v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw parse_error("trailing characters in scalar expression: '" + text + "'");
  return v;
}

std::string scalar_to_string(const Scalar& s) { return s.str(); }

Vec parse_vector(const std::string& text, std::size_t dim, const ParamMap& params) {
  Vec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    const std::string piece =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty() || !out.empty() || comma != std::string::npos)
      out.push_back(parse_scalar(piece, params));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != dim)
    throw dimension_mismatch("vector has " + std::to_string(out.size()) +
                             " coordinates, expected " + std::to_string(dim));
  return out;
}

// ---------------------------------------------------------------------------
// JSON algebra files
// ---------------------------------------------------------------------------

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

Algebra parse_product_table(const json& entries, std::size_t dim,
                            const std::vector<std::string>& labels,
                            const ParamMap& params) {
  Algebra a(dim, labels);
  for (const auto& e : entries) {
    if (!e.contains("i") || !e.contains("j") || !e.contains("out"))
      throw parse_error("product entry needs fields i, j, out");
    const std::size_t i = e.at("i").get<std::size_t>();
    const std::size_t j = e.at("j").get<std::size_t>();
    if (i < 1 || i > dim || j < 1 || j > dim)
      throw parse_error("product entry index out of range (indices are 1-based)");
    Vec v(dim, Scalar(0));
    for (const auto& [key, val] : e.at("out").items()) {
      const std::size_t k = static_cast<std::size_t>(std::stoul(key));
      if (k < 1 || k > dim) throw parse_error("output index out of range: " + key);
      v[k - 1] = parse_scalar(val.get<std::string>(), params);
    }
    a.set_basis_product(i - 1, j - 1, std::move(v));
  }
  return a;
}

}  // namespace

LoadedAlgebra load_algebra(const std::string& path, const ParamMap& overrides,
                           bool keep_delta_symbolic) {
  const json j = read_json_file(path);
  LoadedAlgebra out;
  out.name = j.value("name", "");
  if (!j.contains("dim")) throw parse_error(path + ": missing 'dim'");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();

  // Resolve declared parameters: overrides beat file defaults.
  ParamMap resolved;
  std::optional<Rational> delta_value;
  if (j.contains("params")) {
    for (const auto& [key, val] : j.at("params").items()) {
      std::optional<Rational> v;
      auto ov = overrides.find(key);
      if (ov != overrides.end())
        v = ov->second;
      else if (!val.is_null() && !(key == "delta" && keep_delta_symbolic))
        v = Rational::parse(val.get<std::string>());
      if (key == "delta") {
        if (v)
          delta_value = *v;
        else if (!keep_delta_symbolic)
          throw Error("MissingParameter",
                      path + ": parameter 'delta' needs a value (or symbolic mode)");
      } else {
        if (!v)
          throw Error("MissingParameter", path + ": parameter '" + key + "' needs a value");
        resolved[key] = *v;
      }
    }
  }
  for (const auto& [key, val] : overrides)
    if (key == "delta")
      delta_value = val;
    else
      resolved[key] = val;

  // Excluded parameter values; entries may reference the other parameters.
  if (j.contains("excluded")) {
    for (const auto& [key, list] : j.at("excluded").items()) {
      std::optional<Rational> actual;
      if (key == "delta")
        actual = delta_value;
      else if (resolved.count(key))
        actual = resolved.at(key);
      if (!actual) continue;
      for (const auto& expr : list) {
        const Scalar excluded_value = parse_scalar(expr.get<std::string>(), resolved);
        Rational ex;
        if (excluded_value.is_rational())
          ex = excluded_value.as_rational();
        else if (delta_value)
          ex = excluded_value.evaluate_at_delta(*delta_value);
        else
          continue;
        if (*actual == ex)
          throw Error("ExcludedParameter",
                      path + ": parameter " + key + " = " + actual->str() +
                          " is excluded for this fixture");
      }
    }
  }

  if (j.contains("excluded_pairs")) {
    for (const auto& pair : j.at("excluded_pairs")) {
      bool all_match = true;
      for (const auto& [key, expr] : pair.items()) {
        std::optional<Rational> actual;
        if (key == "delta")
          actual = delta_value;
        else if (resolved.count(key))
          actual = resolved.at(key);
        if (!actual) {
          all_match = false;
          break;
        }
        const Scalar ex = parse_scalar(expr.get<std::string>(), resolved);
        if (!ex.is_rational() || *actual != ex.as_rational()) {
          all_match = false;
          break;
        }
      }
      if (all_match)
        throw Error("ExcludedParameter",
                    path + ": this parameter combination is excluded");
    }
  }

  if (!j.contains("product")) throw parse_error(path + ": missing 'product'");
  Algebra first = parse_product_table(j.at("product"), dim, labels, resolved);
  if (delta_value && !first.delta_free()) first = first.evaluated_at(*delta_value);

  out.params = resolved;
  out.delta = delta_value;
  if (j.contains("checks")) {
    out.family = j.at("checks").value("family", "");
    out.gamma = j.at("checks").value("gamma", "");
  }

  if (j.contains("product2")) {
    Algebra second = parse_product_table(j.at("product2"), dim, labels, resolved);
    if (delta_value && !second.delta_free()) second = second.evaluated_at(*delta_value);
    out.is_bialgebra = true;
    out.bialgebra.productA = std::move(first);
    out.bialgebra.productB = std::move(second);
    out.bialgebra.roleA = ProductRole::CommAssoc;
    out.bialgebra.roleB = role_from_name(j.value("role", "novikov"));
  } else {
    out.algebra = std::move(first);
  }
  return out;
}

LinearMap load_linear_map(const std::string& path, const ParamMap& overrides,
                          bool keep_delta_symbolic) {
  const json j = read_json_file(path);
  ParamMap resolved = overrides;
  std::optional<Rational> delta_value;
  if (j.contains("params")) {
    for (const auto& [key, val] : j.at("params").items()) {
      std::optional<Rational> v;
      auto ov = overrides.find(key);
      if (ov != overrides.end())
        v = ov->second;
      else if (!val.is_null() && !(key == "delta" && keep_delta_symbolic))
        v = Rational::parse(val.get<std::string>());
      if (key == "delta") {
        if (v) delta_value = *v;
      } else if (v) {
        resolved[key] = *v;
      }
    }
  }
  if (overrides.count("delta")) delta_value = overrides.at("delta");
  if (!j.contains("matrix")) throw parse_error(path + ": missing 'matrix'");
  const auto& rows = j.at("matrix");
  const std::size_t n = rows.size();
  LinearMap m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw parse_error(path + ": matrix must be square");
    for (std::size_t jj = 0; jj < n; ++jj)
      m.set_entry(i, jj, parse_scalar(rows[i][jj].get<std::string>(), resolved));
  }
  if (delta_value && !m.delta_free()) m = m.evaluated_at(*delta_value);
  if (!keep_delta_symbolic && !delta_value && !m.delta_free())
    throw Error("MissingParameter", path + ": matrix uses delta; give a value");
  return m;
}

namespace {

json product_table_to_json(const Algebra& a) {
  json entries = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vec& v = a.basis_product(i, j);
      json out = json::object();
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!v[k].is_zero()) out[std::to_string(k + 1)] = v[k].str();
      if (!out.empty()) entries.push_back({{"i", i + 1}, {"j", j + 1}, {"out", out}});
    }
  return entries;
}

}  // namespace

std::string algebra_to_json(const Algebra& a) {
  json j;
  j["dim"] = a.dim();
  j["labels"] = a.labels();
  j["product"] = product_table_to_json(a);
  return j.dump(2);
}

std::string bialgebra_to_json(const BiAlgebra& b) {
  json j;
  j["dim"] = b.dim();
  j["labels"] = b.productA.labels();
  j["product"] = product_table_to_json(b.productA);
  j["product2"] = product_table_to_json(b.productB);
  j["role"] = role_name(b.roleB);
  return j.dump(2);
}

std::string linear_map_to_json(const LinearMap& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m.entry(i, j).str());
    rows.push_back(row);
  }
  json j;
  j["matrix"] = rows;
  return j.dump(2);
}

std::string fixture_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("DNOV_FIXTURES")) return env;
  return DNOV_DEFAULT_FIXTURE_DIR;
}

std::string fixture_path(const std::string& name, const std::string& dir) {
  // Accept direct paths as well as bare fixture names.
  std::ifstream direct(name);
  if (direct.good()) return name;
  return fixture_dir(dir) + "/" + name + ".json";
}

CorpusIndex load_corpus_index(const std::string& dir) {
  const json j = read_json_file(fixture_dir(dir) + "/corpus.json");
  CorpusIndex idx;
  auto grab = [&](const char* key, std::vector<std::string>& out) {
    if (j.contains(key)) out = j.at(key).get<std::vector<std::string>>();
  };
  grab("novikov_table", idx.novikov_table);
  grab("prelie_table", idx.prelie_table);
  grab("novikov_extra", idx.novikov_extra);
  grab("np", idx.np);
  grab("poisson", idx.poisson);
  grab("carriers", idx.carriers);
  grab("misc", idx.misc);
  grab("maps", idx.maps);
  return idx;
}

std::vector<std::string> CorpusIndex::all() const {
  std::vector<std::string> out;
  for (const auto* v : {&novikov_table, &prelie_table, &novikov_extra, &np,
                        &poisson, &carriers, &misc})
    out.insert(out.end(), v->begin(), v->end());
  return out;
}

}  // namespace dnov
