#pragma once

#include <map>
#include <optional>
#include <string>

#include "dnov/constructions.hpp"

namespace dnov {

// Environment for scalar expressions: identifiers other than `delta` must
// resolve here; `delta` stays the formal parameter.
using ParamMap = std::map<std::string, Rational>;

// Grammar: rational literals, identifier `delta` (or a bound parameter name),
// + - * / ^ and parentheses.
Scalar parse_scalar(const std::string& text, const ParamMap& params = {});

std::string scalar_to_string(const Scalar& s);

// Comma-separated coordinate vector, e.g. "1,0,-1/2".
Vec parse_vector(const std::string& text, std::size_t dim, const ParamMap& params = {});

struct LoadedAlgebra {
  std::string name;
  bool is_bialgebra = false;
  Algebra algebra;
  BiAlgebra bialgebra;

  std::optional<Rational> delta;  // instantiated delta, when given
  ParamMap params;                // all resolved parameters

  // Corpus metadata (optional in files).
  std::string family;  // declared identity family
  std::string gamma;   // "all", "delta" (= the delta parameter), or a rational

  std::size_t dim() const { return is_bialgebra ? bialgebra.dim() : algebra.dim(); }
  ProductBinding binding() const {
    return is_bialgebra ? ProductBinding::of(bialgebra) : ProductBinding::of(algebra);
  }
};

// Loads the JSON algebra format:
//   {"dim": n, "labels": [...],
//    "product": [{"i":1,"j":2,"out":{"2":"1"}}, ...],
//    "params": {"delta": "2"}}
// BiAlgebra files add "product2" and "role". Omitted (i, j) pairs are zero;
// indices are 1-based. `overrides` take precedence over file parameter
// defaults; values listed under "excluded" are rejected with
// ExcludedParameter. With keep_delta_symbolic the delta parameter is left
// formal and constants stay in Q(delta).
LoadedAlgebra load_algebra(const std::string& path, const ParamMap& overrides = {},
                           bool keep_delta_symbolic = false);

LinearMap load_linear_map(const std::string& path, const ParamMap& overrides = {},
                          bool keep_delta_symbolic = false);

std::string algebra_to_json(const Algebra& a);
std::string bialgebra_to_json(const BiAlgebra& b);
std::string linear_map_to_json(const LinearMap& m);

// Fixture corpus on disk. Resolution order for the directory: explicit
// argument, DNOV_FIXTURES environment variable, compiled-in default.
std::string fixture_dir(const std::string& explicit_dir = "");
std::string fixture_path(const std::string& name, const std::string& dir = "");

struct CorpusIndex {
  std::vector<std::string> novikov_table;   // N01..N12
  std::vector<std::string> prelie_table;    // P01..P14
  std::vector<std::string> novikov_extra;   // further delta-Novikov fixtures
  std::vector<std::string> np;              // Novikov-Poisson bialgebras
  std::vector<std::string> poisson;         // (transposed) Poisson / GD fixtures
  std::vector<std::string> carriers;        // commutative associative carriers
  std::vector<std::string> misc;            // other algebra fixtures
  std::vector<std::string> maps;            // linear map fixtures
  std::vector<std::string> all() const;
};

CorpusIndex load_corpus_index(const std::string& dir = "");

}  // namespace dnov
