#pragma once

#include <string>
#include <vector>

#include "dnov/io.hpp"
#include "dnov/operad.hpp"

namespace dnov {
namespace verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // may hold several ;-separated facts
  double seconds = 0.0;
};

struct Options {
  std::string fixtures_dir;    // resolved via fixture_dir() when empty
  Rational default_delta{2};
  std::vector<Rational> table_delta_samples{Rational(2), Rational(3), Rational(5)};
  std::vector<Rational> koszul_deltas{Rational(0), Rational(2)};
  std::vector<Rational> operad_deltas{Rational(0), Rational(2), Rational(3), Rational(-1)};
  unsigned rng_seed = 20250811;
  bool enforce_budgets = true;
};

// Acceptance criteria 1..13; each returns exactly one result line.
CheckResult run_criterion(int criterion, const Options& opt);

// Scope mapping used by the verify-paper command:
//   tables -> {1, 2}; constructions -> {4, 5, 6, 8}; series -> {3, 7, 12};
//   operad -> {9, 10, 11}; all -> {1..13}.
std::vector<int> criteria_for_scope(const std::string& scope);
std::vector<CheckResult> run_scope(const std::string& scope, const Options& opt);

// Corpus integrity: every fixture parses and passes its declared family at
// its declared gamma / delta.
CheckResult corpus_self_check(const Options& opt);

}  // namespace verify
}  // namespace dnov
