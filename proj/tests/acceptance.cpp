// Acceptance suite: one line per criterion, exit code = number of failures.
// Run all criteria with no arguments, or a subset by number.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "dnov/verify.hpp"

int main(int argc, char** argv) {
  dnov::verify::Options opt;
#ifdef DNOV_TEST_FIXTURES
  opt.fixtures_dir = DNOV_TEST_FIXTURES;
#endif
  std::vector<int> criteria;
  for (int i = 1; i < argc; ++i) criteria.push_back(std::atoi(argv[i]));
  if (criteria.empty())
    for (int c = 1; c <= 13; ++c) criteria.push_back(c);

  int failures = 0;
  for (int c : criteria) {
    const auto r = dnov::verify::run_criterion(c, opt);
    std::printf("[%s] %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds);
    if (!r.pass) {
      std::printf("       %s\n", r.detail.c_str());
      ++failures;
    }
  }
  const auto self = dnov::verify::corpus_self_check(opt);
  std::printf("[%s] %s\n", self.pass ? "PASS" : "FAIL", self.name.c_str());
  if (!self.pass) {
    std::printf("       %s\n", self.detail.c_str());
    ++failures;
  }
  return failures;
}
