#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dnov/errors.hpp"
#include "dnov/io.hpp"
#include "dnov/linalg.hpp"

using namespace dnov;

namespace {

DeltaPoly P(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long x : coeffs) c.push_back(Rational(x));
  return DeltaPoly(std::move(c));
}

Scalar random_scalar(std::mt19937_64& rng, bool allow_denominator = true) {
  std::uniform_int_distribution<int> coeff(-6, 6);
  std::uniform_int_distribution<int> deg(0, 2);
  auto poly = [&] {
    std::vector<Rational> c(deg(rng) + 1, Rational(0));
    for (auto& x : c) x = Rational(coeff(rng));
    return DeltaPoly(std::move(c));
  };
  DeltaPoly num = poly();
  DeltaPoly den(Rational(1));
  if (allow_denominator) {
    do {
      den = poly();
    } while (den.is_zero());
  }
  return Scalar(num, den);
}

}  // namespace

TEST_CASE("rational arithmetic and parsing") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational::parse("-10/15") == Rational(-2, 3));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK(Rational(2, 3).inverse() == Rational(3, 2));
  CHECK(Rational(-5).abs() == Rational(5));
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), Error);
  CHECK_THROWS_AS(Rational::parse("2x"), Error);
}

TEST_CASE("polynomial gcd examples") {
  const DeltaPoly d = DeltaPoly::delta();
  // gcd(delta - 1, delta^2 - 1) = delta - 1
  CHECK(poly_gcd(P({-1, 1}), P({-1, 0, 1})) == P({-1, 1}));
  // gcd(p, 0) = monic(p)
  CHECK(poly_gcd(P({2, 4}), DeltaPoly()) == P({2, 4}).monic());
  CHECK(poly_gcd(DeltaPoly(), DeltaPoly()) == DeltaPoly());
  // gcd(delta^2 - delta, delta) = delta
  CHECK(poly_gcd(P({0, -1, 1}), d) == d);
}

TEST_CASE("polynomial division, roots, factors") {
  auto [q, r] = divmod(P({-1, 0, 1}), P({-1, 1}));
  CHECK(q == P({1, 1}));
  CHECK(r.is_zero());
  CHECK_THROWS_AS(exact_div(P({1, 1}), P({0, 1})), Error);

  // roots of delta(delta-1)(2 delta-1)
  const DeltaPoly p = P({0, 1}) * P({-1, 1}) * P({-1, 2});
  auto roots = rational_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == Rational(0));
  CHECK(roots[1] == Rational(1, 2));
  CHECK(roots[2] == Rational(1));

  // (delta^2+1) has no rational roots and is reported unsplit
  auto factors = report_factors(P({-1, 1}) * P({1, 0, 1}));
  REQUIRE(factors.size() == 2);
  CHECK(factors[0] == P({-1, 1}));
  CHECK(factors[1] == P({1, 0, 1}));
}

TEST_CASE("scalar field arithmetic is exact") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Scalar s = random_scalar(rng);
    if (s.is_zero()) continue;
    CHECK((s * s.inverse()).is_one());
    CHECK((s - s).is_zero());
    Scalar t = random_scalar(rng);
    CHECK((s + t) * (s + t) == s * s + Scalar(2) * s * t + t * t);
  }
}

TEST_CASE("scalar canonical form") {
  // (delta^2-1)/(delta-1) normalizes to delta+1
  Scalar s(P({-1, 0, 1}), P({-1, 1}));
  CHECK(s == Scalar(P({1, 1})));
  CHECK(s.den().is_one());
  // denominator kept monic
  Scalar t(P({1}), P({-1, 2}));
  CHECK(t.den().leading() == Rational(1));
  // canonicalization is idempotent: rebuilding from parts changes nothing
  CHECK(Scalar(t.num(), t.den()) == t);
}

TEST_CASE("evaluate at delta and poles") {
  const Scalar inv_d1 = Scalar(1) / Scalar(P({1, 1}));  // 1/(delta+1)
  CHECK(inv_d1.evaluate_at_delta(Rational(1)) == Rational(1, 2));
  CHECK_THROWS_AS(inv_d1.evaluate_at_delta(Rational(-1)), Error);
  try {
    inv_d1.evaluate_at_delta(Rational(-1));
  } catch (const Error& e) {
    CHECK(e.code() == "PoleAtDelta");
  }
  const Scalar s = Scalar::delta() / Scalar(P({-1, 2}));  // delta/(2 delta-1)
  CHECK(s.evaluate_at_delta(Rational(2)) == Rational(2, 3));
}

TEST_CASE("rank and nullspace: basic examples") {
  // 2x2 identity
  ExactMatrix id(2, 2);
  id.set(0, 0, Scalar(1));
  id.set(1, 1, Scalar(1));
  auto rn = rank_and_nullspace(id);
  CHECK(rn.rank == 2);
  CHECK(rn.nullspace.empty());
  CHECK(rn.pivot_denominators.empty());

  // 1x1 matrix [delta - 1]
  ExactMatrix m(1, 1);
  m.set(0, 0, Scalar(P({-1, 1})));
  auto rn2 = rank_and_nullspace(m);
  CHECK(rn2.rank == 1);
  REQUIRE(rn2.pivot_denominators.size() == 1);
  CHECK(rn2.pivot_denominators[0] == P({-1, 1}));
}

TEST_CASE("nullspace vectors solve the system") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coeff(-4, 4), dims(2, 5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = dims(rng), c = dims(rng);
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        const int v = coeff(rng);
        if (v != 0) m.set(i, j, Scalar(Rational(v)));
      }
    auto rn = rank_and_nullspace(m);
    CHECK(rn.rank + rn.nullspace.size() == c);
    for (const auto& v : rn.nullspace)
      for (std::size_t i = 0; i < r; ++i) {
        Scalar dot(0);
        for (std::size_t j = 0; j < c; ++j) dot += m.at(i, j) * v[j];
        CHECK(dot.is_zero());
      }
  }
}

TEST_CASE("symbolic rank specializes consistently") {
  // rank over Q(delta) equals rank at rational points away from the recorded
  // factors; [[1, delta], [delta, delta^2]] drops rank nowhere, rank 1
  ExactMatrix m(2, 2);
  m.set(0, 0, Scalar(1));
  m.set(0, 1, Scalar::delta());
  m.set(1, 0, Scalar::delta());
  m.set(1, 1, Scalar::delta() * Scalar::delta());
  auto rn = rank_and_nullspace(m);
  CHECK(rn.rank == 1);
  for (long d : {0L, 1L, 2L, 5L}) {
    ExactMatrix at(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        at.set(i, j, Scalar(m.at(i, j).evaluate_at_delta(Rational(d))));
    CHECK(rank_and_nullspace(at).rank == 1);
  }
}

TEST_CASE("symbolic nullspace vectors solve the system over Q(delta)") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> coeff(-3, 3), dims(2, 4), deg(0, 1), pick(0, 2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = dims(rng), c = dims(rng);
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        if (pick(rng) == 0) continue;
        std::vector<Rational> cs(deg(rng) + 1, Rational(0));
        for (auto& x : cs) x = Rational(coeff(rng));
        m.set(i, j, Scalar(DeltaPoly(cs)));
      }
    auto rn = rank_and_nullspace(m);
    CHECK(rn.rank + rn.nullspace.size() == c);
    for (const auto& v : rn.nullspace)
      for (std::size_t i = 0; i < r; ++i) {
        Scalar dot(0);
        for (std::size_t j = 0; j < c; ++j)
          if (!v[j].is_zero()) dot += m.at(i, j) * v[j];
        CHECK(dot.is_zero());
      }
  }
}

TEST_CASE("sparse rank agrees with dense") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coeff(-3, 3), dims(2, 6);
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = dims(rng), c = dims(rng);
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        const int v = coeff(rng);
        if (v != 0) m.set(i, j, Scalar(Rational(v)));
      }
    CHECK(rank_only(m).rank == rank_and_nullspace(m).rank);
  }
}

TEST_CASE("scalar strings round-trip") {
  CHECK(parse_scalar("3/4") == Scalar(Rational(3, 4)));
  CHECK(parse_scalar("delta") == Scalar::delta());
  CHECK(parse_scalar("(delta-1)/(2*delta-1)") == Scalar(P({-1, 1}), P({-1, 2})));
  CHECK(parse_scalar("delta^2-3*delta+1") == Scalar(P({1, -3, 1})));
  CHECK(parse_scalar("-1/2") == Scalar(Rational(-1, 2)));
  CHECK(parse_scalar("1/delta") == Scalar(DeltaPoly(Rational(1)), DeltaPoly::delta()));
  CHECK_THROWS_AS(parse_scalar("delta +"), Error);
  CHECK_THROWS_AS(parse_scalar("alpha"), Error);
  CHECK(parse_scalar("alpha+1", {{"alpha", Rational(3)}}) == Scalar(Rational(4)));

  CHECK(Scalar(P({-1, 1}), P({-1, 2})).str() == "(delta-1)/(2*delta-1)");
  CHECK(Scalar(Rational(3, 4)).str() == "3/4");
  CHECK(Scalar::delta().str() == "delta");

  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Scalar s = random_scalar(rng);
    CHECK(parse_scalar(s.str()) == s);
  }
}
