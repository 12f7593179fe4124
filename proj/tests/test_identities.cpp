#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dnov/errors.hpp"
#include "dnov/io.hpp"

using namespace dnov;

namespace {

LoadedAlgebra fx(const std::string& name, const ParamMap& ov = {}) {
  return load_algebra(fixture_path(name, DNOV_TEST_FIXTURES), ov);
}

}  // namespace

TEST_CASE("catalog contents") {
  const IdentityFamily dn = catalog("delta-novikov");
  CHECK(dn.identities.size() == 2);
  CHECK(dn.max_arity() == 3);
  CHECK(dn.delta_parametric());

  CHECK(catalog("jacobi").identities[0].arity == 3);
  CHECK(catalog("anticomm").identities[0].arity == 2);
  CHECK(catalog("metabelian").identities[0].arity == 4);
  CHECK(catalog("strong-right-comm").identities[0].arity == 4);
  // the 5-term Gelfand-Dorfman identity
  CHECK(catalog("delta-gd").identities.back().terms.size() == 5);
  CHECK_THROWS_AS(catalog("no-such-identity"), Error);
  for (const auto& name : catalog_names()) CHECK(!catalog(name).identities.empty());
}

TEST_CASE("evaluate on basis assignments") {
  const Algebra n02 = fx("N02").algebra;
  const auto rc = catalog("right-comm").identities[0];
  Vec v = evaluate_on_basis(rc, ProductBinding::of(n02), {0, 0, 0});
  for (const auto& s : v) CHECK(s.is_zero());

  // Jacobi vanishes on the commutator algebra of N05
  const Algebra br = fx("N05").algebra.commutator_algebra();
  CHECK(check(catalog("jacobi"), br).satisfied());

  // delta-lsym defect on N01 at delta = 2: value (1 - delta) e2 at (e1,e2,e1)
  const Algebra n01 = fx("N01").algebra;
  const auto lsym = catalog("delta-lsym").identities[0];
  Vec d = evaluate_on_basis(lsym, ProductBinding::of(n01), {0, 1, 0}, Rational(2));
  CHECK(d[0].is_zero());
  CHECK(d[1] == Scalar(-1));
}

TEST_CASE("check verdicts and witnesses") {
  const Algebra n08_3 = fx("N08", {{"delta", Rational(3)}}).algebra;
  CHECK(check(catalog("delta-novikov"), n08_3, Rational(3)).satisfied());

  const Algebra n12 = fx("N12").algebra;
  CHECK(check(catalog("delta-novikov"), n12, Rational(-1)).satisfied());

  // N01 at delta=2: violated, lexicographically least witness (1,2,1)
  const Algebra n01 = fx("N01").algebra;
  const CheckReport r = check(catalog("delta-novikov"), n01, Rational(2));
  CHECK(r.verdict == CheckReport::Verdict::Violated);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == std::vector<std::size_t>{1, 2, 1});
  bool defect_nonzero = false;
  for (const auto& s : r.defect)
    if (!s.is_zero()) defect_nonzero = true;
  CHECK(defect_nonzero);

  // metabelian holds for commutator algebras of delta=0 fixtures
  for (const char* name : {"N03", "N05", "N06"})
    CHECK(check(catalog("metabelian"), fx(name).algebra.commutator_algebra())
              .satisfied());

  // MissingProduct for two-product identities on a plain algebra
  CHECK_THROWS_AS(check(catalog("np-compat"), n12, Rational(2)), Error);
}

TEST_CASE("symbolic check produces delta conditions") {
  const Algebra n01 = fx("N01").algebra;
  const CheckReport r = check(catalog("delta-novikov"), n01);
  CHECK(r.verdict == CheckReport::Verdict::Conditional);
  CHECK(!r.delta_conditions.empty());
  // every condition vanishes at delta = 1
  for (const auto& p : r.delta_conditions)
    CHECK(p.evaluate(Rational(1)).is_zero());
}

TEST_CASE("table gamma columns") {
  struct Row {
    const char* name;
    const char* family;
    const char* gamma;  // "all" or a rational
  };
  const Row rows[] = {
      {"N01", "delta-novikov", "1"},   {"N02", "delta-novikov", "all"},
      {"N03", "delta-novikov", "0"},   {"N04", "delta-novikov", "all"},
      {"N05", "delta-novikov", "0"},   {"N06", "delta-novikov", "0"},
      {"N07", "delta-novikov", "all"}, {"N09", "delta-novikov", "all"},
      {"N11", "delta-novikov", "all"}, {"N12", "delta-novikov", "-1"},
      {"P01", "delta-pre-lie", "all"}, {"P03", "delta-pre-lie", "1/2"},
      {"P05", "delta-pre-lie", "1/2"}, {"P06", "delta-pre-lie", "0"},
      {"P07", "delta-pre-lie", "0"},   {"P12", "delta-pre-lie", "all"},
  };
  for (const auto& row : rows) {
    const AdmissibleDeltas adm =
        admissible_deltas(catalog(row.family), fx(row.name).algebra);
    if (std::string(row.gamma) == "all") {
      CHECK_MESSAGE(adm.is_all(), row.name);
    } else {
      CHECK_MESSAGE(adm.equals_single_root(Rational::parse(row.gamma)), row.name);
    }
  }
  // parametrized rows at a few samples
  for (long p : {2, 3, 7}) {
    CHECK(admissible_deltas(catalog("delta-novikov"),
                            fx("N08", {{"delta", Rational(p)}}).algebra)
              .equals_single_root(Rational(p)));
    CHECK(admissible_deltas(catalog("delta-pre-lie"),
                            fx("P13", {{"delta", Rational(p)}}).algebra)
              .equals_single_root(Rational(p)));
  }
  for (long a : {3, 4, 7})
    CHECK(admissible_deltas(catalog("delta-novikov"),
                            fx("N10", {{"alpha", Rational(a)}}).algebra)
              .equals_single_root(Rational(1)));
}

TEST_CASE("counterexample algebras") {
  const BiAlgebra a1 = fx("A1").bialgebra;
  CHECK(check(catalog("transposed-delta-poisson"), a1, Rational(0)).satisfied());
  const CheckReport gd = check(catalog("delta-gd"), a1, Rational(-1));
  CHECK(gd.verdict == CheckReport::Verdict::Violated);
  REQUIRE(gd.witness.has_value());
  // lexicographically least failing triple: (e1, e2, e3), where the only
  // surviving term is -delta {e2,e3} o e1 = e1
  CHECK(*gd.witness == std::vector<std::size_t>{1, 2, 3});
  CHECK(gd.defect[0] == Scalar(1));
  CHECK(gd.identity_name == std::string("delta-gd"));

  const BiAlgebra a2 = fx("A2").bialgebra;
  CHECK(check(catalog("delta-gd"), a2, Rational(1, 2)).satisfied());
  const CheckReport tp = check(catalog("transposed-delta-poisson"), a2, Rational(3, 2));
  CHECK(tp.verdict == CheckReport::Verdict::Violated);
  CHECK(tp.witness.has_value());

  // gamma columns for the bialgebra counterexamples
  CHECK(admissible_deltas(catalog("transposed-delta-poisson"), a1)
            .equals_single_root(Rational(0)));
  CHECK(admissible_deltas(catalog("delta-gd"), a2)
            .equals_single_root(Rational(1, 2)));
}

TEST_CASE("Lie admissibility and metabelian across the Novikov fixtures") {
  const char* names[] = {"N01", "N02", "N03", "N04", "N05", "N06",
                         "N07", "N09", "N10", "N11", "N12", "example_1_5"};
  for (const char* name : names) {
    const Algebra a = fx(name).algebra;
    CHECK_MESSAGE(check(catalog("lie-admissible"), a).satisfied(), name);
    const Algebra br = a.commutator_algebra();
    CHECK_MESSAGE(check(catalog("anticomm"), br).satisfied(), name);
    CHECK_MESSAGE(check(catalog("jacobi"), br).satisfied(), name);
  }
  // identities (5) and (6) hold in every delta-Novikov fixture
  for (const char* name : {"N02", "N04", "N07", "N09", "N11"}) {
    const Algebra a = fx(name).algebra;
    CHECK(check(catalog("identity-5"), a).satisfied());
    CHECK(check(catalog("identity-6"), a).satisfied());
  }
}

TEST_CASE("strong degree-4 identities") {
  const auto strong = catalog("strong-right-comm");
  const auto cpid = catalog("commutator-product-id");
  for (const char* name : {"N02", "N04", "N07", "N09", "N11", "example_1_5"}) {
    const Algebra a = fx(name).algebra;
    CHECK_MESSAGE(check(strong, a).satisfied(), name);
    for (long num : {0, 2, -1, 5})
      CHECK_MESSAGE(check(cpid, a, Rational(num)).satisfied(), name);
  }
  // fixed-gamma fixtures at their own gamma
  CHECK(check(cpid, fx("N12").algebra, Rational(-1)).satisfied());
  CHECK(check(cpid, fx("N03").algebra, Rational(0)).satisfied());
}

TEST_CASE("v0 and the W variety") {
  CHECK(check(catalog("v0"), fx("example_1_5").algebra).satisfied());
  CHECK(check(catalog("w-variety"), fx("example_1_5").algebra).satisfied());
  CHECK(check(catalog("w-variety"), fx("w_3dim").algebra).satisfied());
  CHECK(!check(catalog("w-variety"), fx("N07").algebra).satisfied());
  // W-algebra commutators are metabelian Lie
  const Algebra br = fx("w_3dim").algebra.commutator_algebra();
  CHECK(check(catalog("anticomm"), br).satisfied());
  CHECK(check(catalog("jacobi"), br).satisfied());
  CHECK(check(catalog("metabelian"), br).satisfied());
}

TEST_CASE("gd-tp combinations") {
  const Algebra carrier = fx("tp2var4").algebra;
  const LinearMap f1 = load_linear_map(fixture_path("phi_tp2var4_1", DNOV_TEST_FIXTURES),
                                       {{"delta", Rational(2)}});
  const LinearMap f2 = load_linear_map(fixture_path("phi_tp2var4_2", DNOV_TEST_FIXTURES),
                                       {{"delta", Rational(2)}});
  const BiAlgebra pb = poisson_from_two_derivations(carrier, f1, f2, Rational(2));
  CHECK(gd_tp_combination_check(pb, Rational(2)).satisfied());
  CHECK(gd_tp_combination_check(pb, Rational(5)).satisfied());
  CHECK_THROWS_AS(gd_tp_combination_check(pb, Rational(1, 2)), Error);
  CHECK_THROWS_AS(gd_tp_combination_check(pb, Rational(-1)), Error);

  // nonvacuous instances: A1 and A2 have nonzero TP/GD values, and they
  // satisfy neither compatibility identity at generic delta, so the linear
  // combinations really are consequences of comm/anticomm/Jacobi alone
  const BiAlgebra a1 = fx("A1").bialgebra;
  const BiAlgebra a2 = fx("A2").bialgebra;
  const auto tp_poly = catalog("tp-polynomial").identities[0].at_delta(Rational(2));
  const Vec tp_val = evaluate_on_basis(tp_poly, ProductBinding::of(a1), {0, 1, 2});
  CHECK(tp_val[0] == Scalar(3));  // (delta+1) e1 {e2,e3} = 3 e1
  for (long num : {2, 3, -4}) {
    CHECK(gd_tp_combination_check(a1, Rational(num)).satisfied());
    CHECK(gd_tp_combination_check(a2, Rational(num)).satisfied());
  }
}

TEST_CASE("multilinearity: basis verdict matches random vectors") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (const char* name : {"N04", "N08", "N12", "P03"}) {
    const LoadedAlgebra f = fx(name);
    const Rational d = f.delta ? *f.delta
                               : (f.gamma == "all" ? Rational(2) : Rational::parse(f.gamma));
    const IdentityFamily fam =
        catalog(f.family.empty() ? "delta-novikov" : f.family).at_delta(d);
    const bool basis_ok = check(fam, f.algebra).satisfied();
    bool random_ok = true;
    for (int t = 0; t < 50; ++t)
      for (const auto& id : fam.identities) {
        std::vector<Vec> args(id.arity, Vec(f.dim(), Scalar(0)));
        for (auto& v : args)
          for (auto& s : v) s = Scalar(Rational(coeff(rng)));
        for (const auto& s : evaluate(id, ProductBinding::of(f.algebra), args))
          if (!s.is_zero()) random_ok = false;
      }
    CHECK_MESSAGE(basis_ok == random_ok, name);
  }
}
