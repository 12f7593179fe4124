#include "dnov/identities.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dnov/errors.hpp"

namespace dnov {

Term Term::var(int v) {
  auto n = std::make_shared<Node>();
  n->var = v;
  return Term(std::move(n));
}

Term Term::app(int product, const Term& l, const Term& r) {
  auto n = std::make_shared<Node>();
  n->var = -1;
  n->prod = product;
  n->l = l.n_;
  n->r = r.n_;
  return Term(std::move(n));
}

bool Term::uses_product(int p) const {
  if (is_leaf()) return false;
  return product() == p || left().uses_product(p) || right().uses_product(p);
}

std::string Term::str(const std::vector<std::string>& var_names) const {
  if (is_leaf()) return var_names[var_index()];
  const char* op = product() == 0 ? "*" : "o";
  return "(" + left().str(var_names) + op + right().str(var_names) + ")";
}

bool FormalIdentity::delta_parametric() const {
  for (const auto& t : terms)
    if (!t.coeff.is_rational()) return true;
  return false;
}

FormalIdentity FormalIdentity::at_delta(const Rational& d) const {
  FormalIdentity out = *this;
  for (auto& t : out.terms) t.coeff = Scalar(t.coeff.evaluate_at_delta(d));
  return out;
}

std::string FormalIdentity::str() const {
  static const std::vector<std::string> names{"x", "y", "z", "t", "u"};
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    const std::string c = t.coeff.str();
    if (!first) os << " + ";
    first = false;
    os << c << "·" << t.tree.str(names);
  }
  return os.str();
}

std::size_t IdentityFamily::max_arity() const {
  std::size_t a = 0;
  for (const auto& id : identities) a = std::max(a, id.arity);
  return a;
}

bool IdentityFamily::uses_p2() const {
  for (const auto& id : identities)
    if (id.uses_p2) return true;
  return false;
}

bool IdentityFamily::delta_parametric() const {
  for (const auto& id : identities)
    if (id.delta_parametric()) return true;
  return false;
}

IdentityFamily IdentityFamily::at_delta(const Rational& d) const {
  IdentityFamily out;
  out.name = name;
  for (const auto& id : identities) out.identities.push_back(id.at_delta(d));
  return out;
}

namespace {

Term V(int i) { return Term::var(i); }

FormalIdentity make_identity(std::string name, std::size_t arity,
                             std::vector<FormalTerm> terms) {
  FormalIdentity id;
  id.name = std::move(name);
  id.arity = arity;
  id.terms = std::move(terms);
  for (const auto& t : id.terms) {
    if (t.tree.uses_product(0)) id.uses_p1 = true;
    if (t.tree.uses_product(1)) id.uses_p2 = true;
  }
  return id;
}

const Scalar kOne(1);
const Scalar kMinusOne(-1);

// prod = 0 or 1: which product symbol a single-product identity is built on.
FormalIdentity lsym_delta(int prod) {
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  const Scalar d = Scalar::delta();
  Term x = V(0), y = V(1), z = V(2);
  return make_identity("delta-lsym", 3,
                       {{d, M(M(x, y), z)},
                        {kMinusOne, M(x, M(y, z))},
                        {-d, M(M(y, x), z)},
                        {kOne, M(y, M(x, z))}});
}

FormalIdentity right_comm(int prod) {
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1), z = V(2);
  return make_identity("right-comm", 3,
                       {{kOne, M(M(x, y), z)}, {kMinusOne, M(M(x, z), y)}});
}

FormalIdentity left_comm(int prod) {
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1), z = V(2);
  return make_identity("left-comm", 3,
                       {{kOne, M(x, M(y, z))}, {kMinusOne, M(y, M(x, z))}});
}

FormalIdentity comm(int prod) {
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1);
  return make_identity("comm", 2, {{kOne, M(x, y)}, {kMinusOne, M(y, x)}});
}

FormalIdentity anticomm(int prod) {
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1);
  return make_identity("anticomm", 2, {{kOne, M(x, y)}, {kOne, M(y, x)}});
}

FormalIdentity assoc(int prod) {
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1), z = V(2);
  return make_identity("assoc", 3,
                       {{kOne, M(M(x, y), z)}, {kMinusOne, M(x, M(y, z))}});
}

// (xy)z + (yz)x + (zx)y; Jacobi for an (anti)commutative bracket.
FormalIdentity jacobi(int prod) {
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1), z = V(2);
  return make_identity("jacobi", 3,
                       {{kOne, M(M(x, y), z)},
                        {kOne, M(M(y, z), x)},
                        {kOne, M(M(z, x), y)}});
}

FormalIdentity identity_5(int prod) {
  // [x,y]z + [y,z]x + [z,x]y = 0, expanded
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1), z = V(2);
  return make_identity("cyclic-left-commutators", 3,
                       {{kOne, M(M(x, y), z)},
                        {kMinusOne, M(M(y, x), z)},
                        {kOne, M(M(y, z), x)},
                        {kMinusOne, M(M(z, y), x)},
                        {kOne, M(M(z, x), y)},
                        {kMinusOne, M(M(x, z), y)}});
}

FormalIdentity identity_6(int prod) {
  // x[y,z] + y[z,x] + z[x,y] = 0, expanded
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1), z = V(2);
  return make_identity("cyclic-right-commutators", 3,
                       {{kOne, M(x, M(y, z))},
                        {kMinusOne, M(x, M(z, y))},
                        {kOne, M(y, M(z, x))},
                        {kMinusOne, M(y, M(x, z))},
                        {kOne, M(z, M(x, y))},
                        {kMinusOne, M(z, M(y, x))}});
}

// Jacobi of the commutator product, fully expanded in the original product.
FormalIdentity lie_admissible(int prod) {
  auto M = [prod](const Term& a, const Term& b) { return Term::app(prod, a, b); };
  Term x = V(0), y = V(1), z = V(2);
  std::vector<FormalTerm> terms;
  auto add_cyclic = [&](const Term& a, const Term& b, const Term& c) {
    // [[a,b],c] = (ab)c - (ba)c - c(ab) + c(ba)
    terms.push_back({kOne, M(M(a, b), c)});
    terms.push_back({kMinusOne, M(M(b, a), c)});
    terms.push_back({kMinusOne, M(c, M(a, b))});
    terms.push_back({kOne, M(c, M(b, a))});
  };
  add_cyclic(x, y, z);
  add_cyclic(y, z, x);
  add_cyclic(z, x, y);
  return make_identity("lie-admissible", 3, std::move(terms));
}

IdentityFamily family(std::string name, std::vector<FormalIdentity> ids) {
  IdentityFamily f;
  f.name = std::move(name);
  f.identities = std::move(ids);
  return f;
}

IdentityFamily build_catalog_entry(const std::string& name) {
  const Scalar d = Scalar::delta();
  Term x = V(0), y = V(1), z = V(2), t = V(3);

  if (name == "delta-lsym") return family(name, {lsym_delta(0)});
  if (name == "right-comm") return family(name, {right_comm(0)});
  if (name == "left-comm") return family(name, {left_comm(0)});
  if (name == "delta-novikov") return family(name, {lsym_delta(0), right_comm(0)});
  if (name == "right-delta-novikov") {
    FormalIdentity rsym = make_identity(
        "delta-rsym", 3,
        {{kOne, P1(P1(x, y), z)},
         {-d, P1(x, P1(y, z))},
         {kMinusOne, P1(P1(x, z), y)},
         {d, P1(x, P1(z, y))}});
    return family(name, {rsym, left_comm(0)});
  }
  if (name == "delta-assoc") {
    return family(name, {make_identity("delta-assoc", 3,
                                       {{d, P1(P1(x, y), z)},
                                        {kMinusOne, P1(x, P1(y, z))}})});
  }
  if (name == "delta-pre-lie") return family(name, {lsym_delta(0), identity_5(0)});
  if (name == "lie-admissible") return family(name, {lie_admissible(0)});
  if (name == "identity-5") return family(name, {identity_5(0)});
  if (name == "identity-6") return family(name, {identity_6(0)});
  if (name == "v0") {
    FormalIdentity extra = make_identity(
        "left-arg-sym", 3, {{kOne, P1(P1(x, y), z)}, {kMinusOne, P1(P1(y, x), z)}});
    return family(name, {right_comm(0), left_comm(0), extra});
  }
  if (name == "w-variety") {
    FormalIdentity left_products_vanish =
        make_identity("left-products-vanish", 3, {{kOne, P1(P1(x, y), z)}});
    return family(name, {left_comm(0), left_products_vanish});
  }
  if (name == "np-compat") {
    FormalIdentity compat_assoc = make_identity(
        "np-compat-assoc", 3,
        {{kOne, P2(P1(x, y), z)}, {kMinusOne, P1(x, P2(y, z))}});
    FormalIdentity compat_lsym = make_identity(
        "np-compat-lsym", 3,
        {{d, P1(P2(x, y), z)},
         {kMinusOne, P2(x, P1(y, z))},
         {-d, P1(P2(y, x), z)},
         {kOne, P2(y, P1(x, z))}});
    return family(name, {compat_assoc, compat_lsym});
  }
  if (name == "delta-novikov-poisson") {
    auto np = build_catalog_entry("np-compat");
    return family(name, {comm(0), assoc(0), lsym_delta(1), right_comm(1),
                         np.identities[0], np.identities[1]});
  }
  if (name == "strong-right-comm") {
    return family(name, {make_identity(
                            "strong-right-comm", 4,
                            {{kOne, P1(P1(z, P1(x, y)), t)},
                             {kMinusOne, P1(P1(z, P1(x, t)), y)}})});
  }
  if (name == "commutator-product-id") {
    // [xy, zt] = delta(((xy)z)t - ((zx)y)t)
    return family(name, {make_identity(
                            "commutator-product-id", 4,
                            {{kOne, P1(P1(x, y), P1(z, t))},
                             {kMinusOne, P1(P1(z, t), P1(x, y))},
                             {-d, P1(P1(P1(x, y), z), t)},
                             {d, P1(P1(P1(z, x), y), t)}})});
  }
  if (name == "jacobi") return family(name, {jacobi(0)});
  if (name == "anticomm") return family(name, {anticomm(0)});
  if (name == "metabelian") {
    return family(name, {make_identity("metabelian", 4,
                                       {{kOne, P1(P1(x, y), P1(z, t))}})});
  }
  if (name == "delta-poisson") {
    FormalIdentity leibniz = make_identity(
        "delta-leibniz", 3,
        {{kOne, P2(P1(x, y), z)},
         {-d, P1(x, P2(y, z))},
         {-d, P1(P2(x, z), y)}});
    return family(name, {comm(0), assoc(0), anticomm(1), jacobi(1), leibniz});
  }
  if (name == "transposed-delta-poisson") {
    FormalIdentity transposed = make_identity(
        "transposed-delta-leibniz", 3,
        {{d, P1(x, P2(y, z))},
         {kMinusOne, P2(P1(x, y), z)},
         {kMinusOne, P2(y, P1(x, z))}});
    return family(name, {comm(0), assoc(0), anticomm(1), jacobi(1), transposed});
  }
  if (name == "delta-gd") {
    FormalIdentity gd = make_identity(
        "delta-gd", 3,
        {{kOne, P2(x, P1(y, z))},
         {kMinusOne, P2(z, P1(y, x))},
         {d, P1(P2(y, x), z)},
         {-d, P1(P2(y, z), x)},
         {kMinusOne, P1(y, P2(x, z))}});
    return family(name, {lsym_delta(0), right_comm(0), anticomm(1), jacobi(1), gd});
  }
  if (name == "gd-polynomial") {
    return family(name, {make_identity(
                            "gd-polynomial", 3,
                            {{kOne, P2(x, P1(y, z))},
                             {kMinusOne, P2(z, P1(y, x))},
                             {d, P1(P2(y, x), z)},
                             {-d, P1(P2(y, z), x)},
                             {kMinusOne, P1(y, P2(x, z))}})});
  }
  if (name == "tp-polynomial") {
    return family(name, {make_identity(
                            "tp-polynomial", 3,
                            {{d + kOne, P1(x, P2(y, z))},
                             {kOne, P2(z, P1(x, y))},
                             {kMinusOne, P2(y, P1(x, z))}})});
  }
  throw Error("UnknownIdentity", "no identity named '" + name + "' in the catalog");
}

}  // namespace

IdentityFamily catalog(const std::string& name) { return build_catalog_entry(name); }

std::vector<std::string> catalog_names() {
  return {"delta-lsym",       "right-comm",
          "left-comm",        "delta-novikov",
          "right-delta-novikov", "delta-assoc",
          "delta-pre-lie",    "lie-admissible",
          "identity-5",       "identity-6",
          "v0",               "w-variety",
          "np-compat",        "delta-novikov-poisson",
          "strong-right-comm", "commutator-product-id",
          "jacobi",           "anticomm",
          "metabelian",       "delta-poisson",
          "transposed-delta-poisson", "delta-gd",
          "gd-polynomial",    "tp-polynomial"};
}

Vec evaluate_term(const Term& t, const ProductBinding& bind, const std::vector<Vec>& args) {
  if (t.is_leaf()) return args[t.var_index()];
  const Vec l = evaluate_term(t.left(), bind, args);
  const Vec r = evaluate_term(t.right(), bind, args);
  const Algebra* alg = t.product() == 0 ? bind.p1 : bind.p2;
  if (alg == nullptr)
    throw Error("MissingProduct",
                "identity uses the second product but the algebra has only one");
  return alg->multiply(l, r);
}

Vec evaluate(const FormalIdentity& id, const ProductBinding& bind,
             const std::vector<Vec>& args, const std::optional<Rational>& delta) {
  if (args.size() != id.arity)
    throw dimension_mismatch("argument count does not match identity arity");
  const std::size_t n = args.empty() ? 0 : args[0].size();
  Vec out(n, Scalar(0));
  for (const auto& term : id.terms) {
    Scalar c = term.coeff;
    if (delta && !c.is_rational()) c = Scalar(c.evaluate_at_delta(*delta));
    if (c.is_zero()) continue;
    const Vec v = evaluate_term(term.tree, bind, args);
    for (std::size_t k = 0; k < n; ++k)
      if (!v[k].is_zero()) out[k] += c * v[k];
  }
  return out;
}

Vec evaluate_on_basis(const FormalIdentity& id, const ProductBinding& bind,
                      const std::vector<std::size_t>& assignment,
                      const std::optional<Rational>& delta) {
  const std::size_t dim = bind.p1 ? bind.p1->dim() : 0;
  std::vector<Vec> args;
  for (std::size_t idx : assignment) {
    Vec v(dim, Scalar(0));
    v.at(idx) = Scalar(1);
    args.push_back(std::move(v));
  }
  return evaluate(id, bind, args, delta);
}

namespace {

bool binding_delta_free(const ProductBinding& bind) {
  if (bind.p1 && !bind.p1->delta_free()) return false;
  if (bind.p2 && !bind.p2->delta_free()) return false;
  return true;
}

void record_condition(std::vector<DeltaPoly>& sink, const Scalar& s) {
  if (s.is_zero()) return;
  DeltaPoly m = s.num().monic();
  if (std::find(sink.begin(), sink.end(), m) == sink.end()) sink.push_back(m);
}

}  // namespace

CheckReport check(const FormalIdentity& id, const ProductBinding& bind,
                  std::size_t dim, const std::optional<Rational>& delta) {
  CheckReport rep;
  rep.identity_name = id.name;
  const bool symbolic =
      !delta && (id.delta_parametric() || !binding_delta_free(bind));

  std::vector<std::size_t> tuple(id.arity, 0);
  for (;;) {
    const Vec v = evaluate_on_basis(id, bind, tuple, delta);
    bool nonzero = false;
    for (const auto& s : v)
      if (!s.is_zero()) nonzero = true;
    if (nonzero) {
      if (symbolic) {
        for (const auto& s : v) record_condition(rep.delta_conditions, s);
      } else {
        rep.verdict = CheckReport::Verdict::Violated;
        std::vector<std::size_t> witness(tuple);
        for (auto& w : witness) ++w;
        rep.witness = std::move(witness);
        rep.defect = v;
        return rep;
      }
    }
    // next lexicographic tuple
    std::size_t k = id.arity;
    while (k > 0) {
      if (++tuple[k - 1] < dim) break;
      tuple[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  rep.verdict = rep.delta_conditions.empty() ? CheckReport::Verdict::Satisfied
                                             : CheckReport::Verdict::Conditional;
  return rep;
}

CheckReport check(const IdentityFamily& fam, const ProductBinding& bind,
                  std::size_t dim, const std::optional<Rational>& delta) {
  CheckReport agg;
  agg.identity_name = fam.name;
  for (const auto& id : fam.identities) {
    CheckReport r = check(id, bind, dim, delta);
    if (r.verdict == CheckReport::Verdict::Violated) return r;
    if (r.verdict == CheckReport::Verdict::Conditional) {
      agg.verdict = CheckReport::Verdict::Conditional;
      for (const auto& c : r.delta_conditions)
        if (std::find(agg.delta_conditions.begin(), agg.delta_conditions.end(), c) ==
            agg.delta_conditions.end())
          agg.delta_conditions.push_back(c);
    }
  }
  return agg;
}

CheckReport check(const IdentityFamily& fam, const Algebra& a,
                  const std::optional<Rational>& delta) {
  return check(fam, ProductBinding::of(a), a.dim(), delta);
}

CheckReport check(const IdentityFamily& fam, const BiAlgebra& b,
                  const std::optional<Rational>& delta) {
  return check(fam, ProductBinding::of(b), b.dim(), delta);
}

AdmissibleDeltas admissible_deltas(const IdentityFamily& fam, const ProductBinding& bind,
                                   std::size_t dim) {
  if (!binding_delta_free(bind))
    throw Error("SymbolicConstants",
                "admissible-delta analysis requires delta-free structure constants");
  AdmissibleDeltas out;
  CheckReport rep = check(fam, bind, dim, std::nullopt);
  if (rep.verdict == CheckReport::Verdict::Satisfied) {
    out.kind = AdmissibleDeltas::Kind::All;
    return out;
  }
  DeltaPoly g;
  for (const auto& c : rep.delta_conditions) g = poly_gcd(g, c);
  out.condition_gcd = g;
  if (g.degree() < 1) {
    out.kind = AdmissibleDeltas::Kind::Empty;
    return out;
  }
  out.kind = AdmissibleDeltas::Kind::Roots;
  out.roots = rational_roots(g);
  out.factors = report_factors(g);
  return out;
}

AdmissibleDeltas admissible_deltas(const IdentityFamily& fam, const Algebra& a) {
  return admissible_deltas(fam, ProductBinding::of(a), a.dim());
}

AdmissibleDeltas admissible_deltas(const IdentityFamily& fam, const BiAlgebra& b) {
  return admissible_deltas(fam, ProductBinding::of(b), b.dim());
}

CheckReport gd_tp_combination_check(const BiAlgebra& b, const Rational& d) {
  if (d == Rational(1, 2))
    throw Error("ExcludedDelta",
                "the TP-through-GD combination is undefined at delta = 1/2");
  if (d == Rational(-1))
    throw Error("ExcludedDelta",
                "the GD-through-TP combination is undefined at delta = -1");

  const FormalIdentity tp = catalog("tp-polynomial").identities[0].at_delta(d);
  const FormalIdentity gd = catalog("gd-polynomial").identities[0].at_delta(d);
  const ProductBinding bind = ProductBinding::of(b);
  const std::size_t n = b.dim();

  auto basis_vec = [&](std::size_t i) {
    Vec v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
  };
  const Scalar c1 = Scalar(Rational(1)) / Scalar(Rational(2) * d - Rational(1));
  const Scalar c2 = Scalar(Rational(1)) / Scalar(d + Rational(1));
  const Scalar sd(d);

  CheckReport rep;
  rep.identity_name = "gd-tp-combinations";
  for (std::size_t ai = 0; ai < n; ++ai)
    for (std::size_t bi = 0; bi < n; ++bi)
      for (std::size_t ci = 0; ci < n; ++ci) {
        const Vec va = basis_vec(ai), vb = basis_vec(bi), vc = basis_vec(ci);
        auto TP = [&](const Vec& p, const Vec& q, const Vec& r) {
          return evaluate(tp, bind, {p, q, r});
        };
        auto GD = [&](const Vec& p, const Vec& q, const Vec& r) {
          return evaluate(gd, bind, {p, q, r});
        };
        // TP(a,b,c) = 1/(2d-1) (d GD(c,b,a) - d GD(b,c,a) - (1-d) GD(c,a,b))
        Vec lhs = TP(va, vb, vc);
        Vec g1 = GD(vc, vb, va), g2 = GD(vb, vc, va), g3 = GD(vc, va, vb);
        bool bad = false;
        for (std::size_t k = 0; k < n; ++k) {
          Scalar rhs = c1 * (sd * g1[k] - sd * g2[k] -
                             (Scalar(Rational(1)) - sd) * g3[k]);
          if (lhs[k] != rhs) bad = true;
        }
        // GD(a,b,c) = 1/(d+1) (d TP(a,c,b) + d TP(c,b,a) + TP(b,c,a))
        Vec lhs2 = GD(va, vb, vc);
        Vec t1 = TP(va, vc, vb), t2 = TP(vc, vb, va), t3 = TP(vb, vc, va);
        for (std::size_t k = 0; k < n; ++k) {
          Scalar rhs = c2 * (sd * t1[k] + sd * t2[k] + t3[k]);
          if (lhs2[k] != rhs) bad = true;
        }
        if (bad) {
          rep.verdict = CheckReport::Verdict::Violated;
          rep.witness = std::vector<std::size_t>{ai + 1, bi + 1, ci + 1};
          rep.defect = lhs;
          return rep;
        }
      }
  rep.verdict = CheckReport::Verdict::Satisfied;
  return rep;
}

}  // namespace dnov
