#include "dnov/algebra.hpp"

#include <algorithm>

#include "dnov/errors.hpp"

namespace dnov {

Algebra::Algebra(std::size_t dim, std::vector<std::string> labels)
    : dim_(dim), c_(dim * dim, Vec(dim, Scalar(0))), labels_(std::move(labels)) {
  if (labels_.empty()) {
    labels_.reserve(dim);
    for (std::size_t i = 1; i <= dim; ++i) labels_.push_back("e" + std::to_string(i));
  }
}

const Vec& Algebra::basis_product(std::size_t i, std::size_t j) const {
  return c_[i * dim_ + j];
}

void Algebra::set_basis_product(std::size_t i, std::size_t j, Vec v) {
  if (v.size() != dim_) throw dimension_mismatch("structure constant vector length");
  c_[i * dim_ + j] = std::move(v);
}

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw dimension_mismatch("vector length does not match algebra dimension");
  Vec out(dim_, Scalar(0));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const Scalar f = x[i] * y[j];
      const Vec& c = basis_product(i, j);
      for (std::size_t k = 0; k < dim_; ++k)
        if (!c[k].is_zero()) out[k] += f * c[k];
    }
  }
  return out;
}

Algebra Algebra::opposite() const {
  Algebra r(dim_, labels_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      r.set_basis_product(i, j, basis_product(j, i));
  return r;
}

Algebra Algebra::commutator_algebra() const {
  Algebra r(dim_, labels_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      Vec v = basis_product(i, j);
      const Vec& w = basis_product(j, i);
      for (std::size_t k = 0; k < dim_; ++k) v[k] -= w[k];
      r.set_basis_product(i, j, std::move(v));
    }
  return r;
}

bool Algebra::is_zero_product() const {
  for (const auto& v : c_)
    for (const auto& s : v)
      if (!s.is_zero()) return false;
  return true;
}

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (basis_product(i, j) != basis_product(j, i)) return false;
  return true;
}

bool Algebra::is_associative() const {
  auto unit_vec = [&](std::size_t i) {
    Vec v(dim_, Scalar(0));
    v[i] = Scalar(1);
    return v;
  };
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        const Vec lhs = multiply(basis_product(i, j), unit_vec(k));
        const Vec rhs = multiply(unit_vec(i), basis_product(j, k));
        if (lhs != rhs) return false;
      }
  return true;
}

bool Algebra::delta_free() const {
  for (const auto& v : c_)
    for (const auto& s : v)
      if (!s.is_rational()) return false;
  return true;
}

Algebra Algebra::evaluated_at(const Rational& d) const {
  Algebra r(dim_, labels_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      Vec v(dim_, Scalar(0));
      const Vec& c = basis_product(i, j);
      for (std::size_t k = 0; k < dim_; ++k)
        if (!c[k].is_zero()) v[k] = Scalar(c[k].evaluate_at_delta(d));
      r.set_basis_product(i, j, std::move(v));
    }
  return r;
}

std::optional<Vec> Algebra::find_unit() const {
  // u with u e_j = e_j and e_j u = e_j for all j: 2*dim^2 linear conditions
  // on the dim coordinates of u, solved as an inhomogeneous system.
  const std::size_t n = dim_;
  if (n == 0) return std::nullopt;
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Scalar> left(n), right(n);
      for (std::size_t i = 0; i < n; ++i) {
        left[i] = basis_product(i, j)[k];
        right[i] = basis_product(j, i)[k];
      }
      rows.push_back(std::move(left));
      rhs.push_back(Scalar(k == j ? 1 : 0));
      rows.push_back(std::move(right));
      rhs.push_back(Scalar(k == j ? 1 : 0));
    }
  // Solve via RREF of [A | b].
  std::vector<std::vector<Scalar>> aug(rows.size(), std::vector<Scalar>(n + 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = rows[i][j];
    aug[i][n] = rhs[i];
  }
  auto red = rref_rows(std::move(aug));
  Vec u(n, Scalar(0));
  for (const auto& r : red) {
    std::size_t lead = 0;
    while (lead <= n && r[lead].is_zero()) ++lead;
    if (lead == n) return std::nullopt;  // inconsistent: 0 = 1
    if (lead > n) continue;
    u[lead] = r[n];
    for (std::size_t j = lead + 1; j < n; ++j)
      if (!r[j].is_zero()) return std::nullopt;  // underdetermined direction; require exact
  }
  // verify
  auto unit_vec = [&](std::size_t i) {
    Vec v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
  };
  for (std::size_t j = 0; j < n; ++j) {
    if (multiply(u, unit_vec(j)) != unit_vec(j)) return std::nullopt;
    if (multiply(unit_vec(j), u) != unit_vec(j)) return std::nullopt;
  }
  return u;
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.dim_ == b.dim_ && a.c_ == b.c_;
}

std::string role_name(ProductRole r) {
  switch (r) {
    case ProductRole::CommAssoc: return "commassoc";
    case ProductRole::Novikov: return "novikov";
    case ProductRole::Bracket: return "bracket";
  }
  return "?";
}

ProductRole role_from_name(const std::string& s) {
  if (s == "commassoc") return ProductRole::CommAssoc;
  if (s == "novikov") return ProductRole::Novikov;
  if (s == "bracket") return ProductRole::Bracket;
  throw parse_error("unknown product role: '" + s + "'");
}

BiAlgebra BiAlgebra::evaluated_at(const Rational& d) const {
  return BiAlgebra{productA.evaluated_at(d), productB.evaluated_at(d), roleA, roleB};
}

Subspace::Subspace(std::size_t ambient_dim, std::vector<Vec> vectors)
    : ambient_(ambient_dim) {
  for (const auto& v : vectors)
    if (v.size() != ambient_) throw dimension_mismatch("subspace vector length");
  basis_ = rref_rows(std::move(vectors));
}

Subspace Subspace::full(std::size_t n) {
  std::vector<Vec> rows(n, Vec(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = Scalar(1);
  return Subspace(n, std::move(rows));
}

Subspace Subspace::line(std::size_t n, std::size_t basis_index) {
  Vec v(n, Scalar(0));
  v[basis_index] = Scalar(1);
  return Subspace(n, {v});
}

bool Subspace::contains(const Vec& v) const { return in_row_space(basis_, v); }

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.basis_)
    if (!contains(v)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw dimension_mismatch("subspace sum ambient dims");
  std::vector<Vec> rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  return Subspace(ambient_, std::move(rows));
}

Subspace subspace_product(const Algebra& a, const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != a.dim() || v.ambient_dim() != a.dim())
    throw dimension_mismatch("subspace product ambient dims");
  std::vector<Vec> rows;
  for (const auto& x : u.basis())
    for (const auto& y : v.basis()) rows.push_back(a.multiply(x, y));
  return Subspace(a.dim(), std::move(rows));
}

std::string series_kind_name(SeriesKind k) {
  switch (k) {
    case SeriesKind::Derived: return "derived";
    case SeriesKind::RightPower: return "right-power";
    case SeriesKind::LowerCentral: return "lower-central";
  }
  return "?";
}

SeriesKind series_kind_from_name(const std::string& s) {
  if (s == "derived") return SeriesKind::Derived;
  if (s == "right-power") return SeriesKind::RightPower;
  if (s == "lower-central") return SeriesKind::LowerCentral;
  throw parse_error("unknown series kind: '" + s + "'");
}

SeriesReport series_of_subalgebra(const Algebra& a, SeriesKind kind, const Subspace& start) {
  SeriesReport rep;
  rep.kind = kind;
  std::vector<Subspace> terms{start};
  rep.dims.push_back(start.dim());
  const std::size_t cap = a.dim() + 2;
  for (std::size_t step = 0; step < cap; ++step) {
    const Subspace& last = terms.back();
    if (last.dim() == 0) break;
    Subspace next = Subspace::zero(a.dim());
    switch (kind) {
      case SeriesKind::Derived:
        next = subspace_product(a, last, last);
        break;
      case SeriesKind::RightPower:
        next = subspace_product(a, last, start);
        break;
      case SeriesKind::LowerCentral:
        for (std::size_t i = 0; i < terms.size(); ++i) {
          const std::size_t j = terms.size() - 1 - i;
          next = next.sum(subspace_product(a, terms[i], terms[j]));
        }
        break;
    }
    const bool stationary = next.dim() == last.dim();
    terms.push_back(std::move(next));
    rep.dims.push_back(terms.back().dim());
    if (stationary || terms.back().dim() == 0) break;
  }
  rep.terminated = rep.dims.back() == 0;
  if (rep.terminated) {
    const std::size_t t = rep.dims.size() - 1;
    rep.index = (kind == SeriesKind::Derived) ? t : t + 1;
  }
  return rep;
}

SeriesReport series(const Algebra& a, SeriesKind kind) {
  return series_of_subalgebra(a, kind, Subspace::full(a.dim()));
}

Subspace right_power_term(const Algebra& a, const Subspace& s, std::size_t k) {
  Subspace t = s;
  for (std::size_t i = 1; i < k; ++i) t = subspace_product(a, t, s);
  return t;
}

Subspace ideal_closure(const Algebra& a, const Subspace& gens) {
  const Subspace full = Subspace::full(a.dim());
  Subspace s = gens.sum(Subspace::zero(a.dim()));  // re-reduce
  for (;;) {
    Subspace next = s.sum(subspace_product(a, s, full)).sum(subspace_product(a, full, s));
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
}

Dim2IdealReport proper_ideal_exists_dim2(const Algebra& a) {
  if (a.dim() != 2)
    throw Error("UnsupportedDimension", "exact ideal search requires dimension 2");
  if (!a.delta_free())
    throw Error("UnsupportedDimension",
                "exact ideal search requires delta-free structure constants");
  Dim2IdealReport rep;

  // Line span(e2) = (0, 1): closure conditions are rational checks.
  {
    bool ok = true;
    Vec e2{Scalar(0), Scalar(1)};
    Vec b1{Scalar(1), Scalar(0)};
    for (const Vec& w : {b1, e2}) {
      const Vec p1 = a.multiply(e2, w);
      const Vec p2 = a.multiply(w, e2);
      if (!p1[0].is_zero() || !p2[0].is_zero()) ok = false;
    }
    if (ok) {
      rep.exists = true;
      rep.witness = e2;
      return rep;
    }
  }

  // Lines v = (1, t): each closure condition is a polynomial in the slope t
  // (represented on DeltaPoly with delta standing for t). A line exists at a
  // common root, i.e. iff the gcd of the conditions is nonconstant (or all
  // conditions vanish identically).
  auto rat = [&](std::size_t i, std::size_t j, std::size_t k) {
    return a.basis_product(i, j)[k].as_rational();
  };
  const DeltaPoly t = DeltaPoly::delta();
  std::vector<DeltaPoly> conds;
  for (std::size_t j = 0; j < 2; ++j) {
    // v * e_j = c[0][j] + t c[1][j]; cross((p,q),(1,t)) = q - p t
    DeltaPoly p = DeltaPoly(rat(0, j, 0)) + t.scaled(rat(1, j, 0));
    DeltaPoly q = DeltaPoly(rat(0, j, 1)) + t.scaled(rat(1, j, 1));
    conds.push_back(q - p * t);
    // e_j * v = c[j][0] + t c[j][1]
    DeltaPoly p2 = DeltaPoly(rat(j, 0, 0)) + t.scaled(rat(j, 1, 0));
    DeltaPoly q2 = DeltaPoly(rat(j, 0, 1)) + t.scaled(rat(j, 1, 1));
    conds.push_back(q2 - p2 * t);
  }
  DeltaPoly g;
  for (const auto& c : conds) g = poly_gcd(g, c);
  if (g.is_zero()) {
    rep.exists = true;
    rep.witness = Vec{Scalar(1), Scalar(0)};  // every line works
    return rep;
  }
  if (g.degree() < 1) return rep;  // constant gcd: no common slope
  rep.exists = true;
  const auto roots = rational_roots(g);
  if (!roots.empty()) {
    rep.witness = Vec{Scalar(1), Scalar(roots.front())};
  } else {
    rep.slope_factors = report_factors(g);
  }
  return rep;
}

Fingerprint invariant_fingerprint(const Algebra& a) {
  Fingerprint fp;
  const std::size_t n = a.dim();
  fp.dim_square = subspace_product(a, Subspace::full(n), Subspace::full(n)).dim();
  fp.commutative = a.is_commutative();
  fp.associative = a.is_associative();

  // left annihilator {x : x e_j = 0 for all j}
  auto annihilator = [&](bool left) {
    ExactMatrix m(n * n, n);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          const Scalar& c =
              left ? a.basis_product(i, j)[k] : a.basis_product(j, i)[k];
          if (!c.is_zero()) m.set(r, i, c);
        }
        ++r;
      }
    return rank_and_nullspace(m).nullspace.size();
  };
  fp.dim_left_annihilator = annihilator(true);
  fp.dim_right_annihilator = annihilator(false);

  for (std::size_t i = 0; i < n; ++i) {
    Vec unit(n, Scalar(0));
    unit[i] = Scalar(1);
    if (a.basis_product(i, i) != unit) continue;
    Scalar tr(0);
    for (std::size_t j = 0; j < n; ++j) tr += a.basis_product(i, j)[j];
    fp.idempotent_traces.emplace_back(i + 1, tr);
  }
  return fp;
}

}  // namespace dnov
