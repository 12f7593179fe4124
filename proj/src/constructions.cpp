#include "dnov/constructions.hpp"

#include "dnov/errors.hpp"

namespace dnov {

LinearMap::LinearMap(std::size_t dim) : dim_(dim), m_(dim * dim, Scalar(0)) {}

LinearMap LinearMap::identity(std::size_t dim) {
  LinearMap r(dim);
  for (std::size_t i = 0; i < dim; ++i) r.set_entry(i, i, Scalar(1));
  return r;
}

Vec LinearMap::apply(const Vec& x) const {
  if (x.size() != dim_) throw dimension_mismatch("linear map applied to wrong length");
  Vec out(dim_, Scalar(0));
  for (std::size_t j = 0; j < dim_; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t i = 0; i < dim_; ++i) {
      const Scalar& e = entry(i, j);
      if (!e.is_zero()) out[i] += e * x[j];
    }
  }
  return out;
}

LinearMap LinearMap::compose(const LinearMap& other) const {
  if (dim_ != other.dim_) throw dimension_mismatch("composing maps of different dims");
  LinearMap r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      Scalar s(0);
      for (std::size_t k = 0; k < dim_; ++k) s += entry(i, k) * other.entry(k, j);
      r.set_entry(i, j, s);
    }
  return r;
}

bool LinearMap::is_zero() const {
  for (const auto& s : m_)
    if (!s.is_zero()) return false;
  return true;
}

bool LinearMap::delta_free() const {
  for (const auto& s : m_)
    if (!s.is_rational()) return false;
  return true;
}

LinearMap LinearMap::evaluated_at(const Rational& d) const {
  LinearMap r(dim_);
  for (std::size_t i = 0; i < m_.size(); ++i)
    r.m_[i] = Scalar(m_[i].evaluate_at_delta(d));
  return r;
}

LinearMap LinearMap::from_flat(std::size_t dim, const std::vector<Scalar>& flat) {
  if (flat.size() != dim * dim) throw dimension_mismatch("flattened map length");
  LinearMap r(dim);
  r.m_ = flat;
  return r;
}

bool is_delta_derivation(const Algebra& a, const LinearMap& phi, const Rational& d) {
  const std::size_t n = a.dim();
  const Scalar sd{d};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei(n, Scalar(0)), ej(n, Scalar(0));
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      const Vec lhs = phi.apply(a.basis_product(i, j));
      Vec rhs = a.multiply(phi.apply(ei), ej);
      const Vec r2 = a.multiply(ei, phi.apply(ej));
      for (std::size_t k = 0; k < n; ++k) rhs[k] = sd * (rhs[k] + r2[k]);
      if (lhs != rhs) return false;
    }
  return true;
}

namespace {

// Rows of the delta-derivation system in the n^2 unknowns m[r][c] (flattened
// index r*n + c), one row per (i, j, k). The parameter enters linearly.
ExactMatrix derivation_system(const Algebra& a, const Scalar& d) {
  const std::size_t n = a.dim();
  ExactMatrix m(n * n * n, n * n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& cij = a.basis_product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        // phi(e_i e_j)_k: sum_c cij[c] m[k][c]
        for (std::size_t c = 0; c < n; ++c)
          if (!cij[c].is_zero())
            m.set(row, k * n + c, m.at(row, k * n + c) + cij[c]);
        // -d (phi(e_i) e_j)_k: sum_r m[r][i] c[r][j][k]
        for (std::size_t r = 0; r < n; ++r) {
          const Scalar& s = a.basis_product(r, j)[k];
          if (!s.is_zero()) m.set(row, r * n + i, m.at(row, r * n + i) - d * s);
        }
        // -d (e_i phi(e_j))_k: sum_r m[r][j] c[i][r][k]
        for (std::size_t r = 0; r < n; ++r) {
          const Scalar& s = a.basis_product(i, r)[k];
          if (!s.is_zero()) m.set(row, r * n + j, m.at(row, r * n + j) - d * s);
        }
        ++row;
      }
    }
  return m;
}

LinearMap map_from_nullvector(std::size_t n, const std::vector<Scalar>& v) {
  LinearMap phi(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) phi.set_entry(r, c, v[r * n + c]);
  return phi;
}

}  // namespace

DerivationSpace solve_delta_derivations(const Algebra& a, const Rational& d) {
  if (!a.delta_free())
    throw Error("SymbolicConstants", "derivation solver needs delta-free constants");
  const std::size_t n = a.dim();
  const ExactMatrix sys = derivation_system(a, Scalar(d));
  auto rn = rank_and_nullspace(sys);
  DerivationSpace out;
  out.delta = d;
  for (const auto& v : rn.nullspace) out.basis.push_back(map_from_nullvector(n, v));
  return out;
}

bool DerivationSpace::contains(const LinearMap& phi) const {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& b : basis) rows.push_back(b.flattened());
  return in_row_space(rows, phi.flattened());
}

DerivationSpectrum derivation_delta_spectrum(const Algebra& a) {
  if (!a.delta_free())
    throw Error("SymbolicConstants", "spectrum needs delta-free constants");
  const ExactMatrix sys = derivation_system(a, Scalar::delta());
  auto rn = rank_and_nullspace(sys);
  DerivationSpectrum out;
  out.generic_nullity = rn.nullspace.size();
  for (const auto& p : rn.pivot_denominators) {
    for (const auto& f : report_factors(p)) {
      bool seen = false;
      for (const auto& e : out.entries)
        if (e.factor == f) seen = true;
      if (seen) continue;
      SpectrumEntry entry;
      entry.factor = f;
      if (f.degree() == 1) {
        const Rational root = -(f.coefficient(0) / f.coefficient(1));
        entry.root = root;
        const auto space = solve_delta_derivations(a, root);
        entry.jump = static_cast<long>(space.dimension()) -
                     static_cast<long>(out.generic_nullity);
      }
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

Algebra build_a_phi(const Algebra& a, const LinearMap& phi, const Rational& d,
                    APhiSide side, bool validate) {
  if (phi.dim() != a.dim()) throw dimension_mismatch("map vs algebra dimension");
  if (validate) {
    if (!a.is_commutative() || !a.is_associative())
      throw Error("NotCommutativeAssociative",
                  "the carrier must be commutative and associative");
    if (!is_delta_derivation(a, phi, d))
      throw Error("NotADerivation",
                  "the map is not a " + d.str() + "-derivation of the carrier");
  }
  const std::size_t n = a.dim();
  Algebra out(n, a.labels());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei(n, Scalar(0)), ej(n, Scalar(0));
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      Vec v = side == APhiSide::Left ? a.multiply(ei, phi.apply(ej))
                                     : a.multiply(phi.apply(ei), ej);
      out.set_basis_product(i, j, std::move(v));
    }
  return out;
}

bool passes_np(const BiAlgebra& b, const Rational& d) {
  return check(catalog("delta-novikov-poisson"), b, d).satisfied();
}

namespace {
void require_np(const BiAlgebra& b, const Rational& d) {
  if (!passes_np(b, d))
    throw Error("NotNovikovPoisson",
                "input does not satisfy the " + d.str() +
                    "-Novikov-Poisson identities");
}
}  // namespace

BiAlgebra np_deform_h(const BiAlgebra& b, const Vec& h, const Rational& d,
                      bool validate) {
  if (h.size() != b.dim()) throw dimension_mismatch("deformation vector length");
  if (validate) require_np(b, d);
  const std::size_t n = b.dim();
  BiAlgebra out = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei(n, Scalar(0)), ej(n, Scalar(0));
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      Vec v = b.productB.basis_product(i, j);
      const Vec extra = b.productA.multiply(b.productA.multiply(h, ei), ej);
      for (std::size_t k = 0; k < n; ++k) v[k] += extra[k];
      out.productB.set_basis_product(i, j, std::move(v));
    }
  return out;
}

BiAlgebra np_scale_q(const BiAlgebra& b, const Vec& q, const Rational& d,
                     bool validate) {
  if (q.size() != b.dim()) throw dimension_mismatch("scaling vector length");
  if (validate) require_np(b, d);
  const std::size_t n = b.dim();
  BiAlgebra out = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.productA.set_basis_product(
          i, j, b.productA.multiply(q, b.productA.basis_product(i, j)));
  return out;
}

Algebra kantor_product(const BiAlgebra& b, const Vec& u, const Rational& d,
                       bool validate) {
  if (u.size() != b.dim()) throw dimension_mismatch("Kantor vector length");
  if (validate) require_np(b, d);
  const std::size_t n = b.dim();
  Algebra out(n, b.productA.labels());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei(n, Scalar(0)), ej(n, Scalar(0));
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      const Vec t1 = b.productA.multiply(u, b.productB.basis_product(i, j));
      const Vec t2 = b.productB.multiply(b.productA.multiply(u, ei), ej);
      const Vec t3 = b.productB.multiply(ei, b.productA.multiply(u, ej));
      Vec v(n, Scalar(0));
      for (std::size_t k = 0; k < n; ++k) v[k] = t1[k] - t2[k] - t3[k];
      out.set_basis_product(i, j, std::move(v));
    }
  return out;
}

BiAlgebra tensor_np(const BiAlgebra& b1, const Rational& d1, const BiAlgebra& b2,
                    const Rational& d2, bool validate) {
  if (d1 != d2)
    throw Error("DeltaMismatch", "tensor factors live at different delta values");
  if (validate) {
    require_np(b1, d1);
    require_np(b2, d2);
  }
  const std::size_t n1 = b1.dim(), n2 = b2.dim(), n = n1 * n2;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      labels.push_back(b1.productA.labels()[i] + "." + b2.productA.labels()[j]);
  BiAlgebra out;
  out.productA = Algebra(n, labels);
  out.productB = Algebra(n, labels);
  out.roleA = ProductRole::CommAssoc;
  out.roleB = ProductRole::Novikov;
  auto tensor_vec = [&](const Vec& v1, const Vec& v2) {
    Vec v(n, Scalar(0));
    for (std::size_t i = 0; i < n1; ++i) {
      if (v1[i].is_zero()) continue;
      for (std::size_t j = 0; j < n2; ++j)
        if (!v2[j].is_zero()) v[i * n2 + j] = v1[i] * v2[j];
    }
    return v;
  };
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2)
      for (std::size_t j1 = 0; j1 < n1; ++j1)
        for (std::size_t j2 = 0; j2 < n2; ++j2) {
          const std::size_t i = i1 * n2 + i2, j = j1 * n2 + j2;
          const Vec& dot1 = b1.productA.basis_product(i1, j1);
          const Vec& dot2 = b2.productA.basis_product(i2, j2);
          const Vec& circ1 = b1.productB.basis_product(i1, j1);
          const Vec& circ2 = b2.productB.basis_product(i2, j2);
          out.productA.set_basis_product(i, j, tensor_vec(dot1, dot2));
          Vec v = tensor_vec(circ1, dot2);
          const Vec w = tensor_vec(dot1, circ2);
          for (std::size_t k = 0; k < n; ++k) v[k] += w[k];
          out.productB.set_basis_product(i, j, std::move(v));
        }
  return out;
}

BiAlgebra poisson_from_two_derivations(const Algebra& a, const LinearMap& phi1,
                                       const LinearMap& phi2, const Rational& d,
                                       bool validate) {
  if (validate) {
    if (!a.is_commutative() || !a.is_associative())
      throw Error("NotCommutativeAssociative",
                  "the carrier must be commutative and associative");
    if (!is_delta_derivation(a, phi1, d) || !is_delta_derivation(a, phi2, d))
      throw Error("NotADerivation",
                  "both maps must be " + d.str() + "-derivations of the carrier");
    if (phi1.compose(phi2) != phi2.compose(phi1))
      throw Error("DerivationsDoNotCommute", "the two derivations do not commute");
  }
  const std::size_t n = a.dim();
  BiAlgebra out;
  out.productA = a;
  out.productB = Algebra(n, a.labels());
  out.roleA = ProductRole::CommAssoc;
  out.roleB = ProductRole::Bracket;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei(n, Scalar(0)), ej(n, Scalar(0));
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      Vec v = a.multiply(phi1.apply(ei), phi2.apply(ej));
      const Vec w = a.multiply(phi2.apply(ei), phi1.apply(ej));
      for (std::size_t k = 0; k < n; ++k) v[k] -= w[k];
      out.productB.set_basis_product(i, j, std::move(v));
    }
  return out;
}

BiAlgebra np_commutator_bracket(const BiAlgebra& b, const Rational& d, bool validate) {
  if (validate) require_np(b, d);
  BiAlgebra out = b;
  out.productB = b.productB.commutator_algebra();
  out.roleB = ProductRole::Bracket;
  return out;
}

CheckReport check_rota_baxter(const Algebra& a, const LinearMap& r, const Rational& d,
                              int lambda) {
  if (lambda != 0 && lambda != 1)
    throw Error("InvalidWeight", "Rota-Baxter weight must be 0 or 1");
  const std::size_t n = a.dim();
  const Scalar sd{d}, sl{Rational(lambda)};
  CheckReport rep;
  rep.identity_name = "delta-rota-baxter";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei(n, Scalar(0)), ej(n, Scalar(0));
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      const Vec lhs = a.multiply(r.apply(ei), r.apply(ej));
      Vec inner = a.multiply(r.apply(ei), ej);
      const Vec inner2 = a.multiply(ei, r.apply(ej));
      const Vec prod = a.basis_product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        inner[k] = inner[k] + inner2[k] - sl * prod[k];
      Vec rhs = r.apply(inner);
      for (std::size_t k = 0; k < n; ++k) rhs[k] = sd * rhs[k];
      bool bad = false;
      Vec defect(n, Scalar(0));
      for (std::size_t k = 0; k < n; ++k) {
        defect[k] = lhs[k] - rhs[k];
        if (!defect[k].is_zero()) bad = true;
      }
      if (bad) {
        rep.verdict = CheckReport::Verdict::Violated;
        rep.witness = std::vector<std::size_t>{i + 1, j + 1};
        rep.defect = std::move(defect);
        return rep;
      }
    }
  rep.verdict = CheckReport::Verdict::Satisfied;
  return rep;
}

RBInducedResult rb_induced_products(const Algebra& carrier, const LinearMap& r,
                                    const Rational& d, RBVariant variant,
                                    bool validate) {
  const std::size_t n = carrier.dim();
  if (r.dim() != n) throw dimension_mismatch("map vs algebra dimension");
  if (validate) {
    switch (variant) {
      case RBVariant::Lie: {
        if (!check(catalog("anticomm"), carrier).satisfied() ||
            !check(catalog("jacobi"), carrier).satisfied())
          throw Error("HypothesisFailed", "carrier is not a Lie algebra");
        if (!check_rota_baxter(carrier, r, d, 0).satisfied())
          throw Error("HypothesisFailed",
                      "map fails the weight-0 " + d.str() + "-Rota-Baxter equation");
        break;
      }
      case RBVariant::AssocLie: {
        if (!carrier.is_associative())
          throw Error("HypothesisFailed", "carrier is not associative");
        if (!check_rota_baxter(carrier, r, d, 0).satisfied())
          throw Error("HypothesisFailed",
                      "map fails the weight-0 " + d.str() + "-Rota-Baxter equation");
        break;
      }
      case RBVariant::AssocWeight1: {
        if (!check(catalog("delta-assoc"), carrier, d).satisfied())
          throw Error("HypothesisFailed",
                      "carrier is not " + d.str() + "-associative");
        if (!check_rota_baxter(carrier, r, Rational(1), 1).satisfied())
          throw Error("HypothesisFailed",
                      "map fails the weight-1 Rota-Baxter equation");
        break;
      }
    }
  }

  RBInducedResult out;
  out.product = Algebra(n, carrier.labels());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ei(n, Scalar(0)), ej(n, Scalar(0));
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      Vec v;
      switch (variant) {
        case RBVariant::Lie:
          v = carrier.multiply(r.apply(ei), ej);
          break;
        case RBVariant::AssocLie: {
          v = carrier.multiply(r.apply(ei), ej);
          const Vec w = carrier.multiply(ej, r.apply(ei));
          for (std::size_t k = 0; k < n; ++k) v[k] -= w[k];
          break;
        }
        case RBVariant::AssocWeight1: {
          v = carrier.multiply(r.apply(ei), ej);
          const Vec w = carrier.multiply(ej, r.apply(ei));
          const Vec& p = carrier.basis_product(i, j);
          for (std::size_t k = 0; k < n; ++k) v[k] = v[k] + w[k] - p[k];
          break;
        }
      }
      out.product.set_basis_product(i, j, std::move(v));
    }

  if (variant == RBVariant::Lie) {
    bool upgrade = true;
    for (std::size_t i = 0; i < n && upgrade; ++i)
      for (std::size_t j = 0; j < n && upgrade; ++j)
        for (std::size_t k = 0; k < n && upgrade; ++k) {
          Vec ei(n, Scalar(0)), ej(n, Scalar(0)), ek(n, Scalar(0));
          ei[i] = Scalar(1);
          ej[j] = Scalar(1);
          ek[k] = Scalar(1);
          Vec s = carrier.multiply(carrier.multiply(r.apply(ei), r.apply(ej)), ek);
          const Vec s2 =
              carrier.multiply(carrier.multiply(r.apply(ej), r.apply(ek)), ei);
          const Vec s3 =
              carrier.multiply(carrier.multiply(r.apply(ek), r.apply(ei)), ej);
          for (std::size_t m = 0; m < n; ++m) {
            s[m] += s2[m] + s3[m];
            if (!s[m].is_zero()) upgrade = false;
          }
        }
    out.pre_lie_upgrade = upgrade;
  }
  return out;
}

}  // namespace dnov
