#include "dnov/operad.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "dnov/errors.hpp"

namespace dnov {
namespace operad {

namespace {

struct ShapeNode {
  ShapeId l = -1, r = -1;
  int leaves = 1;
};

struct ShapeRegistry {
  std::vector<ShapeNode> nodes{ShapeNode{}};  // id 0: leaf
  std::map<std::pair<ShapeId, ShapeId>, ShapeId> interned;
  std::map<int, std::vector<ShapeId>> by_degree{{1, {0}}};
  std::map<ShapeId, int> degree_pos{{0, 0}};
};

ShapeRegistry& reg() {
  static ShapeRegistry r;
  return r;
}

std::mutex& reg_mutex() {
  static std::mutex m;
  return m;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::size_t perm_rank(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::size_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += static_cast<std::size_t>(smaller) * factorial(n - 1 - i);
  }
  return rank;
}

std::vector<int> perm_unrank(int n, std::size_t rank) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> out;
  for (int i = n - 1; i >= 0; --i) {
    const std::size_t f = factorial(i);
    const std::size_t idx = rank / f;
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<long>(idx));
  }
  return out;
}

}  // namespace

ShapeId leaf_shape() { return 0; }

ShapeId node_shape(ShapeId l, ShapeId r) {
  const std::lock_guard<std::mutex> lock(reg_mutex());
  auto& R = reg();
  auto it = R.interned.find({l, r});
  if (it != R.interned.end()) return it->second;
  ShapeNode n;
  n.l = l;
  n.r = r;
  n.leaves = R.nodes[l].leaves + R.nodes[r].leaves;
  const ShapeId id = static_cast<ShapeId>(R.nodes.size());
  R.nodes.push_back(n);
  R.interned[{l, r}] = id;
  return id;
}

int shape_leaves(ShapeId s) {
  const std::lock_guard<std::mutex> lock(reg_mutex());
  return reg().nodes[s].leaves;
}
ShapeId shape_left(ShapeId s) {
  const std::lock_guard<std::mutex> lock(reg_mutex());
  return reg().nodes[s].l;
}
ShapeId shape_right(ShapeId s) {
  const std::lock_guard<std::mutex> lock(reg_mutex());
  return reg().nodes[s].r;
}

const std::vector<ShapeId>& shapes_of_degree(int n) {
  {
    const std::lock_guard<std::mutex> lock(reg_mutex());
    auto& R = reg();
    auto it = R.by_degree.find(n);
    if (it != R.by_degree.end()) return it->second;
  }
  std::vector<ShapeId> out;
  for (int l = n - 1; l >= 1; --l) {
    const auto& ls = shapes_of_degree(l);
    const auto& rs = shapes_of_degree(n - l);
    for (ShapeId a : ls)
      for (ShapeId b : rs) out.push_back(node_shape(a, b));
  }
  const std::lock_guard<std::mutex> lock(reg_mutex());
  auto& R = reg();
  auto& stored = R.by_degree[n] = std::move(out);
  for (std::size_t i = 0; i < stored.size(); ++i)
    R.degree_pos[stored[i]] = static_cast<int>(i);
  return stored;
}

std::string TreeMonomial::str(const std::vector<std::string>& var_names) const {
  std::size_t pos = 0;
  std::function<std::string(ShapeId)> go = [&](ShapeId s) -> std::string {
    if (s == 0) return var_names[labels[pos++]];
    const std::string l = go(shape_left(s));
    const std::string r = go(shape_right(s));
    return "(" + l + "o" + r + ")";
  };
  return go(shape);
}

std::vector<TreeMonomial> monomials(int n, int max_degree) {
  if (n < 1 || n > max_degree)
    throw Error("DegreeTooLarge",
                "degree " + std::to_string(n) + " outside 1.." + std::to_string(max_degree));
  std::vector<TreeMonomial> out;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (ShapeId s : shapes_of_degree(n)) {
    std::vector<int> p = perm;
    do {
      out.push_back(TreeMonomial{s, p});
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

std::size_t monomial_count(int n) {
  // Catalan(n-1) * n!
  std::size_t cat = 1;
  for (int i = 1; i < n; ++i) cat = cat * 2 * (2 * i - 1) / (i + 1);
  // compute Catalan iteratively: C_0 = 1, C_k = C_{k-1} * 2(2k-1)/(k+1)
  return cat * factorial(n);
}

std::size_t column_index(const TreeMonomial& m) {
  const int n = m.degree();
  (void)shapes_of_degree(n);  // ensure positions are interned
  int pos;
  {
    const std::lock_guard<std::mutex> lock(reg_mutex());
    pos = reg().degree_pos.at(m.shape);
  }
  return static_cast<std::size_t>(pos) * factorial(n) + perm_rank(m.labels);
}

TreeMonomial monomial_at(int n, std::size_t col) {
  const std::size_t f = factorial(n);
  const auto& shapes = shapes_of_degree(n);
  return TreeMonomial{shapes[col / f], perm_unrank(n, col % f)};
}

namespace {

TreeMonomial graft(const TreeMonomial& outer, int slot, const TreeMonomial& sub) {
  int counter = 0;
  std::function<ShapeId(ShapeId)> go = [&](ShapeId s) -> ShapeId {
    if (s == 0) return counter++ == slot ? sub.shape : s;
    const ShapeId l = go(shape_left(s));
    const ShapeId r = go(shape_right(s));
    return node_shape(l, r);
  };
  const ShapeId ns = go(outer.shape);
  std::vector<int> labels;
  labels.reserve(outer.labels.size() + sub.labels.size() - 1);
  labels.insert(labels.end(), outer.labels.begin(), outer.labels.begin() + slot);
  labels.insert(labels.end(), sub.labels.begin(), sub.labels.end());
  labels.insert(labels.end(), outer.labels.begin() + slot + 1, outer.labels.end());
  return TreeMonomial{ns, std::move(labels)};
}

TreeMonomial substitute(const Term& t, const std::array<TreeMonomial, 3>& args) {
  if (t.is_leaf()) return args[static_cast<std::size_t>(t.var_index())];
  const TreeMonomial l = substitute(t.left(), args);
  const TreeMonomial r = substitute(t.right(), args);
  std::vector<int> labels = l.labels;
  labels.insert(labels.end(), r.labels.begin(), r.labels.end());
  return TreeMonomial{node_shape(l.shape, r.shape), std::move(labels)};
}

void for_each_composition3(int k, const std::function<void(int, int, int)>& f) {
  for (int d1 = 1; d1 <= k - 2; ++d1)
    for (int d2 = 1; d2 <= k - 1 - d1; ++d2) f(d1, d2, k - d1 - d2);
}

}  // namespace

ExactMatrix consequence_space(const std::vector<FormalIdentity>& relations, int n,
                              const std::optional<Rational>& delta, int max_degree) {
  for (const auto& r : relations) {
    if (r.arity != 3 || r.uses_p2)
      throw Error("InvalidRelation",
                  "consequence closure needs single-product arity-3 relations");
  }
  const std::size_t ncols = monomial_count(n);
  ExactMatrix m(0, ncols);
  if (n < 3) {
    (void)monomials(n, max_degree);  // degree validation
    return m;
  }
  (void)monomials(n, max_degree);

  std::vector<FormalIdentity> rels = relations;
  if (delta)
    for (auto& r : rels) r = r.at_delta(*delta);

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int k = 3; k <= n; ++k) {
    const int outer_deg = n - k + 1;
    for_each_composition3(k, [&](int d1, int d2, int d3) {
      for (ShapeId s1 : shapes_of_degree(d1))
        for (ShapeId s2 : shapes_of_degree(d2))
          for (ShapeId s3 : shapes_of_degree(d3))
            for (ShapeId s0 : shapes_of_degree(outer_deg))
              for (int slot = 0; slot < outer_deg; ++slot) {
                std::vector<int> p = perm;
                do {
                  std::array<TreeMonomial, 3> args{
                      TreeMonomial{s1, {p.begin(), p.begin() + d1}},
                      TreeMonomial{s2, {p.begin() + d1, p.begin() + d1 + d2}},
                      TreeMonomial{s3, {p.begin() + d1 + d2, p.begin() + k}}};
                  TreeMonomial outer{s0, std::vector<int>(outer_deg, -1)};
                  {
                    std::size_t src = static_cast<std::size_t>(k);
                    for (int leaf = 0; leaf < outer_deg; ++leaf)
                      if (leaf != slot) outer.labels[leaf] = p[src++];
                  }
                  for (const auto& rel : rels) {
                    std::map<std::size_t, Scalar> row;
                    for (const auto& term : rel.terms) {
                      const TreeMonomial composite =
                          graft(outer, slot, substitute(term.tree, args));
                      row[column_index(composite)] += term.coeff;
                    }
                    ExactMatrix::SparseRow sr;
                    for (auto& [c, v] : row)
                      if (!v.is_zero())
                        sr.emplace_back(static_cast<std::int32_t>(c), v);
                    m.append_row(std::move(sr));
                  }
                } while (std::next_permutation(p.begin(), p.end()));
              }
    });
  }
  return m;
}

DimReport component_dim(const std::optional<Rational>& delta, int degree,
                        int max_degree) {
  DimReport rep;
  rep.degree = degree;
  rep.symbolic = !delta.has_value();
  rep.monomial_count = monomial_count(degree);
  if (degree <= 2) {
    rep.rank = 0;
    rep.dim = rep.monomial_count;
    (void)monomials(degree, max_degree);
    return rep;
  }
  const auto fam = catalog("delta-novikov");
  const ExactMatrix m = consequence_space(fam.identities, degree, delta, max_degree);
  if (rep.symbolic && degree <= 3) {
    auto rn = rank_and_nullspace(m);
    rep.rank = rn.rank;
    rep.exceptional_factors = rn.pivot_denominators;
  } else {
    auto rr = rank_only(m);
    rep.rank = rr.rank;
    rep.exceptional_factors = rr.pivot_denominators;
  }
  rep.dim = rep.monomial_count - rep.rank;
  return rep;
}

namespace {

void add_term(Combination& c, const TreeMonomial& m, const Scalar& v) {
  if (v.is_zero()) return;
  auto [it, inserted] = c.emplace(m, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) c.erase(it);
  }
}

}  // namespace

Combination rewrite_degree3(const Combination& comb, const Scalar& delta) {
  Combination out;
  std::vector<std::pair<TreeMonomial, Scalar>> work(comb.begin(), comb.end());
  const ShapeId lc = node_shape(node_shape(0, 0), 0);
  const ShapeId rn = node_shape(0, node_shape(0, 0));
  while (!work.empty()) {
    auto [m, coeff] = work.back();
    work.pop_back();
    if (coeff.is_zero()) continue;
    if (m.degree() != 3) throw Error("InvalidDegree", "rewrite needs degree 3");
    const auto& L = m.labels;
    if (m.shape == lc) {
      if (L[1] < L[2]) {
        add_term(out, m, coeff);
      } else {
        work.push_back({TreeMonomial{lc, {L[0], L[2], L[1]}}, coeff});
      }
    } else if (m.shape == rn) {
      if (L[0] < L[1]) {
        add_term(out, m, coeff);
      } else {
        // x(yz) = delta (xy)z - delta (yx)z + y(xz) with x = L0, y = L1, z = L2
        work.push_back({TreeMonomial{lc, {L[0], L[1], L[2]}}, delta * coeff});
        work.push_back({TreeMonomial{lc, {L[1], L[0], L[2]}}, -(delta * coeff)});
        work.push_back({TreeMonomial{rn, {L[1], L[0], L[2]}}, coeff});
      }
    } else {
      throw Error("InvalidDegree", "rewrite needs degree-3 monomials");
    }
  }
  return out;
}

Combination rewrite_degree3(const TreeMonomial& m, const Scalar& delta) {
  Combination c;
  c.emplace(m, Scalar(1));
  return rewrite_degree3(c, delta);
}

std::vector<std::string> derived_rewrite_rules() {
  static const std::vector<std::string> vars{"a", "b", "c"};
  std::vector<std::string> out;
  const Scalar d = Scalar::delta();
  for (const auto& m : monomials(3)) {
    const Combination nf = rewrite_degree3(m, d);
    if (nf.size() == 1 && nf.begin()->first == m && nf.begin()->second.is_one())
      continue;  // base element
    std::ostringstream os;
    os << m.str(vars) << " = ";
    bool first = true;
    for (const auto& [mono, c] : nf) {
      std::string cs = c.str();
      if (!first) os << " + ";
      first = false;
      if (cs == "1")
        os << mono.str(vars);
      else
        os << cs << "*" << mono.str(vars);
    }
    out.push_back(os.str());
  }
  return out;
}

HilbertData hilbert_data(const Rational& d) {
  HilbertData h;
  Rational fact(1);
  for (int n = 1; n <= 5; ++n) {
    h.dims[n - 1] = component_dim(d, n).dim;
    fact *= Rational(n);
    const Rational sign(n % 2 == 0 ? 1 : -1);
    h.series[n - 1] = sign * Rational(static_cast<long>(h.dims[n - 1])) / fact;
  }
  return h;
}

KoszulReport koszul_obstruction(const Rational& d) {
  if (d == Rational(1))
    throw Error("DeltaExcluded", "the obstruction computation assumes delta != 1");
  KoszulReport rep;
  rep.delta = d;
  rep.beta = component_dim(d, 4).dim;
  rep.alpha = component_dim(d, 5).dim;
  const Rational beta(static_cast<long>(rep.beta));
  const Rational alpha(static_cast<long>(rep.alpha));
  rep.coefficient = (Rational(240) - Rational(15) * beta + alpha) / Rational(60);
  rep.nonzero = !rep.coefficient.is_zero();
  return rep;
}

DualOperadReport dual_relations_via_lie_admissibility(
    const std::optional<Rational>& delta) {
  const Scalar d = delta ? Scalar(*delta) : Scalar::delta();

  // Elements of (free algebra on a,b,c) tensor (free algebra on x,y,z),
  // coefficients in Q(delta).
  using Tensor = std::map<std::pair<TreeMonomial, TreeMonomial>, Scalar>;
  auto add = [](Tensor& t, const TreeMonomial& l, const TreeMonomial& r, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t.emplace(std::make_pair(l, r), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  };
  auto join = [](const TreeMonomial& a, const TreeMonomial& b) {
    std::vector<int> labels = a.labels;
    labels.insert(labels.end(), b.labels.begin(), b.labels.end());
    return TreeMonomial{node_shape(a.shape, b.shape), std::move(labels)};
  };
  // [p tensor q, r tensor s] = (p o r) tensor (q . s) - (r o p) tensor (s . q)
  auto bracket = [&](const Tensor& A, const Tensor& B) {
    Tensor out;
    for (const auto& [pq, c1] : A)
      for (const auto& [rs, c2] : B) {
        const Scalar c = c1 * c2;
        add(out, join(pq.first, rs.first), join(pq.second, rs.second), c);
        add(out, join(rs.first, pq.first), join(rs.second, pq.second), -c);
      }
    return out;
  };

  auto simple = [](int v) {
    Tensor t;
    t.emplace(std::make_pair(TreeMonomial{0, {v}}, TreeMonomial{0, {v}}), Scalar(1));
    return t;
  };
  const Tensor A = simple(0), B = simple(1), C = simple(2);

  Tensor jac;
  for (const auto& t : {bracket(bracket(A, B), C), bracket(bracket(B, C), A),
                        bracket(bracket(C, A), B)})
    for (const auto& [lr, c] : t) add(jac, lr.first, lr.second, c);

  // Reduce left factors to the degree-3 base and collect right-factor
  // coefficients per base element.
  std::map<TreeMonomial, Vec> collected;
  for (const auto& [lr, c] : jac) {
    const Combination nf = rewrite_degree3(lr.first, d);
    const std::size_t rcol = column_index(lr.second);
    for (const auto& [base, bc] : nf) {
      auto it = collected.find(base);
      if (it == collected.end())
        it = collected.emplace(base, Vec(12, Scalar(0))).first;
      it->second[rcol] += c * bc;
    }
  }

  DualOperadReport rep;
  std::vector<std::vector<Scalar>> rel_rows;
  for (auto& [base, vec] : collected) {
    rep.relations.emplace_back(base, vec);
    rel_rows.push_back(vec);
  }

  // Right delta-Novikov relation span at arity 3: all variable relabelings of
  // the two defining identities.
  auto right_fam = catalog("right-delta-novikov");
  if (delta) right_fam = right_fam.at_delta(*delta);
  std::vector<std::vector<Scalar>> right_rows;
  std::vector<int> sigma{0, 1, 2};
  do {
    for (const auto& id : right_fam.identities) {
      std::vector<Scalar> row(12, Scalar(0));
      for (const auto& term : id.terms) {
        std::function<TreeMonomial(const Term&)> build = [&](const Term& t) {
          if (t.is_leaf()) return TreeMonomial{0, {sigma[t.var_index()]}};
          const TreeMonomial l = build(t.left());
          const TreeMonomial r = build(t.right());
          std::vector<int> labels = l.labels;
          labels.insert(labels.end(), r.labels.begin(), r.labels.end());
          return TreeMonomial{node_shape(l.shape, r.shape), std::move(labels)};
        };
        row[column_index(build(term.tree))] += term.coeff;
      }
      right_rows.push_back(std::move(row));
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  rep.relation_rank = rank_of_rows(rel_rows);
  rep.right_novikov_rank = rank_of_rows(right_rows);
  std::vector<std::vector<Scalar>> joint = rel_rows;
  joint.insert(joint.end(), right_rows.begin(), right_rows.end());
  rep.joint_rank = rank_of_rows(joint);
  rep.equals_right_delta_novikov = rep.relation_rank == rep.right_novikov_rank &&
                                   rep.relation_rank == rep.joint_rank;
  return rep;
}

}  // namespace operad
}  // namespace dnov
