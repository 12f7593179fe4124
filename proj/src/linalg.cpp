#include "dnov/linalg.hpp"

#include <algorithm>
#include <map>

#include "dnov/errors.hpp"

namespace dnov {

namespace {
const Scalar kZeroScalar;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw dimension_mismatch("ragged matrix rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      if (!rows[i][j].is_zero())
        m.data_[i].emplace_back(static_cast<std::int32_t>(j), rows[i][j]);
  }
  return m;
}

const Scalar& ExactMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& e, std::size_t col) {
                               return static_cast<std::size_t>(e.first) < col;
                             });
  if (it != r.end() && static_cast<std::size_t>(it->first) == j) return it->second;
  return kZeroScalar;
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& e, std::size_t col) {
                               return static_cast<std::size_t>(e.first) < col;
                             });
  if (it != r.end() && static_cast<std::size_t>(it->first) == j) {
    if (v.is_zero())
      r.erase(it);
    else
      it->second = v;
  } else if (!v.is_zero()) {
    r.insert(it, {static_cast<std::int32_t>(j), v});
  }
}

void ExactMatrix::append_row(SparseRow row) {
  data_.push_back(std::move(row));
  ++rows_;
}

std::vector<Scalar> ExactMatrix::dense_row(std::size_t i) const {
  std::vector<Scalar> out(cols_);
  for (const auto& [c, v] : data_[i]) out[c] = v;
  return out;
}

bool ExactMatrix::delta_free() const {
  for (const auto& r : data_)
    for (const auto& [c, v] : r)
      if (!v.is_rational()) return false;
  return true;
}

namespace {

void record_poly(std::vector<DeltaPoly>& sink, const DeltaPoly& p) {
  if (p.degree() < 1) return;
  DeltaPoly m = p.monic();
  if (std::find(sink.begin(), sink.end(), m) == sink.end()) sink.push_back(m);
}

// ---------------------------------------------------------------------------
// Dense exact Gaussian elimination over Q with full pivoting.
// ---------------------------------------------------------------------------

RankNullspace gauss_q(const ExactMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::vector<mpq_class>> a(nr, std::vector<mpq_class>(nc, 0));
  for (std::size_t i = 0; i < nr; ++i)
    for (const auto& [c, v] : m.row(i)) a[i][c] = v.as_rational().mpq();

  std::vector<bool> col_used(nc, false);
  std::vector<std::size_t> pivot_col;
  std::size_t step = 0;
  while (step < nr) {
    // full pivoting: smallest combined bit size among remaining entries
    std::size_t best_i = 0, best_j = 0, best_bits = 0;
    bool found = false;
    for (std::size_t i = step; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) {
        if (col_used[j] || sgn(a[i][j]) == 0) continue;
        const std::size_t bits =
            mpz_sizeinbase(a[i][j].get_num().get_mpz_t(), 2) +
            mpz_sizeinbase(a[i][j].get_den().get_mpz_t(), 2);
        if (!found || bits < best_bits) {
          found = true;
          best_i = i;
          best_j = j;
          best_bits = bits;
        }
      }
    if (!found) break;
    std::swap(a[step], a[best_i]);
    col_used[best_j] = true;
    pivot_col.push_back(best_j);
    const mpq_class inv = 1 / a[step][best_j];
    for (std::size_t j = 0; j < nc; ++j) a[step][j] *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == step || sgn(a[i][best_j]) == 0) continue;
      const mpq_class f = a[i][best_j];
      for (std::size_t j = 0; j < nc; ++j)
        if (sgn(a[step][j]) != 0) a[i][j] -= f * a[step][j];
    }
    ++step;
  }

  RankNullspace out;
  out.rank = pivot_col.size();
  std::vector<bool> is_pivot(nc, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(nc, Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
      v[pivot_col[k]] = Scalar(Rational(mpq_class(-a[k][f])));
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense fraction-free Bareiss elimination over Q(delta) with full pivoting.
// Pivot choice: minimal degree in delta, then minimal bit size. Records every
// positive-degree polynomial divided by.
// ---------------------------------------------------------------------------

RankNullspace bareiss_delta(const ExactMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  RankNullspace out;
  std::vector<std::vector<DeltaPoly>> a(nr, std::vector<DeltaPoly>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    // clear denominators row-wise; roots of cleared factors are poles of the
    // original entries, hence excluded specialization points
    DeltaPoly l(Rational(1));
    for (const auto& [c, v] : m.row(i)) {
      (void)c;
      if (!v.den().is_one()) l = exact_div(l * v.den(), poly_gcd(l, v.den()));
    }
    record_poly(out.pivot_denominators, l);
    for (const auto& [c, v] : m.row(i)) a[i][c] = v.num() * exact_div(l, v.den());
  }

  std::vector<bool> col_used(nc, false);
  std::vector<std::size_t> pivot_col;
  DeltaPoly prev_piv(Rational(1));
  std::size_t step = 0;
  while (step < nr) {
    std::size_t best_i = 0, best_j = 0, best_bits = 0;
    int best_deg = 0;
    bool found = false;
    for (std::size_t i = step; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) {
        if (col_used[j] || a[i][j].is_zero()) continue;
        const int deg = a[i][j].degree();
        const std::size_t bits = a[i][j].bit_size();
        if (!found || deg < best_deg || (deg == best_deg && bits < best_bits)) {
          found = true;
          best_i = i;
          best_j = j;
          best_deg = deg;
          best_bits = bits;
        }
      }
    if (!found) break;
    std::swap(a[step], a[best_i]);
    col_used[best_j] = true;
    pivot_col.push_back(best_j);
    const DeltaPoly piv = a[step][best_j];
    record_poly(out.pivot_denominators, piv);
    for (std::size_t i = step + 1; i < nr; ++i) {
      if (a[i][best_j].is_zero()) {
        for (std::size_t j = 0; j < nc; ++j) {
          if (col_used[j] || a[i][j].is_zero()) continue;
          a[i][j] = exact_div(piv * a[i][j], prev_piv);
        }
        continue;
      }
      const DeltaPoly f = a[i][best_j];
      for (std::size_t j = 0; j < nc; ++j) {
        if (j == best_j) continue;
        DeltaPoly t = piv * a[i][j] - f * a[step][j];
        a[i][j] = t.is_zero() ? DeltaPoly() : exact_div(t, prev_piv);
      }
      a[i][best_j] = DeltaPoly();
    }
    prev_piv = piv;
    ++step;
  }

  out.rank = pivot_col.size();
  // Back substitution over Q(delta) for the nullspace basis.
  std::vector<bool> is_pivot(nc, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(nc, Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t k = pivot_col.size(); k-- > 0;) {
      Scalar s(0);
      for (std::size_t j = 0; j < nc; ++j) {
        if (j == pivot_col[k] || a[k][j].is_zero() || v[j].is_zero()) continue;
        s += Scalar(a[k][j]) * v[j];
      }
      if (!s.is_zero()) v[pivot_col[k]] = -(s / Scalar(a[k][pivot_col[k]]));
    }
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Incremental sparse elimination (rank only), for tall sparse matrices.
// ---------------------------------------------------------------------------

template <class F>
struct SparseOps;

template <>
struct SparseOps<mpq_class> {
  static mpq_class from_scalar(const Scalar& s) { return s.as_rational().mpq(); }
  static bool is_zero(const mpq_class& v) { return sgn(v) == 0; }
  static void record_div(const mpq_class&, std::vector<DeltaPoly>&) {}
};

template <>
struct SparseOps<Scalar> {
  static Scalar from_scalar(const Scalar& s) { return s; }
  static bool is_zero(const Scalar& v) { return v.is_zero(); }
  static void record_div(const Scalar& v, std::vector<DeltaPoly>& sink) {
    record_poly(sink, v.num());
    record_poly(sink, v.den());
  }
};

template <class F>
std::size_t sparse_rank(const ExactMatrix& m, std::vector<DeltaPoly>& denoms) {
  using Row = std::vector<std::pair<std::int32_t, F>>;
  const std::size_t nc = m.cols();
  std::vector<Row> pivots(nc);          // pivot row per leading column, lead coeff 1
  std::vector<bool> has_pivot(nc, false);
  std::size_t rank = 0;

  std::vector<std::size_t> order(m.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return m.row(x).size() < m.row(y).size();
  });

  Row work, tmp;
  for (std::size_t idx : order) {
    work.clear();
    for (const auto& [c, v] : m.row(idx))
      work.emplace_back(c, SparseOps<F>::from_scalar(v));
    while (!work.empty()) {
      const std::int32_t lead = work.front().first;
      if (!has_pivot[lead]) {
        const F inv_src = work.front().second;
        SparseOps<F>::record_div(inv_src, denoms);
        if constexpr (std::is_same_v<F, mpq_class>) {
          const mpq_class inv = 1 / inv_src;
          for (auto& [c, v] : work) v *= inv;
        } else {
          const Scalar inv = inv_src.inverse();
          for (auto& [c, v] : work) v *= inv;
        }
        pivots[lead] = std::move(work);
        has_pivot[lead] = true;
        ++rank;
        break;
      }
      // work -= work[0] * pivots[lead]; both sorted by column
      const Row& p = pivots[lead];
      const F f = work.front().second;
      tmp.clear();
      tmp.reserve(work.size() + p.size());
      std::size_t i = 1, j = 1;  // both share the lead column, which cancels
      while (i < work.size() || j < p.size()) {
        if (j >= p.size() || (i < work.size() && work[i].first < p[j].first)) {
          tmp.push_back(std::move(work[i++]));
        } else if (i >= work.size() || p[j].first < work[i].first) {
          F v = f * p[j].second;
          v = -v;
          tmp.emplace_back(p[j].first, std::move(v));
          ++j;
        } else {
          F v = work[i].second - f * p[j].second;
          if (!SparseOps<F>::is_zero(v)) tmp.emplace_back(work[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      work.swap(tmp);
    }
  }
  return rank;
}

}  // namespace

RankNullspace rank_and_nullspace(const ExactMatrix& m) {
  if (m.cols() == 0) return RankNullspace{};
  if (m.delta_free()) return gauss_q(m);
  return bareiss_delta(m);
}

RankReport rank_only(const ExactMatrix& m) {
  RankReport rep;
  if (m.cols() == 0) return rep;
  if (m.delta_free()) {
    rep.rank = sparse_rank<mpq_class>(m, rep.pivot_denominators);
  } else {
    rep.rank = sparse_rank<Scalar>(m, rep.pivot_denominators);
  }
  return rep;
}

std::vector<std::vector<Scalar>> rref_rows(std::vector<std::vector<Scalar>> rows) {
  if (rows.empty()) return rows;
  const std::size_t nc = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < nc && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Scalar inv = rows[r][col].inverse();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const Scalar f = rows[i][col];
      for (std::size_t j = 0; j < nc; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::size_t rank_of_rows(const std::vector<std::vector<Scalar>>& rows) {
  return rref_rows(rows).size();
}

bool in_row_space(const std::vector<std::vector<Scalar>>& basis,
                  const std::vector<Scalar>& v) {
  auto rows = basis;
  const std::size_t r0 = rank_of_rows(rows);
  rows.push_back(v);
  return rank_of_rows(rows) == r0;
}

}  // namespace dnov
