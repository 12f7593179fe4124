#pragma once

#include <cstdint>
#include <vector>

#include "dnov/scalar.hpp"

namespace dnov {

// Matrix over Q(delta). Semantically a dense rows x cols grid; rows are held
// sparsely so consequence-space matrices (weight <= 4 rows, thousands of
// columns) stay cheap.
class ExactMatrix {
public:
  using SparseRow = std::vector<std::pair<std::int32_t, Scalar>>;  // sorted by column

  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows) {}

  static ExactMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& v);
  void append_row(SparseRow row);  // row must be sorted by column, no dup columns
  const SparseRow& row(std::size_t i) const { return data_[i]; }

  std::vector<Scalar> dense_row(std::size_t i) const;
  bool delta_free() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseRow> data_;
};

struct RankNullspace {
  std::size_t rank = 0;
  std::vector<std::vector<Scalar>> nullspace;  // each of length cols
  // Every positive-degree polynomial in delta that was divided by (or cleared
  // from a denominator) during elimination, monic and deduplicated. Empty for
  // delta-free input. The generic rank may differ from the specialized rank
  // only at roots of these.
  std::vector<DeltaPoly> pivot_denominators;
};

// Full elimination with nullspace basis. Delta-free matrices run exact
// Gaussian elimination with full pivoting over Q; symbolic matrices run
// fraction-free Bareiss elimination with full pivoting, pivots chosen by
// minimal degree in delta then minimal bit size.
RankNullspace rank_and_nullspace(const ExactMatrix& m);

struct RankReport {
  std::size_t rank = 0;
  std::vector<DeltaPoly> pivot_denominators;
};

// Rank without nullspace, via incremental sparse elimination. Suitable for
// very tall sparse matrices (operad consequence spaces).
RankReport rank_only(const ExactMatrix& m);

// Reduced row echelon form over Q(delta); zero rows dropped, leading entries
// one, pivot columns cleared, rows ordered by pivot column.
std::vector<std::vector<Scalar>> rref_rows(std::vector<std::vector<Scalar>> rows);

std::size_t rank_of_rows(const std::vector<std::vector<Scalar>>& rows);

// True when v lies in the row space of basis (basis need not be reduced).
bool in_row_space(const std::vector<std::vector<Scalar>>& basis,
                  const std::vector<Scalar>& v);

}  // namespace dnov
