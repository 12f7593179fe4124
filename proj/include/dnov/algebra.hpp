#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dnov/linalg.hpp"

namespace dnov {

using Vec = std::vector<Scalar>;

// Finite-dimensional algebra given by structure constants:
// e_i * e_j = sum_k c[i][j][k] e_k. Indices are 0-based internally; file
// formats and reports use the 1-based numbering of the tables.
class Algebra {
public:
  Algebra() = default;
  explicit Algebra(std::size_t dim, std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

  const Vec& basis_product(std::size_t i, std::size_t j) const;
  void set_basis_product(std::size_t i, std::size_t j, Vec v);

  Vec multiply(const Vec& x, const Vec& y) const;

  Algebra opposite() const;
  Algebra commutator_algebra() const;

  bool is_zero_product() const;
  bool is_commutative() const;
  bool is_associative() const;
  bool delta_free() const;
  Algebra evaluated_at(const Rational& d) const;

  // Two-sided unit, if one exists.
  std::optional<Vec> find_unit() const;

  friend bool operator==(const Algebra& a, const Algebra& b);

private:
  std::size_t dim_ = 0;
  std::vector<Vec> c_;  // [i * dim + j] -> vector of length dim
  std::vector<std::string> labels_;
};

enum class ProductRole { CommAssoc, Novikov, Bracket };

std::string role_name(ProductRole r);
ProductRole role_from_name(const std::string& s);

// One space, two products. productA is written "." (commutative associative
// in the Novikov-Poisson setting); productB is the Novikov product or Lie
// bracket.
struct BiAlgebra {
  Algebra productA;
  Algebra productB;
  ProductRole roleA = ProductRole::CommAssoc;
  ProductRole roleB = ProductRole::Novikov;

  std::size_t dim() const { return productA.dim(); }
  bool delta_free() const { return productA.delta_free() && productB.delta_free(); }
  BiAlgebra evaluated_at(const Rational& d) const;
};

// Row-reduced subspace of coordinate space.
class Subspace {
public:
  Subspace() = default;
  Subspace(std::size_t ambient_dim, std::vector<Vec> vectors);
  static Subspace full(std::size_t n);
  static Subspace zero(std::size_t n) { return Subspace(n, {}); }
  static Subspace line(std::size_t n, std::size_t basis_index);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

private:
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;  // reduced row echelon form
};

Subspace subspace_product(const Algebra& a, const Subspace& u, const Subspace& v);

enum class SeriesKind { Derived, RightPower, LowerCentral };

std::string series_kind_name(SeriesKind k);
SeriesKind series_kind_from_name(const std::string& s);

struct SeriesReport {
  SeriesKind kind;
  std::vector<std::size_t> dims;      // starting with the first term of the series
  bool terminated = false;            // reached the zero subspace
  std::optional<std::size_t> index;   // superscript of the first zero term:
                                      // derived counts from 0, the others from 1
};

// Series of the whole algebra, or of the subalgebra spanned by `start`.
SeriesReport series(const Algebra& a, SeriesKind kind);
SeriesReport series_of_subalgebra(const Algebra& a, SeriesKind kind, const Subspace& start);

// k-th term of the right-power chain of the subalgebra spanned by s:
// T_1 = s, T_{n} = T_{n-1} * s.
Subspace right_power_term(const Algebra& a, const Subspace& s, std::size_t k);

Subspace ideal_closure(const Algebra& a, const Subspace& gens);

struct Dim2IdealReport {
  bool exists = false;
  std::optional<Vec> witness;           // a spanning vector of an ideal line
  // When a line of ideals exists only at irrational slopes, the irreducible
  // slope polynomials (in the line parameter) are reported here.
  std::vector<DeltaPoly> slope_factors;
};

// Exact decision of existence of a 1-dimensional two-sided ideal; dim 2,
// delta-free constants only.
Dim2IdealReport proper_ideal_exists_dim2(const Algebra& a);

struct Fingerprint {
  std::size_t dim_square = 0;
  std::size_t dim_left_annihilator = 0;
  std::size_t dim_right_annihilator = 0;
  bool commutative = false;
  bool associative = false;
  // (1-based basis index, trace of left multiplication) for each basis vector
  // with e_i e_i = e_i.
  std::vector<std::pair<std::size_t, Scalar>> idempotent_traces;
};

Fingerprint invariant_fingerprint(const Algebra& a);

}  // namespace dnov
