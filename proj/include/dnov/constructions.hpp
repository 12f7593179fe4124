#pragma once

#include <optional>

#include "dnov/identities.hpp"

namespace dnov {

// Linear endomorphism in the column-action convention: coordinates transform
// as column vectors, entry(i, j) is the e_i coefficient of the image of e_j.
class LinearMap {
public:
  LinearMap() = default;
  explicit LinearMap(std::size_t dim);
  static LinearMap identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Scalar& entry(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  void set_entry(std::size_t i, std::size_t j, const Scalar& v) { m_[i * dim_ + j] = v; }

  Vec apply(const Vec& x) const;
  LinearMap compose(const LinearMap& other) const;  // this after other
  bool is_zero() const;
  bool delta_free() const;
  LinearMap evaluated_at(const Rational& d) const;

  std::vector<Scalar> flattened() const { return m_; }
  static LinearMap from_flat(std::size_t dim, const std::vector<Scalar>& flat);

  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.dim_ == b.dim_ && a.m_ == b.m_;
  }

private:
  std::size_t dim_ = 0;
  std::vector<Scalar> m_;
};

bool is_delta_derivation(const Algebra& a, const LinearMap& phi, const Rational& d);

struct DerivationSpace {
  Rational delta;
  std::vector<LinearMap> basis;  // row-reduced in the flattened coordinates
  std::size_t dimension() const { return basis.size(); }
  bool contains(const LinearMap& phi) const;
};

// Exact nullspace of the delta-derivation equations on all basis pairs.
DerivationSpace solve_delta_derivations(const Algebra& a, const Rational& d);

struct SpectrumEntry {
  DeltaPoly factor;               // monic factor of a pivot denominator
  std::optional<Rational> root;   // present for linear factors
  std::optional<long> jump;       // nullity(root) - generic nullity, when rechecked
};

struct DerivationSpectrum {
  std::size_t generic_nullity = 0;
  std::vector<SpectrumEntry> entries;
};

// Parametric delta-derivation analysis: generic nullity over Q(delta) plus
// the exceptional factors, each rational root rechecked exactly.
DerivationSpectrum derivation_delta_spectrum(const Algebra& a);

enum class APhiSide { Left, Right };

// x o y = x phi(y) (left) or phi(x) y (right) on a commutative associative
// algebra with a d-derivation phi.
Algebra build_a_phi(const Algebra& a, const LinearMap& phi, const Rational& d,
                    APhiSide side, bool validate = true);

bool passes_np(const BiAlgebra& b, const Rational& d);

// x X y = x o y + h x y.
BiAlgebra np_deform_h(const BiAlgebra& b, const Vec& h, const Rational& d,
                      bool validate = true);

// x ._q y = q x y.
BiAlgebra np_scale_q(const BiAlgebra& b, const Vec& q, const Rational& d,
                     bool validate = true);

// Kantor product of the two multiplications at the fixed vector u:
// x * y = u (x o y) - (u x) o y - x o (u y).
Algebra kantor_product(const BiAlgebra& b, const Vec& u, const Rational& d,
                       bool validate = true);

BiAlgebra tensor_np(const BiAlgebra& b1, const Rational& d1, const BiAlgebra& b2,
                    const Rational& d2, bool validate = true);

// [[x, y]] = phi1(x) phi2(y) - phi2(x) phi1(y) for commuting d-derivations.
BiAlgebra poisson_from_two_derivations(const Algebra& a, const LinearMap& phi1,
                                       const LinearMap& phi2, const Rational& d,
                                       bool validate = true);

// (N, ., [x,y] = x o y - y o x); transposed (d+1)-Poisson by construction.
BiAlgebra np_commutator_bracket(const BiAlgebra& b, const Rational& d,
                                bool validate = true);

// R(x) R(y) = d R(R(x) y + x R(y) - lambda x y) on all basis pairs.
CheckReport check_rota_baxter(const Algebra& a, const LinearMap& r, const Rational& d,
                              int lambda);

enum class RBVariant { Lie, AssocLie, AssocWeight1 };

struct RBInducedResult {
  Algebra product;
  // Lie variant only: whether the cyclic sum (R(x)R(y))z vanishes, upgrading
  // the delta-left-symmetric product to delta-pre-Lie.
  std::optional<bool> pre_lie_upgrade;
};

RBInducedResult rb_induced_products(const Algebra& carrier, const LinearMap& r,
                                    const Rational& d, RBVariant variant,
                                    bool validate = true);

}  // namespace dnov
