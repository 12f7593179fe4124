#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dnov/rational.hpp"

namespace dnov {

// Univariate polynomial in the formal parameter delta, rational coefficients.
// coefficient(k) is the coefficient of delta^k; trailing zeros are trimmed so
// the zero polynomial has an empty coefficient vector.
class DeltaPoly {
public:
  DeltaPoly() = default;
  DeltaPoly(const Rational& c);
  DeltaPoly(long c) : DeltaPoly(Rational(c)) {}
  explicit DeltaPoly(std::vector<Rational> coeffs);

  static DeltaPoly delta();                      // the monomial delta
  static DeltaPoly monomial(unsigned k, const Rational& c);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return degree() == 0 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  // degree of zero polynomial is -1
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& coefficient(std::size_t k) const;
  const Rational& leading() const;

  DeltaPoly operator-() const;
  DeltaPoly& operator+=(const DeltaPoly& o);
  DeltaPoly& operator-=(const DeltaPoly& o);
  friend DeltaPoly operator+(DeltaPoly a, const DeltaPoly& b) { return a += b; }
  friend DeltaPoly operator-(DeltaPoly a, const DeltaPoly& b) { return a -= b; }
  friend DeltaPoly operator*(const DeltaPoly& a, const DeltaPoly& b);
  DeltaPoly& operator*=(const DeltaPoly& o) { return *this = *this * o; }
  DeltaPoly scaled(const Rational& c) const;

  friend bool operator==(const DeltaPoly& a, const DeltaPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DeltaPoly& a, const DeltaPoly& b) { return !(a == b); }

  // Quotient and remainder; divisor must be nonzero.
  friend std::pair<DeltaPoly, DeltaPoly> divmod(const DeltaPoly& a, const DeltaPoly& b);
  // Exact division; throws if the remainder is nonzero.
  friend DeltaPoly exact_div(const DeltaPoly& a, const DeltaPoly& b);

  DeltaPoly monic() const;
  DeltaPoly derivative() const;
  Rational evaluate(const Rational& d) const;

  // Scale to integer coefficients with positive leading coefficient and
  // content 1; used for display and factor normalization.
  DeltaPoly primitive() const;

  std::size_t bit_size() const;
  std::string str() const;  // e.g. "2*delta^2-3*delta+1"

private:
  void trim();
  std::vector<Rational> c_;
};

// Monic gcd; gcd(0, 0) = 0.
DeltaPoly poly_gcd(DeltaPoly a, DeltaPoly b);

// Squarefree part p / gcd(p, p'), monic.
DeltaPoly squarefree_part(const DeltaPoly& p);

// All rational roots with multiplicity stripped (each root listed once).
std::vector<Rational> rational_roots(const DeltaPoly& p);

// Monic factors for reporting: linear factors (delta - r) for every rational
// root of the squarefree part, plus the remaining nonlinear cofactor when it
// is nonconstant. Degree <= 3 remainders are genuinely irreducible over Q;
// higher-degree remainders are emitted unsplit.
std::vector<DeltaPoly> report_factors(const DeltaPoly& p);

}  // namespace dnov
