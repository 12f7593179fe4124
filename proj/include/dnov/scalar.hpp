#pragma once

#include <string>

#include "dnov/delta_poly.hpp"

namespace dnov {

// Element of Q(delta): num/den with den monic, gcd(num, den) = 1, den != 0.
// Canonical zero is 0/1.
class Scalar {
public:
  Scalar() : num_(), den_(Rational(1)) {}
  Scalar(long c) : num_(Rational(c)), den_(Rational(1)) {}
  Scalar(const Rational& c) : num_(c), den_(Rational(1)) {}
  explicit Scalar(const DeltaPoly& p) : num_(p), den_(Rational(1)) {}
  Scalar(DeltaPoly num, DeltaPoly den);

  static Scalar delta() { return Scalar(DeltaPoly::delta()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  // True when the value lives in Q (no dependence on delta).
  bool is_rational() const { return num_.is_constant() && den_.is_one(); }
  Rational as_rational() const;

  const DeltaPoly& num() const { return num_; }
  const DeltaPoly& den() const { return den_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  Scalar pow(unsigned e) const;

  // Exact substitution delta := d. Throws PoleAtDelta when den(d) = 0.
  Rational evaluate_at_delta(const Rational& d) const;

  std::size_t bit_size() const { return num_.bit_size() + den_.bit_size(); }
  // Total degree used for pivot selection: max(deg num, deg den), 0 for 0.
  int pivot_degree() const;

  std::string str() const;

private:
  void normalize();
  DeltaPoly num_, den_;
};

}  // namespace dnov
