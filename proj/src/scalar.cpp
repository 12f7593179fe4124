#include "dnov/scalar.hpp"

#include <sstream>

#include "dnov/errors.hpp"

namespace dnov {

Scalar::Scalar(DeltaPoly num, DeltaPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("DivisionByZero", "scalar with zero denominator");
  normalize();
}

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = DeltaPoly(Rational(1));
    return;
  }
  if (!den_.is_one()) {
    DeltaPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    const Rational lead = den_.leading();
    if (!lead.is_one()) {
      const Rational inv = lead.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }
}

Rational Scalar::as_rational() const {
  if (!is_rational()) throw Error("NotRational", "scalar depends on delta: " + str());
  return num_.coefficient(0);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error("DivisionByZero", "scalar division by zero");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "inverse of zero scalar");
  return Scalar(den_, num_);
}

Scalar Scalar::pow(unsigned e) const {
  Scalar r(1);
  Scalar base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Rational Scalar::evaluate_at_delta(const Rational& d) const {
  const Rational dv = den_.evaluate(d);
  if (dv.is_zero()) throw pole_at_delta(den_.str(), d.str());
  return num_.evaluate(d) / dv;
}

int Scalar::pivot_degree() const {
  return std::max(num_.degree(), den_.degree());
}

std::string Scalar::str() const {
  if (den_.is_one()) {
    if (num_.is_constant()) return num_.is_zero() ? "0" : num_.coefficient(0).str();
    return num_.str();
  }
  // Rescale for display so both parts have integer coefficients.
  const DeltaPoly dp = den_.primitive();
  const Rational scale = dp.leading() / den_.leading();
  const DeltaPoly np = num_.scaled(scale);
  auto wrap = [](const DeltaPoly& p) {
    std::string s = p.str();
    const bool atom = s.find_first_of("+-", 1) == std::string::npos;
    return atom ? s : "(" + s + ")";
  };
  std::ostringstream os;
  os << wrap(np) << "/" << wrap(dp);
  return os.str();
}

}  // namespace dnov
