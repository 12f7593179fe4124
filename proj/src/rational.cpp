#include "dnov/rational.hpp"

#include <ostream>

#include "dnov/errors.hpp"

namespace dnov {

Rational::Rational(long n, long d) : v_(n, d) {
  if (d == 0) throw Error("DivisionByZero", "rational with zero denominator");
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("DivisionByZero", "rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(unsigned e) const {
  mpq_class r(1);
  mpq_class base = v_;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return Rational(r);
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(v_.get_num().get_mpz_t(), 2) +
         mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
}

Rational Rational::parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw parse_error("invalid rational literal: '" + s + "'");
  if (q.get_den() == 0)
    throw parse_error("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.v_;
}

}  // namespace dnov
