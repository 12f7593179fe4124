#include "dnov/delta_poly.hpp"

#include <algorithm>
#include <sstream>

#include "dnov/errors.hpp"

namespace dnov {

namespace {
const Rational kZero;
}

DeltaPoly::DeltaPoly(const Rational& c) {
  if (!c.is_zero()) c_.push_back(c);
}

DeltaPoly::DeltaPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

DeltaPoly DeltaPoly::delta() { return monomial(1, Rational(1)); }

DeltaPoly DeltaPoly::monomial(unsigned k, const Rational& c) {
  DeltaPoly p;
  if (c.is_zero()) return p;
  p.c_.assign(k + 1, Rational(0));
  p.c_[k] = c;
  return p;
}

void DeltaPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rational& DeltaPoly::coefficient(std::size_t k) const {
  return k < c_.size() ? c_[k] : kZero;
}

const Rational& DeltaPoly::leading() const {
  if (c_.empty()) return kZero;
  return c_.back();
}

DeltaPoly DeltaPoly::operator-() const {
  DeltaPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

DeltaPoly& DeltaPoly::operator+=(const DeltaPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

DeltaPoly& DeltaPoly::operator-=(const DeltaPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

DeltaPoly operator*(const DeltaPoly& a, const DeltaPoly& b) {
  if (a.is_zero() || b.is_zero()) return DeltaPoly();
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out[i + j] += a.c_[i] * b.c_[j];
  }
  return DeltaPoly(std::move(out));
}

DeltaPoly DeltaPoly::scaled(const Rational& c) const {
  if (c.is_zero()) return DeltaPoly();
  DeltaPoly r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

std::pair<DeltaPoly, DeltaPoly> divmod(const DeltaPoly& a, const DeltaPoly& b) {
  if (b.is_zero()) throw Error("DivisionByZero", "polynomial division by zero");
  DeltaPoly rem = a;
  if (a.degree() < b.degree()) return {DeltaPoly(), rem};
  std::vector<Rational> q(a.degree() - b.degree() + 1, Rational(0));
  const Rational lead_inv = b.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const int shift = rem.degree() - b.degree();
    const Rational c = rem.leading() * lead_inv;
    q[shift] = c;
    rem -= b * DeltaPoly::monomial(shift, c);
  }
  return {DeltaPoly(std::move(q)), rem};
}

DeltaPoly exact_div(const DeltaPoly& a, const DeltaPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero())
    throw Error("InexactDivision", "polynomial division left remainder");
  return q;
}

DeltaPoly DeltaPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

DeltaPoly DeltaPoly::derivative() const {
  if (c_.size() <= 1) return DeltaPoly();
  std::vector<Rational> out(c_.size() - 1, Rational(0));
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return DeltaPoly(std::move(out));
}

Rational DeltaPoly::evaluate(const Rational& d) const {
  Rational r(0);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * d + c_[i];
  return r;
}

DeltaPoly DeltaPoly::primitive() const {
  if (is_zero()) return *this;
  mpz_class den_lcm(1), num_gcd(0);
  for (const auto& c : c_) {
    if (c.is_zero()) continue;
    den_lcm = lcm(den_lcm, c.denominator());
  }
  DeltaPoly scaledp = scaled(Rational(mpq_class(den_lcm)));
  for (const auto& c : scaledp.c_) {
    if (c.is_zero()) continue;
    num_gcd = gcd(num_gcd, c.numerator());
  }
  if (num_gcd == 0) num_gcd = 1;
  if (scaledp.leading().sign() < 0) num_gcd = -num_gcd;
  return scaledp.scaled(Rational(mpq_class(mpz_class(1), num_gcd)));
}

std::size_t DeltaPoly::bit_size() const {
  std::size_t s = 0;
  for (const auto& c : c_)
    if (!c.is_zero()) s += c.bit_size();
  return s;
}

std::string DeltaPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    const Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? "-" : "+");
    }
    if (i == 0) {
      os << a.str();
    } else {
      if (!a.is_one()) os << a.str() << "*";
      os << "delta";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

DeltaPoly poly_gcd(DeltaPoly a, DeltaPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

DeltaPoly squarefree_part(const DeltaPoly& p) {
  if (p.degree() <= 0) return p.monic();
  DeltaPoly g = poly_gcd(p, p.derivative());
  return exact_div(p, g).monic();
}

std::vector<Rational> rational_roots(const DeltaPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  DeltaPoly q = squarefree_part(p).primitive();
  // Strip delta^k giving the root 0.
  std::size_t low = 0;
  while (q.coefficient(low).is_zero()) ++low;
  if (low > 0) {
    roots.push_back(Rational(0));
    std::vector<Rational> shifted;
    for (std::size_t i = low; i <= static_cast<std::size_t>(q.degree()); ++i)
      shifted.push_back(q.coefficient(i));
    q = DeltaPoly(std::move(shifted));
  }
  if (q.degree() <= 0) return roots;
  // Rational root theorem on the integer-primitive polynomial.
  auto divisors = [](mpz_class n) {
    std::vector<mpz_class> ds;
    n = abs(n);
    for (mpz_class d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    }
    return ds;
  };
  const auto ps = divisors(q.coefficient(0).numerator());
  const auto qs = divisors(q.leading().numerator());
  for (const auto& pn : ps)
    for (const auto& qd : qs)
      for (int s : {1, -1}) {
        Rational cand(mpq_class(s * pn, qd));
        if (q.evaluate(cand).is_zero() &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<DeltaPoly> report_factors(const DeltaPoly& p) {
  std::vector<DeltaPoly> out;
  if (p.degree() <= 0) return out;
  DeltaPoly q = squarefree_part(p);
  for (const auto& r : rational_roots(q)) {
    DeltaPoly lin = DeltaPoly::delta() - DeltaPoly(r);
    out.push_back(lin);
    q = exact_div(q, lin).monic();
  }
  if (q.degree() >= 1) out.push_back(q.monic());
  return out;
}

}  // namespace dnov
