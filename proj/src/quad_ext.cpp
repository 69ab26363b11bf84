#include "dagas/quad_ext.hpp"

#include <cmath>
#include <ostream>

#include "dagas/errors.hpp"

namespace dagas::exact {

namespace {

bool is_square(const mpz_class& v) { return mpz_perfect_square_p(v.get_mpz_t()) != 0; }

mpz_class isqrt(const mpz_class& v) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

// Splits v > 0 as k²·s, removing square factors of primes below the trial limit.
void split_square(mpz_class v, mpz_class& k, mpz_class& s) {
  k = 1;
  constexpr unsigned long kTrialLimit = 1000000;
  for (unsigned long f = 2; f <= kTrialLimit; f += (f == 2 ? 1 : 2)) {
    const mpz_class ff = mpz_class(f) * f;
    if (ff > v) break;
    while (mpz_divisible_ui_p(v.get_mpz_t(), f * f) != 0) {
      v /= ff;
      k *= f;
    }
  }
  if (is_square(v)) {
    k *= isqrt(v);
    v = 1;
  }
  s = v;
}

}  // namespace

QuadExt::QuadExt(Rational a, Rational b, Rational d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  normalize();
}

void QuadExt::normalize() {
  if (d_.sign() < 0) throw DomainError("negative radicand " + d_.str());
  if (d_.is_zero()) {
    b_ = 0;
    d_ = 1;
    return;
  }
  const mpz_class num = d_.numerator();
  const mpz_class den = d_.denominator();
  if (is_square(num) && is_square(den)) {
    a_ += b_ * Rational(mpq_class(isqrt(num), isqrt(den)));
    b_ = 0;
    d_ = 1;
  }
}

QuadExt QuadExt::sqrt_of(const Rational& r) {
  if (r.sign() < 0) throw DomainError("square root of negative rational " + r.str());
  if (r.is_zero()) return QuadExt(0);
  mpz_class k;
  mpz_class s;
  const mpz_class den = r.denominator();
  split_square(r.numerator() * den, k, s);
  const Rational coeff(mpq_class(k, den));
  if (s == 1) return QuadExt(coeff);
  return QuadExt(0, coeff, Rational(s));
}

const Rational& QuadExt::common_radicand(const QuadExt& o) const {
  if (is_rational()) return o.d_;
  if (o.is_rational() || d_ == o.d_) return d_;
  throw DomainError("mixing radicands " + d_.str() + " and " + o.d_.str());
}

Rational QuadExt::norm() const { return a_ * a_ - b_ * b_ * d_; }

QuadExt QuadExt::inverse() const {
  const Rational n = norm();
  if (n.is_zero()) throw DomainError("inverse of zero in Q(sqrt(" + d_.str() + "))");
  return QuadExt(a_ / n, -b_ / n, d_);
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  d_ = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  d_ = common_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  const Rational d = common_radicand(o);
  const Rational a = a_ * o.a_ + b_ * o.b_ * d;
  const Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) { return *this *= o.inverse(); }

bool operator==(const QuadExt& x, const QuadExt& y) { return (x - y).sign() == 0; }

int QuadExt::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare |a| with |b|·√d through squares.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * d_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

long double QuadExt::to_long_double() const {
  const long double surd = b_.to_long_double() * std::sqrt(d_.to_long_double());
  if (a_.sign() * b_.sign() >= 0) return a_.to_long_double() + surd;
  // Opposite signs cancel; divide the exact norm by the conjugate instead.
  return norm().to_long_double() / (a_.to_long_double() - surd);
}

std::string QuadExt::str() const {
  if (is_rational()) return a_.str();
  std::string out;
  if (!a_.is_zero()) out = a_.str() + (b_.sign() > 0 ? " + " : " - ");
  else if (b_.sign() < 0) out = "-";
  out += abs(b_).str() + "*sqrt(" + d_.str() + ")";
  return out;
}

QuadExt pow(const QuadExt& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  QuadExt result(1);
  QuadExt acc = base;
  while (exponent > 0) {
    if ((exponent & 1) != 0) result *= acc;
    acc *= acc;
    exponent >>= 1;
  }
  return result;
}

QuadExt abs(const QuadExt& v) { return v.sign() < 0 ? -v : v; }

std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.str(); }

}  // namespace dagas::exact
