#pragma once

#include <iosfwd>
#include <string>

#include "dagas/rational.hpp"

namespace dagas::exact {

/// Element a + b·√d of the quadratic extension Q(√d).
///
/// The radicand d is carried by every element; elements combine only when
/// their radicands agree. A purely rational element (b = 0) is compatible
/// with any radicand and adopts the other operand's. When d is a perfect
/// square (normalized to 1) the surd part is folded into a, so the type never
/// holds zero divisors.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(int a) : a_(a) {}                  // NOLINT(google-explicit-constructor)
  QuadExt(Rational a, Rational b, Rational d);

  /// √r with the radicand normalized: √(n/m) = (k/m)·√s where n·m = k²·s and
  /// s carries no square factor found by trial division up to 10^6.
  static QuadExt sqrt_of(const Rational& r);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& d() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }

  QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }
  /// a² − b²d
  Rational norm() const;
  QuadExt inverse() const;

  int sign() const;
  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }
  std::string str() const;

  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  /// Exact equality; radicands must be compatible.
  friend bool operator==(const QuadExt& x, const QuadExt& y);
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) { return !(y < x); }

 private:
  void normalize();
  const Rational& common_radicand(const QuadExt& o) const;

  Rational a_{0};
  Rational b_{0};
  Rational d_{1};
};

QuadExt pow(const QuadExt& base, long exponent);
QuadExt abs(const QuadExt& v);

std::ostream& operator<<(std::ostream& os, const QuadExt& q);

}  // namespace dagas::exact
