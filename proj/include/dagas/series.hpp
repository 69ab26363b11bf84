#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "dagas/rational.hpp"

namespace dagas::exact {

/// Power series c_0 + c_1 x + … + c_N x^N known modulo x^{N+1}.
///
/// Binary operations truncate to the smaller of the two orders.
class TruncSeries {
 public:
  explicit TruncSeries(std::size_t order) : c_(order + 1) {}
  TruncSeries(std::size_t order, std::initializer_list<Rational> coeffs);
  TruncSeries(std::size_t order, const std::vector<Rational>& coeffs);

  static TruncSeries constant(const Rational& v, std::size_t order);
  /// The series x, truncated at `order`.
  static TruncSeries identity(std::size_t order);

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return c_.at(k); }
  Rational& operator[](std::size_t k) { return c_.at(k); }
  const std::vector<Rational>& coefficients() const { return c_; }

  TruncSeries truncated(std::size_t order) const;
  /// f(x)/x^k for a series whose first k coefficients vanish; the order drops by k.
  TruncSeries divided_by_power(std::size_t k) const;
  /// x^k·f(x), same order.
  TruncSeries shifted(std::size_t k) const;
  /// f(c·x)
  TruncSeries scaled_argument(const Rational& c) const;
  Rational evaluate(const Rational& x) const;
  /// Index of the first nonzero coefficient, or order()+1 for the zero series.
  std::size_t valuation() const;

  TruncSeries operator-() const;
  friend TruncSeries operator+(const TruncSeries& s, const TruncSeries& t);
  friend TruncSeries operator-(const TruncSeries& s, const TruncSeries& t);
  friend TruncSeries operator*(const TruncSeries& s, const TruncSeries& t);
  friend TruncSeries operator*(const Rational& k, const TruncSeries& s);
  /// Requires t(0) ≠ 0.
  friend TruncSeries operator/(const TruncSeries& s, const TruncSeries& t);

  friend bool operator==(const TruncSeries& s, const TruncSeries& t) = default;

 private:
  std::vector<Rational> c_;
};

/// 1/s; requires s(0) ≠ 0.
TruncSeries inverse(const TruncSeries& s);

/// r with r² = s and r(0) = 1, by Newton iteration r ← (r + s/r)/2 with doubling precision.
/// Requires s(0) = 1.
TruncSeries sqrt(const TruncSeries& s);

TruncSeries pow(const TruncSeries& s, unsigned exponent);

std::ostream& operator<<(std::ostream& os, const TruncSeries& s);

}  // namespace dagas::exact
