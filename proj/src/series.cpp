#include "dagas/series.hpp"

#include <algorithm>
#include <ostream>

#include "dagas/errors.hpp"

namespace dagas::exact {

TruncSeries::TruncSeries(std::size_t order, std::initializer_list<Rational> coeffs)
    : TruncSeries(order, std::vector<Rational>(coeffs)) {}

TruncSeries::TruncSeries(std::size_t order, const std::vector<Rational>& coeffs) : c_(order + 1) {
  for (std::size_t k = 0; k < coeffs.size() && k <= order; ++k) c_[k] = coeffs[k];
}

TruncSeries TruncSeries::constant(const Rational& v, std::size_t order) {
  TruncSeries s(order);
  s.c_[0] = v;
  return s;
}

TruncSeries TruncSeries::identity(std::size_t order) {
  TruncSeries s(order);
  if (order >= 1) s.c_[1] = 1;
  return s;
}

TruncSeries TruncSeries::truncated(std::size_t order) const {
  TruncSeries s(std::min(order, this->order()));
  std::copy_n(c_.begin(), s.c_.size(), s.c_.begin());
  return s;
}

TruncSeries TruncSeries::divided_by_power(std::size_t k) const {
  if (k > order()) throw DomainError("cannot divide a series of order " + std::to_string(order()) +
                                     " by x^" + std::to_string(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (!c_[i].is_zero()) throw DomainError("series is not divisible by x^" + std::to_string(k));
  }
  TruncSeries s(order() - k);
  std::copy(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end(), s.c_.begin());
  return s;
}

TruncSeries TruncSeries::shifted(std::size_t k) const {
  TruncSeries s(order());
  for (std::size_t i = 0; i + k <= order(); ++i) s.c_[i + k] = c_[i];
  return s;
}

TruncSeries TruncSeries::scaled_argument(const Rational& c) const {
  TruncSeries s(order());
  Rational power(1);
  for (std::size_t i = 0; i <= order(); ++i) {
    s.c_[i] = c_[i] * power;
    power *= c;
  }
  return s;
}

Rational TruncSeries::evaluate(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::size_t TruncSeries::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return i;
  }
  return c_.size();
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries s(order());
  for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i] = -c_[i];
  return s;
}

TruncSeries operator+(const TruncSeries& s, const TruncSeries& t) {
  TruncSeries r(std::min(s.order(), t.order()));
  for (std::size_t i = 0; i <= r.order(); ++i) r.c_[i] = s.c_[i] + t.c_[i];
  return r;
}

TruncSeries operator-(const TruncSeries& s, const TruncSeries& t) {
  TruncSeries r(std::min(s.order(), t.order()));
  for (std::size_t i = 0; i <= r.order(); ++i) r.c_[i] = s.c_[i] - t.c_[i];
  return r;
}

TruncSeries operator*(const TruncSeries& s, const TruncSeries& t) {
  TruncSeries r(std::min(s.order(), t.order()));
  for (std::size_t i = 0; i <= r.order(); ++i) {
    if (s.c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= r.order(); ++j) r.c_[i + j] += s.c_[i] * t.c_[j];
  }
  return r;
}

TruncSeries operator*(const Rational& k, const TruncSeries& s) {
  TruncSeries r(s.order());
  for (std::size_t i = 0; i <= s.order(); ++i) r.c_[i] = k * s.c_[i];
  return r;
}

TruncSeries operator/(const TruncSeries& s, const TruncSeries& t) {
  if (t[0].is_zero()) throw DomainError("series division by a series with zero constant term");
  // Long division: q_n = (s_n − Σ_{j<n} q_j t_{n−j}) / t_0.
  TruncSeries q(std::min(s.order(), t.order()));
  for (std::size_t n = 0; n <= q.order(); ++n) {
    Rational acc = s[n];
    for (std::size_t j = 0; j < n; ++j) acc -= q[j] * t[n - j];
    q[n] = acc / t[0];
  }
  return q;
}

TruncSeries inverse(const TruncSeries& s) { return TruncSeries::constant(1, s.order()) / s; }

TruncSeries sqrt(const TruncSeries& s) {
  if (s[0] != Rational(1)) throw DomainError("series square root needs constant term 1, got " + s[0].str());
  TruncSeries r = TruncSeries::constant(1, 0);
  std::size_t precision = 0;
  const Rational half(1, 2);
  while (precision < s.order()) {
    precision = std::min(2 * precision + 1, s.order());
    TruncSeries lifted(precision, r.coefficients());
    r = half * (lifted + s.truncated(precision) / lifted);
  }
  return TruncSeries(s.order(), r.coefficients());
}

TruncSeries pow(const TruncSeries& s, unsigned exponent) {
  TruncSeries result = TruncSeries::constant(1, s.order());
  TruncSeries acc = s;
  while (exponent > 0) {
    if ((exponent & 1U) != 0) result = result * acc;
    acc = acc * acc;
    exponent >>= 1U;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const TruncSeries& s) {
  os << '[';
  for (std::size_t i = 0; i <= s.order(); ++i) os << (i ? ", " : "") << s[i];
  return os << "] + O(x^" << s.order() + 1 << ')';
}

}  // namespace dagas::exact
