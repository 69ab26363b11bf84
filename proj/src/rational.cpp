#include "dagas/rational.hpp"

#include <cctype>
#include <ostream>

#include "dagas/errors.hpp"

namespace dagas::exact {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const mpz_class num = parse_integer(text.substr(0, slash));
  const mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(num, den));
}

Rational Rational::parse_decimal(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return parse(text);
  std::string digits(text.substr(0, dot));
  const std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+') {
    throw ParseError("malformed decimal '" + std::string(text) + "'");
  }
  const bool negative = !digits.empty() && digits[0] == '-';
  if (digits.empty() || digits == "-" || digits == "+") digits += "0";
  const mpz_class whole = parse_integer(digits);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  const mpz_class part(std::string(frac), 10);
  mpq_class q(whole * scale + (negative ? -part : part), scale);
  return Rational(q);
}

long double Rational::to_long_double() const {
  // Split into integer and fractional parts so large numerators keep precision.
  mpz_class whole = q_.get_num() / q_.get_den();
  mpq_class rest = q_ - mpq_class(whole);
  return static_cast<long double>(whole.get_d()) + static_cast<long double>(rest.get_d());
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(Rational(1) / base, -exponent);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(mpq_class(num, den));
}

Rational abs(const Rational& v) { return v.sign() < 0 ? -v : v; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace dagas::exact
