#include "delone/rational.hpp"

#include <cctype>
#include <limits>

namespace delone {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DomainError("division by zero");
  BigInt q = a / b;
  BigInt r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

BigInt floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }
BigInt ceil(const Rational& q) { return ceil_div(numerator(q), denominator(q)); }

Rational pow(const Rational& base, std::uint64_t exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of negative number");
  if (n < 2) return n;
  BigInt x = boost::multiprecision::sqrt(n);
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

BigInt ceil_sqrt(const BigInt& n) {
  BigInt s = isqrt(n);
  return s * s == n ? s : s + 1;
}

Rational pow10(int k) {
  BigInt p = 1;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) p *= 10;
  return k < 0 ? Rational(BigInt(1), p) : Rational(p);
}

namespace {

BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw DomainError("empty number");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw DomainError("malformed number '" + std::string(s) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw DomainError("malformed number '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

Rational parse_decimal(std::string_view s) {
  // plain integer or decimal like 0.25
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(parse_integer(s));
  std::string digits(s.substr(0, dot));
  std::string frac(s.substr(dot + 1));
  bool neg = !digits.empty() && digits[0] == '-';
  if (digits.empty() || digits == "-" || digits == "+") digits += "0";
  BigInt whole = parse_integer(digits);
  if (frac.empty()) return Rational(whole);
  BigInt f = parse_integer(frac);
  Rational r = Rational(f) * pow10(-static_cast<int>(frac.size()));
  return neg ? Rational(whole) - r : Rational(whole) + r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    BigInt base = parse_integer(text.substr(0, caret));
    BigInt e = parse_integer(text.substr(caret + 1));
    if (base != 10) throw DomainError("only 10^k powers are accepted");
    return pow10(static_cast<int>(e));
  }
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    Rational mant = parse_decimal(text.substr(0, e));
    BigInt ex = parse_integer(text.substr(e + 1));
    return mant * pow10(static_cast<int>(ex));
  }
  return parse_decimal(text);
}

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::int64_t to_int64(const BigInt& n) {
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw ResourceError("integer " + n.str() + " does not fit in 64 bits");
  return n.convert_to<std::int64_t>();
}

}  // namespace delone
