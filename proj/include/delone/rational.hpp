#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace delone {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an operation's documented precondition does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a requested materialization would exceed the configured cell cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);

/// Exact power with a non-negative integer exponent.
Rational pow(const Rational& base, std::uint64_t exponent);

/// Largest s with s*s <= n (n >= 0).
BigInt isqrt(const BigInt& n);
/// Smallest s with s*s >= n (n >= 0).
BigInt ceil_sqrt(const BigInt& n);

/// Parses "a", "a/b", "-a/b" and scientific shorthands "1e-4" / "10^-4".
Rational parse_rational(std::string_view text);
/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& n);
double to_double(const Rational& q);

/// 10^k as a rational, k may be negative.
Rational pow10(int k);

std::int64_t to_int64(const BigInt& n);

}  // namespace delone
