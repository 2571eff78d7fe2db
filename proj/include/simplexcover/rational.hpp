#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace simplexcover {

using BigInt = boost::multiprecision::cpp_int;
/// Exact rational, always stored reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// num/den, reduced. Throws DivisionByZero when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);
Rational checked_div(const Rational& a, const Rational& b);

BigInt numerator(const Rational& r);
BigInt denominator(const Rational& r);

/// Largest integer <= r.
BigInt floor(const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

/// Exact binomial coefficient C(n, k); zero when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

double to_double(const Rational& r);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and plain decimals such as "-0.125" (converted exactly).
Rational parse_rational(std::string_view text);

}  // namespace simplexcover
