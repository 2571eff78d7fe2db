#include "simplexcover/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "simplexcover/errors.hpp"

namespace simplexcover {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero();
  return Rational(num, den);
}

Rational checked_div(const Rational& a, const Rational& b) {
  if (b == 0) throw DivisionByZero();
  return a / b;
}

BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }

BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

BigInt floor(const Rational& r) {
  const BigInt n = numerator(r);
  const BigInt d = denominator(r);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  const BigInt d = denominator(r);
  if (d == 1) return numerator(r).str();
  return numerator(r).str() + "/" + d.str();
}

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("bad integer: " + std::string(text));
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k])))
      throw std::invalid_argument("bad integer: " + std::string(text));
  }
  // cpp_int reads a leading 0 as octal
  while (i + 1 < text.size() && text[i] == '0') ++i;
  BigInt value(std::string(text.substr(i)));
  return text[0] == '-' ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    const std::string_view frac = text.substr(dot + 1);
    digits += frac;
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return make_rational(parse_integer(digits), scale);
  }
  return Rational(parse_integer(text));
}

}  // namespace simplexcover
