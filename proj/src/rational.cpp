// SPDX-License-Identifier: MIT
#include "jenchain/rational.hpp"

#include <cctype>
#include <cmath>

#include "jenchain/error.hpp"

namespace jenchain {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// cpp_int's string constructor reads a leading 0 as an octal prefix; strip it.
BigInt bigint_from_digits(const std::string& s) {
  std::size_t first = s.find_first_not_of('0');
  if (first == std::string::npos) return BigInt(0);
  return BigInt(s.substr(first));
}

BigInt pow_bigint(BigInt base, unsigned exp) {
  BigInt r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("cannot represent non-finite double as rational");
  // Decompose v = mant * 2^exp with integer mant.
  int exp = 0;
  double mant = std::frexp(v, &exp);
  for (int i = 0; i < 64 && mant != std::floor(mant); ++i) {
    mant *= 2.0;
    --exp;
  }
  BigInt num(static_cast<long long>(mant));
  if (exp >= 0) return Rational(num * pow_bigint(2, static_cast<unsigned>(exp)), 1);
  return Rational(num, pow_bigint(2, static_cast<unsigned>(-exp)));
}

Rational parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw ParseError("empty rational literal");
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw ParseError("bare sign in rational literal '" + text + "'");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed fraction '" + text + "'");
    BigInt d = bigint_from_digits(den);
    if (d == 0) throw ZeroDenominator("zero denominator in '" + text + "'");
    Rational r(bigint_from_digits(num), d);
    return negative ? -r : r;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    if (!all_digits(whole) || !all_digits(frac))
      throw ParseError("malformed decimal '" + text + "'");
    BigInt scale = pow_bigint(10, static_cast<unsigned>(frac.size()));
    Rational r(bigint_from_digits(whole) * scale + bigint_from_digits(frac), scale);
    return negative ? -r : r;
  }

  if (!all_digits(s)) throw ParseError("malformed rational '" + text + "'");
  Rational r(bigint_from_digits(s));
  return negative ? -r : r;
}

std::string format_rational(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_point(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();

  // Extract factors of 2 and 5 from the denominator.
  BigInt rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  unsigned digits = twos > fives ? twos : fives;
  if (rest != 1 || digits > 64) return format_rational(r);

  BigInt scaled = abs(num) * pow_bigint(2, digits - twos) * pow_bigint(5, digits - fives);
  std::string body = scaled.str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  // Trim trailing zeros but keep at least one fractional digit.
  while (body.back() == '0' && body[body.size() - 2] != '.') body.pop_back();
  return (num < 0 ? "-" : "") + body;
}

std::vector<Rational> parse_rational_list(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_rational(t));
  return out;
}

}  // namespace jenchain
