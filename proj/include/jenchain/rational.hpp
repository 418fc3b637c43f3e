// SPDX-License-Identifier: MIT
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace jenchain {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact rational value of a finite double (every finite double is a binary rational).
Rational rational_from_double(double v);

// Accepts "num/den", plain integers, and terminating decimals ("-1.25").
Rational parse_rational(const std::string& text);

// Canonical "num/den"; integers render without the "/1".
std::string format_rational(const Rational& r);

// Decimal string when the denominator is of the form 2^a 5^b (exact expansion,
// capped at 64 fractional digits), otherwise falls back to "num/den".
std::string format_point(const Rational& r);

std::vector<Rational> parse_rational_list(const std::vector<std::string>& texts);

}  // namespace jenchain
