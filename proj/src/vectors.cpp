// SPDX-License-Identifier: MIT
#include "jenchain/vectors.hpp"

#include "jenchain/error.hpp"

namespace jenchain {

WeightVector::WeightVector(std::vector<Rational> entries, bool is_signed)
    : entries_(std::move(entries)), signed_(is_signed) {
  if (entries_.empty()) throw InvariantViolation("weight vector must have length >= 1");
  Rational sum = 0;
  for (const auto& e : entries_) sum += e;
  if (sum != 1) throw InvariantViolation("weights must sum to exactly 1, got " + format_rational(sum));
  if (!signed_) {
    for (const auto& e : entries_) {
      if (e < 0) throw InvariantViolation("unsigned weight vector has negative entry " + format_rational(e));
    }
  }
}

WeightVector WeightVector::normalized(std::vector<Rational> entries) {
  return WeightVector(std::move(entries), false);
}

WeightVector WeightVector::signed_state(std::vector<Rational> entries) {
  return WeightVector(std::move(entries), true);
}

WeightVector WeightVector::uniform(std::size_t n) {
  if (n == 0) throw InvariantViolation("weight vector must have length >= 1");
  std::vector<Rational> e(n, Rational(1, static_cast<long long>(n)));
  return WeightVector(std::move(e), false);
}

bool WeightVector::nonnegative() const {
  for (const auto& e : entries_)
    if (e < 0) return false;
  return true;
}

bool WeightVector::strictly_positive() const {
  for (const auto& e : entries_)
    if (e <= 0) return false;
  return true;
}

std::vector<std::string> WeightVector::to_strings() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(format_rational(e));
  return out;
}

WeightVector WeightVector::from_strings(const std::vector<std::string>& texts, bool allow_signed) {
  auto entries = parse_rational_list(texts);
  return allow_signed ? signed_state(std::move(entries)) : normalized(std::move(entries));
}

PointVector::PointVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvariantViolation("point vector must have length >= 1");
}

std::vector<std::string> PointVector::to_strings() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(format_point(e));
  return out;
}

PointVector PointVector::from_strings(const std::vector<std::string>& texts) {
  return PointVector(parse_rational_list(texts));
}

void require_same_length(std::size_t a, std::size_t b, const std::string& what) {
  if (a != b)
    throw LengthMismatch(what + ": lengths " + std::to_string(a) + " and " + std::to_string(b) +
                         " differ");
}

}  // namespace jenchain
