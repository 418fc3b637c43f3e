// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jenchain/rational.hpp"

namespace jenchain {

/// Exact-rational weights summing to exactly 1.
///
/// The unsigned form (the default) additionally guarantees every entry >= 0;
/// the signed form exists only for internal chain states, which legitimately
/// carry negative entries. Public bound checks reject signed vectors.
class WeightVector {
public:
  static WeightVector normalized(std::vector<Rational> entries);
  static WeightVector signed_state(std::vector<Rational> entries);
  static WeightVector uniform(std::size_t n);

  std::size_t size() const noexcept { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Rational>& entries() const noexcept { return entries_; }
  bool is_signed() const noexcept { return signed_; }

  bool nonnegative() const;
  bool strictly_positive() const;

  std::vector<std::string> to_strings() const;
  static WeightVector from_strings(const std::vector<std::string>& texts, bool allow_signed = false);

private:
  WeightVector(std::vector<Rational> entries, bool is_signed);

  std::vector<Rational> entries_;
  bool signed_ = false;
};

/// Points on the real line, kept as exact rationals so barycenter bookkeeping
/// is exact; conversion to double happens only at function evaluation.
class PointVector {
public:
  explicit PointVector(std::vector<Rational> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  std::vector<std::string> to_strings() const;
  static PointVector from_strings(const std::vector<std::string>& texts);

private:
  std::vector<Rational> entries_;
};

void require_same_length(std::size_t a, std::size_t b, const std::string& what);

}  // namespace jenchain
