// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace jenchain {

enum class Errc {
  domain_error,
  length_mismatch,
  zero_denominator,
  shape_mismatch,
  invariant_violation,
  config_error,
  parse_error,
  io_error,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(Errc::domain_error, w) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& w) : Error(Errc::length_mismatch, w) {}
};

struct ZeroDenominator : Error {
  explicit ZeroDenominator(const std::string& w) : Error(Errc::zero_denominator, w) {}
};

class ShapeMismatch : public Error {
public:
  ShapeMismatch(int step, const std::string& w) : Error(Errc::shape_mismatch, w), step_(step) {}
  int step() const noexcept { return step_; }

private:
  int step_;
};

struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& w) : Error(Errc::invariant_violation, w) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(Errc::config_error, w) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(Errc::parse_error, w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(Errc::io_error, w) {}
};

// CLI exit code convention: 0 pass, 1 verification failure, 2 usage/config, 3 IO.
inline int exit_code_for(Errc c) noexcept {
  return c == Errc::io_error ? 3 : 2;
}

}  // namespace jenchain
