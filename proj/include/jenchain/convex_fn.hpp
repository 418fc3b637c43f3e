// SPDX-License-Identifier: MIT
#pragma once

#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace jenchain {

enum class FnKind {
  square,
  absolute,
  exponential,
  fourth_power,
  neg_log,
  piecewise_linear,
};

std::string fn_kind_name(FnKind k);
FnKind fn_kind_from_name(const std::string& name);

struct Breakpoint {
  double x = 0.0;
  double y = 0.0;
};

/// A convex function on a half-open real interval [a, b), b possibly +inf.
///
/// The catalog is closed so instances serialize and fuzz runs replay exactly.
/// Piecewise-linear entries may be constructed with non-convex breakpoints;
/// check_convexity is the authority on whether an entry is actually convex.
class ConvexFn {
public:
  static ConvexFn make(FnKind kind, double a, double b);
  // Domain defaults to [first breakpoint, last breakpoint).
  static ConvexFn piecewise(std::vector<Breakpoint> bps);
  static ConvexFn piecewise(std::vector<Breakpoint> bps, double a, double b);

  FnKind kind() const noexcept { return kind_; }
  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }
  bool unbounded_above() const noexcept { return b_ == std::numeric_limits<double>::infinity(); }
  const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }

  bool contains(double x) const noexcept { return x >= a_ && x < b_; }
  double eval(double x) const;

  nlohmann::json to_json() const;
  static ConvexFn from_json(const nlohmann::json& j);

private:
  ConvexFn(FnKind kind, double a, double b, std::vector<Breakpoint> bps);

  FnKind kind_;
  double a_;
  double b_;
  std::vector<Breakpoint> breakpoints_;
};

/// Midpoint-convexity sampling check on a bounded window of the domain.
/// Unbounded domains are clipped to [a, a + 1e6] before sampling.
bool check_convexity(const ConvexFn& f, int grid_size);

}  // namespace jenchain
