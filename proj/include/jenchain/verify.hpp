// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "jenchain/chain.hpp"

namespace jenchain {

struct CheckEntry {
  std::string name;
  bool pass = false;
  std::string lhs;   // both sides always recorded so failures are diagnosable
  std::string rhs;
  double tolerance = 0.0;
  double violation = 0.0;
};

struct VerifyReport {
  std::string instance_id;
  std::vector<CheckEntry> checks;
  double worst_violation = 0.0;

  void add(std::string name, bool pass, std::string lhs, std::string rhs, double tolerance,
           double violation);
  void merge(const VerifyReport& other);
  bool all_pass() const;
  const CheckEntry* worst_check() const;

  nlohmann::json to_json() const;
};

/// Per-step identity: sum p_k f(x_k) - e_k * J(f, x_k, q_k) equals
/// sum p_{k+1} f(x_{k+1}). Function values are doubles promoted to exact
/// rationals, so the algebra on top of them is exact and the identity is
/// checked without cancellation noise.
VerifyReport telescoping_check(const ConvexFn& f, const ChainResult& r);

/// Exact rational checks on every state: weight sum 1, constant barycenter,
/// and the sign structure (nonnegative weights on lower chains, a single
/// positive pivot entry from state 2 on for upper chains).
VerifyReport conservation_check(const ChainResult& r);

/// Terminal Jensen application for lower chains: the final weighted f-sum
/// dominates f at the (conserved) barycenter.
VerifyReport final_jensen_check(const ConvexFn& f, const ChainResult& r);

/// Structural laws: trace extremes match the closed form (upper chains),
/// length bookkeeping (reducing chains), and the defect sign claim.
VerifyReport structure_check(const ChainResult& r);

/// All applicable checks for a trace, merged into one report.
VerifyReport verify_all(const ConvexFn& f, const ChainResult& r);

}  // namespace jenchain
