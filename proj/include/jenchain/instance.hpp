// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jenchain/baseline.hpp"
#include "jenchain/chain.hpp"
#include "jenchain/convex_fn.hpp"
#include "jenchain/reduce.hpp"

namespace jenchain {

enum class Family { dragomir, lower6, upper7, reduce8, reduce9, thm4, thm5 };

std::string family_name(Family f);
Family family_from_name(const std::string& name);
bool family_is_chain(Family f);

/// One complete problem. For the bound families the weight slots are reused:
/// p plays alpha, and q_seq carries beta (thm5) or beta and gamma (thm4).
struct Instance {
  std::string id;
  Family family = Family::dragomir;
  ConvexFn f = ConvexFn::make(FnKind::square, -8.0, 8.0);
  PointVector x = PointVector({Rational(0)});
  WeightVector p = WeightVector::uniform(1);
  std::vector<WeightVector> q_seq;
  bool auto_uniform_q = false;
  int N = 1;

  QSequence q_sequence() const;

  nlohmann::json to_json() const;
  static Instance from_json(const nlohmann::json& j);
};

/// Result of running one instance: the family-specific payload plus the
/// pass/fail of the family's own sign claim.
struct RunOutcome {
  nlohmann::json result;
  bool pass = false;
  double defect = 0.0;   // chain defect, or the tightest bound margin
};

RunOutcome run_instance(const Instance& inst);

}  // namespace jenchain
