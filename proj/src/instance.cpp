// SPDX-License-Identifier: MIT
#include "jenchain/instance.hpp"

#include <algorithm>

#include "jenchain/error.hpp"

namespace jenchain {

std::string family_name(Family f) {
  switch (f) {
    case Family::dragomir: return "dragomir";
    case Family::lower6: return "lower6";
    case Family::upper7: return "upper7";
    case Family::reduce8: return "reduce8";
    case Family::reduce9: return "reduce9";
    case Family::thm4: return "thm4";
    case Family::thm5: return "thm5";
  }
  throw ConfigError("unknown family");
}

Family family_from_name(const std::string& name) {
  if (name == "dragomir") return Family::dragomir;
  if (name == "lower6") return Family::lower6;
  if (name == "upper7") return Family::upper7;
  if (name == "reduce8") return Family::reduce8;
  if (name == "reduce9") return Family::reduce9;
  if (name == "thm4") return Family::thm4;
  if (name == "thm5") return Family::thm5;
  throw ParseError("unknown family '" + name + "'");
}

bool family_is_chain(Family f) {
  return f == Family::lower6 || f == Family::upper7 || f == Family::reduce8 || f == Family::reduce9;
}

QSequence Instance::q_sequence() const {
  if (auto_uniform_q) return QSequence::auto_uniform();
  return QSequence::explicit_list(q_seq);
}

namespace {

void validate_shapes(const Instance& inst) {
  const std::size_t n = inst.x.size();
  require_same_length(inst.p.size(), n, "instance " + inst.id);
  for (std::size_t i = 0; i < n; ++i) {
    if (!inst.f.contains(to_double(inst.x[i])))
      throw DomainError("instance " + inst.id + ": x[" + std::to_string(i + 1) +
                        "] outside the function domain");
  }
  if (inst.N < 1) throw ConfigError("instance " + inst.id + ": N must be >= 1");

  auto require_qs = [&](std::size_t count, const char* what) {
    if (inst.q_seq.size() != count)
      throw ConfigError("instance " + inst.id + ": family " + family_name(inst.family) +
                        " needs exactly " + std::to_string(count) + " " + what);
  };

  switch (inst.family) {
    case Family::dragomir:
      require_qs(1, "q vector");
      require_same_length(inst.q_seq[0].size(), n, "instance " + inst.id);
      break;
    case Family::lower6:
    case Family::upper7:
      if (!inst.auto_uniform_q) {
        if (inst.q_seq.size() != static_cast<std::size_t>(inst.N))
          throw ConfigError("instance " + inst.id + ": |q_seq| must equal N");
        for (const auto& q : inst.q_seq) require_same_length(q.size(), n, "instance " + inst.id);
      }
      break;
    case Family::reduce8:
    case Family::reduce9:
      if (!inst.auto_uniform_q) {
        if (inst.q_seq.size() != static_cast<std::size_t>(inst.N))
          throw ConfigError("instance " + inst.id + ": |q_seq| must equal N");
        // Later lengths are data-dependent; the chain checks them per step.
        require_same_length(inst.q_seq[0].size(), n, "instance " + inst.id);
      }
      break;
    case Family::thm4:
      require_qs(2, "weight vectors (beta, gamma)");
      require_same_length(inst.q_seq[0].size(), n, "instance " + inst.id);
      require_same_length(inst.q_seq[1].size(), n, "instance " + inst.id);
      break;
    case Family::thm5:
      require_qs(1, "weight vector (beta)");
      require_same_length(inst.q_seq[0].size(), n, "instance " + inst.id);
      break;
  }
}

}  // namespace

nlohmann::json Instance::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["family"] = family_name(family);
  j["f"] = f.to_json();
  j["x"] = x.to_strings();
  j["p"] = p.to_strings();
  if (auto_uniform_q) {
    j["q_seq"] = "auto-uniform";
  } else {
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& q : q_seq) qs.push_back(q.to_strings());
    j["q_seq"] = qs;
  }
  j["N"] = N;
  return j;
}

Instance Instance::from_json(const nlohmann::json& j) {
  Instance inst;
  inst.id = j.at("id").get<std::string>();
  inst.family = family_from_name(j.at("family").get<std::string>());
  inst.f = ConvexFn::from_json(j.at("f"));
  inst.x = PointVector::from_strings(j.at("x").get<std::vector<std::string>>());
  inst.p = WeightVector::from_strings(j.at("p").get<std::vector<std::string>>());
  const auto& qs = j.at("q_seq");
  if (qs.is_string()) {
    if (qs.get<std::string>() != "auto-uniform")
      throw ParseError("instance " + inst.id + ": q_seq must be a list or \"auto-uniform\"");
    inst.auto_uniform_q = true;
  } else {
    for (const auto& q : qs)
      inst.q_seq.push_back(WeightVector::from_strings(q.get<std::vector<std::string>>()));
  }
  inst.N = j.value("N", 1);
  validate_shapes(inst);
  return inst;
}

RunOutcome run_instance(const Instance& inst) {
  validate_shapes(inst);
  RunOutcome out;
  switch (inst.family) {
    case Family::dragomir: {
      DragomirReport rep = check_dragomir(inst.f, inst.x, inst.p, inst.q_seq[0]);
      out.result = rep.to_json();
      out.pass = rep.ok();
      double lower_margin = rep.J_p - to_double(rep.m) * rep.J_q;
      double upper_margin = to_double(rep.M) * rep.J_q - rep.J_p;
      out.defect = std::min(lower_margin, upper_margin);
      break;
    }
    case Family::lower6:
    case Family::upper7:
    case Family::reduce8:
    case Family::reduce9: {
      ChainResult r;
      if (inst.family == Family::lower6) r = lower_chain(inst.f, inst.x, inst.p, inst.q_sequence(), inst.N);
      if (inst.family == Family::upper7) r = upper_chain(inst.f, inst.x, inst.p, inst.q_sequence(), inst.N);
      if (inst.family == Family::reduce8) r = reduce_lower_chain(inst.f, inst.x, inst.p, inst.q_sequence(), inst.N);
      if (inst.family == Family::reduce9) r = reduce_upper_chain(inst.f, inst.x, inst.p, inst.q_sequence(), inst.N);
      out.result = r.to_json();
      out.pass = r.sign_ok();
      out.defect = r.defect;
      break;
    }
    case Family::thm4: {
      ThreeWeightReport rep = three_weight_bounds(inst.f, inst.x, inst.p, inst.q_seq[0], inst.q_seq[1]);
      out.result = rep.to_json();
      out.pass = rep.ok;
      out.defect = std::min(rep.J_alpha - rep.lower, rep.upper - rep.J_alpha);
      break;
    }
    case Family::thm5: {
      HjBoundsReport rep = hj_correction_bounds(inst.f, inst.x, inst.p, inst.q_seq[0]);
      out.result = rep.to_json();
      out.pass = rep.ok;
      out.defect = std::min(rep.J_alpha - rep.lower, rep.upper - rep.J_alpha);
      break;
    }
  }
  return out;
}

}  // namespace jenchain
