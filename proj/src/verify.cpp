// SPDX-License-Identifier: MIT
#include "jenchain/verify.hpp"

#include <cmath>

#include "chain_detail.hpp"
#include "jenchain/error.hpp"

namespace jenchain {

void VerifyReport::add(std::string name, bool pass, std::string lhs, std::string rhs,
                       double tolerance, double violation) {
  if (violation > worst_violation) worst_violation = violation;
  checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs), tolerance, violation});
}

void VerifyReport::merge(const VerifyReport& other) {
  for (const auto& c : other.checks) checks.push_back(c);
  if (other.worst_violation > worst_violation) worst_violation = other.worst_violation;
}

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckEntry* VerifyReport::worst_check() const {
  const CheckEntry* worst = nullptr;
  for (const auto& c : checks) {
    if (!c.pass && (worst == nullptr || c.violation > worst->violation)) worst = &c;
  }
  return worst;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"lhs", c.lhs},
                   {"rhs", c.rhs},
                   {"tol", c.tolerance},
                   {"violation", c.violation}});
  }
  return nlohmann::json{{"id", instance_id},
                        {"pass", all_pass()},
                        {"worst_violation", worst_violation},
                        {"checks", arr}};
}

namespace {

std::string step_tag(const char* base, int k) { return std::string(base) + "_" + std::to_string(k); }

// f applied to a rational point, promoted back to an exact rational.
Rational f_exact(const ConvexFn& f, const Rational& x) {
  return rational_from_double(f.eval(to_double(x)));
}

}  // namespace

VerifyReport telescoping_check(const ConvexFn& f, const ChainResult& r) {
  VerifyReport rep;
  for (std::size_t k = 0; k + 1 < r.trace.size(); ++k) {
    const ChainState& cur = r.trace[k];
    const ChainState& nxt = r.trace[k + 1];
    if (!cur.q.has_value() || !cur.extreme.has_value()) {
      rep.add(step_tag("telescoping", cur.k), false, "missing q/extreme", "", 0.0, 0.0);
      continue;
    }
    const auto& q = *cur.q;
    Rational sum_pf = 0, sum_qf = 0, bary_q = 0;
    for (std::size_t i = 0; i < cur.p.size(); ++i) {
      Rational fi = f_exact(f, cur.x[i]);
      sum_pf += cur.p[i] * fi;
      sum_qf += q[i] * fi;
      bary_q += q[i] * cur.x[i];
    }
    Rational lhs = sum_pf - *cur.extreme * (sum_qf - f_exact(f, bary_q));
    Rational rhs = 0;
    for (std::size_t i = 0; i < nxt.p.size(); ++i) rhs += nxt.p[i] * f_exact(f, nxt.x[i]);

    double lhs_d = to_double(lhs);
    double rhs_d = to_double(rhs);
    double scale = 1.0 + std::fabs(lhs_d) + std::fabs(rhs_d);
    double viol = std::fabs(to_double(lhs - rhs)) / scale;
    rep.add(step_tag("telescoping", cur.k), viol <= 1e-12, std::to_string(lhs_d),
            std::to_string(rhs_d), 1e-12, viol);
  }
  return rep;
}

VerifyReport conservation_check(const ChainResult& r) {
  VerifyReport rep;
  if (r.trace.empty()) {
    rep.add("trace_nonempty", false, "0 states", "", 0.0, 0.0);
    return rep;
  }
  const Rational bary0 = detail::weighted_point_sum(r.trace.front().p, r.trace.front().x);

  for (const ChainState& st : r.trace) {
    Rational sum = detail::entry_sum(st.p);
    bool sum_ok = sum == 1;
    rep.add(step_tag("weight_sum", st.k), sum_ok, format_rational(sum), "1", 0.0,
            sum_ok ? 0.0 : std::fabs(to_double(sum - 1)));

    Rational bary = detail::weighted_point_sum(st.p, st.x);
    bool bary_ok = bary == bary0;
    rep.add(step_tag("barycenter", st.k), bary_ok, format_rational(bary), format_rational(bary0),
            0.0, bary_ok ? 0.0 : std::fabs(to_double(bary - bary0)));

    if (r.kind == ChainKind::lower) {
      bool nonneg = true;
      for (const auto& w : st.p) {
        if (w < 0) nonneg = false;
      }
      rep.add(step_tag("nonnegative_weights", st.k), nonneg, nonneg ? "all >= 0" : "negative entry",
              "p >= 0", 0.0, nonneg ? 0.0 : 1.0);
    } else if (st.k >= 2) {
      // From state 2 on, the pivot holds the only positive weight.
      int positives = 0;
      bool pivot_positive = false;
      for (std::size_t i = 0; i < st.p.size(); ++i) {
        if (st.p[i] > 0) {
          ++positives;
          if (st.pivot.has_value() && static_cast<std::size_t>(*st.pivot) == i) pivot_positive = true;
        }
      }
      bool ok = positives == 1 && (st.pivot.has_value() ? pivot_positive : true);
      rep.add(step_tag("single_positive_pivot", st.k), ok, std::to_string(positives) + " positive",
              "1 positive at pivot", 0.0, ok ? 0.0 : 1.0);
    }
  }
  return rep;
}

VerifyReport final_jensen_check(const ConvexFn& f, const ChainResult& r) {
  VerifyReport rep;
  if (r.kind != ChainKind::lower)
    throw ConfigError("final_jensen_check applies to lower-chain traces");
  if (r.trace.empty()) {
    rep.add("final_jensen", false, "empty trace", "", 0.0, 0.0);
    return rep;
  }
  const ChainState& last = r.trace.back();
  Rational sum_pf = 0;
  for (std::size_t i = 0; i < last.p.size(); ++i) sum_pf += last.p[i] * f_exact(f, last.x[i]);
  Rational bary = detail::weighted_point_sum(last.p, last.x);
  double lhs = to_double(sum_pf);
  double rhs = f.eval(to_double(bary));
  double tol = 1e-9 * (1.0 + std::fabs(lhs) + std::fabs(rhs));
  bool ok = lhs >= rhs - tol;
  rep.add("final_jensen", ok, std::to_string(lhs), std::to_string(rhs), tol,
          ok ? 0.0 : (rhs - lhs) / (1.0 + std::fabs(lhs) + std::fabs(rhs)));
  return rep;
}

VerifyReport structure_check(const ChainResult& r) {
  VerifyReport rep;

  // Defect sign claim: lower chains stay >= -tol, upper chains <= +tol.
  {
    double tol = 1e-9 * r.defect_scale;
    bool ok = r.sign_ok();
    double viol = ok ? 0.0
                     : (r.kind == ChainKind::lower ? -r.defect - tol : r.defect - tol) /
                           r.defect_scale;
    rep.add("defect_sign", ok, std::to_string(r.defect),
            r.kind == ChainKind::lower ? ">= -tol" : "<= +tol", tol, viol);
  }

  // Upper chains: every trace extreme equals its closed form, exactly.
  if (r.kind == ChainKind::upper) {
    if (!r.pivot_j1.has_value()) {
      rep.add("closed_form_Mk", false, "missing pivot", "", 0.0, 0.0);
    } else {
      Rational prod = 1;
      bool all_ok = true;
      const ChainState& first = r.trace.front();
      Rational p1_pivot = first.p[static_cast<std::size_t>(*r.pivot_j1)];
      for (std::size_t k = 0; k < r.extremes.size(); ++k) {
        const ChainState& st = r.trace[k];
        if (!st.q.has_value() || !st.pivot.has_value()) {
          all_ok = false;
          break;
        }
        prod *= (*st.q)[static_cast<std::size_t>(*st.pivot)];
        Rational expected = p1_pivot / prod;
        if (r.extremes[k] != expected) {
          rep.add(step_tag("closed_form_Mk", st.k), false, format_rational(r.extremes[k]),
                  format_rational(expected), 0.0, 1.0);
          all_ok = false;
        }
      }
      if (all_ok) rep.add("closed_form_Mk", true, "trace extremes", "closed form", 0.0, 0.0);
    }
  }

  if (r.variant == ChainVariant::reduce) {
    if (r.kind == ChainKind::lower) {
      // Length law: n_{k+1} = n_k - s_k + 1.
      bool ok = true;
      for (std::size_t k = 0; k + 1 < r.trace.size(); ++k) {
        const ChainState& st = r.trace[k];
        if (!st.multiplicity.has_value() ||
            r.trace[k + 1].n() != st.n() - static_cast<std::size_t>(*st.multiplicity) + 1) {
          rep.add(step_tag("n_decrement", st.k), false, std::to_string(r.trace[k + 1].n()),
                  std::to_string(st.n()) + " - s + 1", 0.0, 1.0);
          ok = false;
        }
      }
      if (ok) rep.add("n_decrement", true, "n_{k+1}", "n_k - s_k + 1", 0.0, 0.0);
    } else {
      // Stabilization: the length is constant from state 2 on.
      bool ok = true;
      for (std::size_t k = 2; k < r.trace.size(); ++k) {
        if (r.trace[k].n() != r.trace[1].n()) {
          rep.add(step_tag("n_stabilization", r.trace[k].k), false,
                  std::to_string(r.trace[k].n()), std::to_string(r.trace[1].n()), 0.0, 1.0);
          ok = false;
        }
      }
      if (ok) rep.add("n_stabilization", true, "n_k", "n_2", 0.0, 0.0);
    }
  } else {
    // Non-reducing chains keep their length.
    bool ok = true;
    for (const auto& st : r.trace) ok = ok && st.n() == r.trace.front().n();
    rep.add("n_constant", ok, "state lengths", "n_1", 0.0, ok ? 0.0 : 1.0);
  }

  return rep;
}

VerifyReport verify_all(const ConvexFn& f, const ChainResult& r) {
  VerifyReport rep;
  rep.merge(conservation_check(r));
  rep.merge(telescoping_check(f, r));
  rep.merge(structure_check(r));
  if (r.kind == ChainKind::lower) rep.merge(final_jensen_check(f, r));
  return rep;
}

}  // namespace jenchain
