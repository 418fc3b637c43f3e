// SPDX-License-Identifier: MIT
#include "jenchain/chain.hpp"

#include <cmath>

#include "chain_detail.hpp"
#include "jenchain/error.hpp"

namespace jenchain {

using detail::scan_ratios;
using detail::weighted_point_sum;

std::string chain_kind_name(ChainKind k) { return k == ChainKind::lower ? "lower" : "upper"; }

ChainKind chain_kind_from_name(const std::string& name) {
  if (name == "lower") return ChainKind::lower;
  if (name == "upper") return ChainKind::upper;
  throw ParseError("unknown chain kind '" + name + "'");
}

// ---------------------------------------------------------------------------
// QSequence

QSequence QSequence::explicit_list(std::vector<WeightVector> qs) {
  QSequence s(Mode::explicit_list);
  s.list_ = std::move(qs);
  return s;
}

QSequence QSequence::auto_uniform() { return QSequence(Mode::auto_uniform); }

QSequence QSequence::generated(std::function<WeightVector(int, std::size_t)> gen) {
  QSequence s(Mode::generated);
  s.gen_ = std::move(gen);
  return s;
}

WeightVector QSequence::at(int step, std::size_t n) const {
  switch (mode_) {
    case Mode::explicit_list: {
      if (step < 1 || static_cast<std::size_t>(step) > list_.size())
        throw ShapeMismatch(step, "q-sequence has no entry for step " + std::to_string(step));
      const WeightVector& q = list_[static_cast<std::size_t>(step) - 1];
      if (q.size() != n)
        throw ShapeMismatch(step, "q for step " + std::to_string(step) + " has length " +
                                      std::to_string(q.size()) + ", chain state needs " +
                                      std::to_string(n));
      return q;
    }
    case Mode::auto_uniform: return WeightVector::uniform(n);
    case Mode::generated: {
      auto it = memo_.find(step);
      if (it != memo_.end()) {
        if (it->second.size() != n)
          throw ShapeMismatch(step, "q for step " + std::to_string(step) +
                                        " was drawn with a different length");
        return it->second;
      }
      WeightVector q = gen_(step, n);
      require_same_length(q.size(), n, "generated q-sequence");
      memo_.emplace(step, q);
      return q;
    }
  }
  throw ConfigError("invalid q-sequence mode");
}

// ---------------------------------------------------------------------------
// Steps

StepOutcome lower_step(const ChainState& state, const WeightVector& q_next) {
  auto scan = scan_ratios(state.p, q_next, "lower_step");
  const Rational& m = scan.min;
  const auto s = static_cast<long long>(scan.argmin.size());
  Rational bary = weighted_point_sum(q_next.entries(), state.x);
  Rational replacement = m / s;

  StepOutcome out;
  out.extreme = m;
  out.multiplicity = static_cast<int>(s);
  out.next.k = state.k + 1;
  out.next.p.resize(state.p.size());
  out.next.x.resize(state.x.size());
  std::size_t tied = 0;
  for (std::size_t i = 0; i < state.p.size(); ++i) {
    bool is_tied = tied < scan.argmin.size() && scan.argmin[tied] == i;
    if (is_tied) {
      ++tied;
      out.next.p[i] = replacement;
      out.next.x[i] = bary;
    } else {
      out.next.p[i] = state.p[i] - m * q_next[i];
      out.next.x[i] = state.x[i];
    }
  }
  return out;
}

StepOutcome upper_step(const ChainState& state, const WeightVector& q_next) {
  if (!state.pivot.has_value()) throw ConfigError("upper_step: state carries no pivot");
  auto scan = scan_ratios(state.p, q_next, "upper_step");
  const auto j = static_cast<std::size_t>(*state.pivot);
  if (j >= state.p.size()) throw ConfigError("upper_step: pivot out of range");
  Rational M = state.p[j] / q_next[j];
  if (M != scan.max)
    throw InvariantViolation("upper_step: pivot no longer attains the maximum ratio");
  Rational bary = weighted_point_sum(q_next.entries(), state.x);

  StepOutcome out;
  out.extreme = M;
  out.pivot = static_cast<int>(j);
  out.next.k = state.k + 1;
  out.next.p.resize(state.p.size());
  out.next.x.resize(state.x.size());
  for (std::size_t i = 0; i < state.p.size(); ++i) {
    if (i == j) {
      out.next.p[i] = M;
      out.next.x[i] = bary;
    } else {
      out.next.p[i] = state.p[i] - M * q_next[i];
      out.next.x[i] = state.x[i];
    }
  }
  out.next.pivot = static_cast<int>(j);
  return out;
}

// ---------------------------------------------------------------------------
// Chains

namespace {

void validate_chain_inputs(const PointVector& x1, const WeightVector& p1, const QSequence& qs,
                           int N, const char* who) {
  if (N < 1) throw ConfigError(std::string(who) + ": N must be >= 1");
  require_same_length(x1.size(), p1.size(), who);
  if (p1.is_signed() || !p1.nonnegative())
    throw InvariantViolation(std::string(who) + ": initial weights must be nonnegative");
  if (qs.is_explicit() && qs.explicit_count() != static_cast<std::size_t>(N))
    throw LengthMismatch(std::string(who) + ": q-sequence has " +
                         std::to_string(qs.explicit_count()) + " entries, N = " + std::to_string(N));
}

// Fixed-length (non-reducing) chains: every q must match the instance length.
void validate_refine_shapes(const QSequence& qs, std::size_t n, const char* who) {
  if (!qs.is_explicit()) return;
  for (std::size_t k = 0; k < qs.explicit_count(); ++k) {
    if (qs.list()[k].size() != n)
      throw LengthMismatch(std::string(who) + ": q for step " + std::to_string(k + 1) +
                           " has length " + std::to_string(qs.list()[k].size()) + ", expected " +
                           std::to_string(n));
  }
}

void finish_result(ChainResult& r, double initial_magnitude,
                   const std::vector<double>& step_magnitudes) {
  r.defect = r.initial_functional;
  r.defect_scale = 1.0 + initial_magnitude;
  for (std::size_t k = 0; k < r.extremes.size(); ++k) {
    double e = std::fabs(to_double(r.extremes[k]));
    r.defect -= to_double(r.extremes[k]) * r.step_functionals[k];
    r.defect_scale += e * step_magnitudes[k];
  }
  r.steps_done = static_cast<int>(r.extremes.size());
  r.n_seq.clear();
  for (const auto& st : r.trace) r.n_seq.push_back(static_cast<int>(st.n()));
}

}  // namespace

ChainResult lower_chain(const ConvexFn& f, const PointVector& x1, const WeightVector& p1,
                        const QSequence& qs, int N) {
  validate_chain_inputs(x1, p1, qs, N, "lower_chain");
  validate_refine_shapes(qs, p1.size(), "lower_chain");

  ChainResult r;
  r.kind = ChainKind::lower;
  r.variant = ChainVariant::refine;
  r.requested_steps = N;
  detail::FunctionalEval initial = detail::eval_functional(f, x1.entries(), p1.entries());
  r.initial_functional = initial.value;
  std::vector<double> step_magnitudes;

  ChainState cur;
  cur.k = 1;
  cur.p = p1.entries();
  cur.x = x1.entries();
  const Rational bary0 = weighted_point_sum(cur.p, cur.x);

  for (int k = 1; k <= N; ++k) {
    WeightVector q = qs.at(k, cur.n());
    detail::FunctionalEval fe = detail::eval_functional(f, cur.x, q.entries());
    double Jk = fe.value;
    step_magnitudes.push_back(fe.magnitude);
    StepOutcome step = lower_step(cur, q);

    if (step.extreme == 0) r.stall_steps.push_back(k);
    ChainState recorded = cur;
    recorded.q = q.entries();
    recorded.extreme = step.extreme;
    recorded.multiplicity = step.multiplicity;
    r.trace.push_back(std::move(recorded));
    r.extremes.push_back(step.extreme);
    r.step_functionals.push_back(Jk);

    cur = std::move(step.next);
    detail::check_conserved(cur.p, cur.x, bary0, k, "lower_chain");
    for (const auto& w : cur.p) {
      if (w < 0) throw InvariantViolation("lower_chain: negative weight after step " + std::to_string(k));
    }
  }
  r.trace.push_back(cur);
  finish_result(r, initial.magnitude, step_magnitudes);
  return r;
}

ChainResult upper_chain(const ConvexFn& f, const PointVector& x1, const WeightVector& p1,
                        const QSequence& qs, int N) {
  validate_chain_inputs(x1, p1, qs, N, "upper_chain");
  validate_refine_shapes(qs, p1.size(), "upper_chain");

  ChainResult r;
  r.kind = ChainKind::upper;
  r.variant = ChainVariant::refine;
  r.requested_steps = N;
  detail::FunctionalEval initial = detail::eval_functional(f, x1.entries(), p1.entries());
  r.initial_functional = initial.value;
  std::vector<double> step_magnitudes;

  ChainState cur;
  cur.k = 1;
  cur.p = p1.entries();
  cur.x = x1.entries();
  const Rational bary0 = weighted_point_sum(cur.p, cur.x);

  // The pivot is fixed at step 1: smallest index attaining the maximum ratio.
  {
    WeightVector q1 = qs.at(1, cur.n());
    auto scan = scan_ratios(cur.p, q1, "upper_chain");
    cur.pivot = static_cast<int>(scan.argmax.front());
  }
  r.pivot_j1 = cur.pivot;

  // Closed-form tracking: M_k = p1[j] / prod_{m<=k} q_m[j].
  Rational pivot_q_product = 1;
  const Rational p1_pivot = cur.p[static_cast<std::size_t>(*cur.pivot)];

  for (int k = 1; k <= N; ++k) {
    WeightVector q = qs.at(k, cur.n());
    detail::FunctionalEval fe = detail::eval_functional(f, cur.x, q.entries());
    double Jk = fe.value;
    step_magnitudes.push_back(fe.magnitude);
    StepOutcome step = upper_step(cur, q);

    pivot_q_product *= q[static_cast<std::size_t>(*cur.pivot)];
    if (step.extreme != p1_pivot / pivot_q_product)
      throw InvariantViolation("upper_chain: extreme ratio diverged from its closed form at step " +
                               std::to_string(k));

    ChainState recorded = cur;
    recorded.q = q.entries();
    recorded.extreme = step.extreme;
    r.trace.push_back(std::move(recorded));
    r.extremes.push_back(step.extreme);
    r.step_functionals.push_back(Jk);

    cur = std::move(step.next);
    detail::check_conserved(cur.p, cur.x, bary0, k, "upper_chain");
  }
  r.trace.push_back(cur);
  finish_result(r, initial.magnitude, step_magnitudes);
  return r;
}

Rational closed_form_Mk(const WeightVector& p1, const std::vector<WeightVector>& qs,
                        std::size_t j1, int k) {
  if (j1 >= p1.size()) throw ConfigError("closed_form_Mk: pivot out of range");
  if (k < 1 || static_cast<std::size_t>(k) > qs.size())
    throw ConfigError("closed_form_Mk: step out of range");
  Rational prod = 1;
  for (int m = 1; m <= k; ++m) {
    const WeightVector& q = qs[static_cast<std::size_t>(m) - 1];
    if (j1 >= q.size()) throw ConfigError("closed_form_Mk: pivot out of range for q");
    prod *= q[j1];
  }
  return p1[j1] / prod;
}

bool ChainResult::sign_ok(double tol_factor) const {
  double tol = tol_factor * defect_scale;
  return kind == ChainKind::lower ? defect >= -tol : defect <= tol;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json rationals_to_json(const std::vector<Rational>& v, bool as_points) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : v) a.push_back(as_points ? format_point(r) : format_rational(r));
  return a;
}

std::vector<Rational> rationals_from_json(const nlohmann::json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(parse_rational(e.get<std::string>()));
  return out;
}

}  // namespace

nlohmann::json ChainState::to_json(ChainKind kind) const {
  nlohmann::json j;
  j["k"] = k;
  j["p"] = rationals_to_json(p, false);
  j["x"] = rationals_to_json(x, true);
  if (q.has_value()) j["q"] = rationals_to_json(*q, false);
  if (extreme.has_value()) j["extreme"] = format_rational(*extreme);
  if (kind == ChainKind::lower && multiplicity.has_value()) j["s"] = *multiplicity;
  if (kind == ChainKind::upper && pivot.has_value()) j["j"] = *pivot + 1;
  return j;
}

ChainState ChainState::from_json(const nlohmann::json& j, ChainKind kind) {
  ChainState st;
  st.k = j.at("k").get<int>();
  st.p = rationals_from_json(j.at("p"));
  st.x = rationals_from_json(j.at("x"));
  if (j.contains("q")) st.q = rationals_from_json(j.at("q"));
  if (j.contains("extreme")) st.extreme = parse_rational(j.at("extreme").get<std::string>());
  if (j.contains("s")) st.multiplicity = j.at("s").get<int>();
  if (j.contains("j")) st.pivot = j.at("j").get<int>() - 1;
  (void)kind;
  return st;
}

nlohmann::json ChainResult::to_json() const {
  nlohmann::json j;
  j["kind"] = chain_kind_name(kind);
  j["variant"] = variant == ChainVariant::refine ? "refine" : "reduce";
  nlohmann::json tr = nlohmann::json::array();
  for (const auto& st : trace) tr.push_back(st.to_json(kind));
  j["trace"] = tr;
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& e : extremes) ex.push_back(format_rational(e));
  j["extremes"] = ex;
  j["step_functionals"] = step_functionals;
  j["initial_functional"] = initial_functional;
  j["defect"] = defect;
  j["defect_scale"] = defect_scale;
  j["requested_steps"] = requested_steps;
  j["steps_done"] = steps_done;
  if (!stall_steps.empty()) j["stall_steps"] = stall_steps;
  if (terminated_early) j["terminated_early"] = true;
  if (pivot_j1.has_value()) j["j1"] = *pivot_j1 + 1;
  if (variant == ChainVariant::reduce) {
    j["n_seq"] = n_seq;
    nlohmann::json el = nlohmann::json::array();
    for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
      nlohmann::json one = nlohmann::json::array();
      for (auto i : trace[k].eliminated) one.push_back(i + 1);
      el.push_back(one);
    }
    j["eliminated"] = el;
  }
  return j;
}

ChainResult ChainResult::from_json(const nlohmann::json& j) {
  ChainResult r;
  r.kind = chain_kind_from_name(j.at("kind").get<std::string>());
  r.variant = j.value("variant", "refine") == "reduce" ? ChainVariant::reduce : ChainVariant::refine;
  for (const auto& st : j.at("trace")) r.trace.push_back(ChainState::from_json(st, r.kind));
  for (const auto& e : j.at("extremes")) r.extremes.push_back(parse_rational(e.get<std::string>()));
  r.step_functionals = j.at("step_functionals").get<std::vector<double>>();
  r.initial_functional = j.at("initial_functional").get<double>();
  r.defect = j.at("defect").get<double>();
  r.defect_scale = j.at("defect_scale").get<double>();
  r.requested_steps = j.at("requested_steps").get<int>();
  r.steps_done = j.at("steps_done").get<int>();
  if (j.contains("stall_steps")) r.stall_steps = j.at("stall_steps").get<std::vector<int>>();
  r.terminated_early = j.value("terminated_early", false);
  if (j.contains("j1")) r.pivot_j1 = j.at("j1").get<int>() - 1;
  if (j.contains("n_seq")) {
    r.n_seq = j.at("n_seq").get<std::vector<int>>();
  } else {
    for (const auto& st : r.trace) r.n_seq.push_back(static_cast<int>(st.n()));
  }
  if (j.contains("eliminated")) {
    const auto& el = j.at("eliminated");
    for (std::size_t k = 0; k < el.size() && k + 1 < r.trace.size(); ++k) {
      for (const auto& idx : el[k])
        r.trace[k].eliminated.push_back(idx.get<std::size_t>() - 1);
    }
  }
  return r;
}

}  // namespace jenchain
