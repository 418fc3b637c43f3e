// SPDX-License-Identifier: MIT
#include "jenchain/reduce.hpp"

#include "chain_detail.hpp"
#include "jenchain/error.hpp"

namespace jenchain {

using detail::scan_ratios;
using detail::weighted_point_sum;

StepOutcome reduce_lower_step(const ChainState& state, const WeightVector& q_step) {
  auto scan = scan_ratios(state.p, q_step, "reduce_lower_step");
  const Rational& m = scan.min;
  Rational bary = weighted_point_sum(q_step.entries(), state.x);

  StepOutcome out;
  out.extreme = m;
  out.multiplicity = static_cast<int>(scan.argmin.size());
  out.eliminated = scan.argmin;
  out.next.k = state.k + 1;
  std::size_t tied = 0;
  for (std::size_t i = 0; i < state.p.size(); ++i) {
    if (tied < scan.argmin.size() && scan.argmin[tied] == i) {
      ++tied;
      continue;
    }
    out.next.p.push_back(state.p[i] - m * q_step[i]);
    out.next.x.push_back(state.x[i]);
  }
  out.next.p.push_back(m);
  out.next.x.push_back(bary);
  return out;
}

StepOutcome reduce_upper_step(const ChainState& state, const WeightVector& q_step) {
  if (!state.pivot.has_value()) throw ConfigError("reduce_upper_step: state carries no pivot");
  auto scan = scan_ratios(state.p, q_step, "reduce_upper_step");
  const auto j = static_cast<std::size_t>(*state.pivot);
  if (j >= state.p.size()) throw ConfigError("reduce_upper_step: pivot out of range");
  Rational M = state.p[j] / q_step[j];
  if (M != scan.max)
    throw InvariantViolation("reduce_upper_step: pivot no longer attains the maximum ratio");
  Rational bary = weighted_point_sum(q_step.entries(), state.x);

  StepOutcome out;
  out.extreme = M;
  out.next.k = state.k + 1;
  for (std::size_t i = 0; i < state.p.size(); ++i) {
    if (i == j) {
      out.pivot = static_cast<int>(out.next.p.size());
      out.next.p.push_back(M);
      out.next.x.push_back(bary);
      continue;
    }
    Rational residual = state.p[i] - M * q_step[i];
    if (residual == 0) {
      out.eliminated.push_back(i);
      continue;
    }
    out.next.p.push_back(residual);
    out.next.x.push_back(state.x[i]);
  }
  out.next.pivot = out.pivot;
  return out;
}

namespace {

void validate_inputs(const PointVector& x1, const WeightVector& p1, const QSequence& qs, int N,
                     const char* who) {
  if (N < 1) throw ConfigError(std::string(who) + ": N must be >= 1");
  require_same_length(x1.size(), p1.size(), who);
  if (p1.is_signed() || !p1.nonnegative())
    throw InvariantViolation(std::string(who) + ": initial weights must be nonnegative");
  if (qs.is_explicit() && qs.explicit_count() != static_cast<std::size_t>(N))
    throw LengthMismatch(std::string(who) + ": q-sequence has " +
                         std::to_string(qs.explicit_count()) + " entries, N = " + std::to_string(N));
}

void finish(ChainResult& r, double initial_magnitude, const std::vector<double>& step_magnitudes) {
  r.defect = r.initial_functional;
  r.defect_scale = 1.0 + initial_magnitude;
  for (std::size_t k = 0; k < r.extremes.size(); ++k) {
    r.defect -= to_double(r.extremes[k]) * r.step_functionals[k];
    r.defect_scale += std::fabs(to_double(r.extremes[k])) * step_magnitudes[k];
  }
  r.steps_done = static_cast<int>(r.extremes.size());
  r.n_seq.clear();
  for (const auto& st : r.trace) r.n_seq.push_back(static_cast<int>(st.n()));
}

}  // namespace

ChainResult reduce_lower_chain(const ConvexFn& f, const PointVector& x1, const WeightVector& p1,
                               const QSequence& qs, int N) {
  validate_inputs(x1, p1, qs, N, "reduce_lower_chain");

  ChainResult r;
  r.kind = ChainKind::lower;
  r.variant = ChainVariant::reduce;
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
    StepOutcome step = reduce_lower_step(cur, q);

    if (step.extreme == 0) r.stall_steps.push_back(k);
    ChainState recorded = cur;
    recorded.q = q.entries();
    recorded.extreme = step.extreme;
    recorded.multiplicity = step.multiplicity;
    recorded.eliminated = step.eliminated;
    r.trace.push_back(std::move(recorded));
    r.extremes.push_back(step.extreme);
    r.step_functionals.push_back(Jk);

    // Length law for the eliminating lower step.
    if (step.next.n() != cur.n() - static_cast<std::size_t>(step.multiplicity) + 1)
      throw InvariantViolation("reduce_lower_chain: length law violated at step " + std::to_string(k));

    cur = std::move(step.next);
    detail::check_conserved(cur.p, cur.x, bary0, k, "reduce_lower_chain");
    // Survivors sit strictly above the minimum ratio, so their residual
    // weights are strictly positive; only the appended entry may be zero.
    for (std::size_t i = 0; i + 1 < cur.p.size(); ++i) {
      if (cur.p[i] <= 0)
        throw InvariantViolation("reduce_lower_chain: non-positive survivor weight after step " +
                                 std::to_string(k));
    }
    if (cur.n() == 1 && k < N) {
      r.terminated_early = true;
      break;
    }
  }
  r.trace.push_back(cur);
  finish(r, initial.magnitude, step_magnitudes);
  return r;
}

ChainResult reduce_upper_chain(const ConvexFn& f, const PointVector& x1, const WeightVector& p1,
                               const QSequence& qs, int N) {
  validate_inputs(x1, p1, qs, N, "reduce_upper_chain");

  ChainResult r;
  r.kind = ChainKind::upper;
  r.variant = ChainVariant::reduce;
  r.requested_steps = N;
  detail::FunctionalEval initial = detail::eval_functional(f, x1.entries(), p1.entries());
  r.initial_functional = initial.value;
  std::vector<double> step_magnitudes;

  ChainState cur;
  cur.k = 1;
  cur.p = p1.entries();
  cur.x = x1.entries();
  const Rational bary0 = weighted_point_sum(cur.p, cur.x);

  {
    WeightVector q1 = qs.at(1, cur.n());
    auto scan = scan_ratios(cur.p, q1, "reduce_upper_chain");
    cur.pivot = static_cast<int>(scan.argmax.front());
  }
  r.pivot_j1 = cur.pivot;

  Rational pivot_q_product = 1;
  const Rational p1_pivot = cur.p[static_cast<std::size_t>(*cur.pivot)];
  std::size_t n2 = 0;  // length after the first step; must be stable from then on

  for (int k = 1; k <= N; ++k) {
    WeightVector q = qs.at(k, cur.n());
    detail::FunctionalEval fe = detail::eval_functional(f, cur.x, q.entries());
    double Jk = fe.value;
    step_magnitudes.push_back(fe.magnitude);
    StepOutcome step = reduce_upper_step(cur, q);

    // The pivot's q entry, at its position within the current state.
    pivot_q_product *= q[static_cast<std::size_t>(*cur.pivot)];
    if (step.extreme != p1_pivot / pivot_q_product)
      throw InvariantViolation(
          "reduce_upper_chain: extreme ratio diverged from its closed form at step " +
          std::to_string(k));

    ChainState recorded = cur;
    recorded.q = q.entries();
    recorded.extreme = step.extreme;
    recorded.eliminated = step.eliminated;
    r.trace.push_back(std::move(recorded));
    r.extremes.push_back(step.extreme);
    r.step_functionals.push_back(Jk);

    cur = std::move(step.next);
    detail::check_conserved(cur.p, cur.x, bary0, k, "reduce_upper_chain");

    // Elimination only ever happens on the first step; the length is stable after.
    if (k == 1) {
      n2 = cur.n();
    } else if (cur.n() != n2) {
      throw InvariantViolation("reduce_upper_chain: length changed after step " + std::to_string(k) +
                               ", stabilization violated");
    }
    if (cur.n() == 1 && k < N) {
      r.terminated_early = true;
      break;
    }
  }
  r.trace.push_back(cur);
  finish(r, initial.magnitude, step_magnitudes);
  return r;
}

}  // namespace jenchain
