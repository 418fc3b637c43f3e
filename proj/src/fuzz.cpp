// SPDX-License-Identifier: MIT
#include "jenchain/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>

#include "jenchain/error.hpp"
#include "parallel.hpp"

namespace jenchain {

std::vector<FnKind> all_fn_kinds() {
  return {FnKind::square,       FnKind::absolute, FnKind::exponential,
          FnKind::fourth_power, FnKind::neg_log,  FnKind::piecewise_linear};
}

std::vector<Family> all_families() {
  return {Family::dragomir, Family::lower6, Family::upper7, Family::reduce8,
          Family::reduce9,  Family::thm4,   Family::thm5};
}

std::size_t effective_threads(int requested) {
  std::size_t t = requested > 0 ? static_cast<std::size_t>(requested)
                                : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("JENSEN_CHAIN_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1 && static_cast<std::size_t>(cap) < t)
      t = static_cast<std::size_t>(cap);
  }
  return t;
}

namespace {

void validate_config(const FuzzConfig& c) {
  if (c.trials < 1) throw ConfigError("fuzz: trials must be >= 1");
  if (c.n_min < 1 || c.n_min > c.n_max || c.n_max > 32)
    throw ConfigError("fuzz: n range must satisfy 1 <= n_min <= n_max <= 32");
  if (c.N_min < 1 || c.N_min > c.N_max || c.N_max > 64)
    throw ConfigError("fuzz: N range must satisfy 1 <= N_min <= N_max <= 64");
  if (c.denominator_max < 64) throw ConfigError("fuzz: denominator_max must be >= 64");
}

struct Window {
  // Point window [lo, hi], well inside the function domain.
  long long lo;
  long long hi;
};

Window point_window(FnKind kind) {
  switch (kind) {
    case FnKind::neg_log: return {1, 8};         // domain [1/8, 16)
    case FnKind::piecewise_linear: return {-7, 7};
    default: return {-4, 4};
  }
}

ConvexFn make_function(FnKind kind, SeededRng& rng) {
  switch (kind) {
    case FnKind::square:
    case FnKind::absolute:
    case FnKind::exponential:
    case FnKind::fourth_power:
      return ConvexFn::make(kind, -8.0, 8.0);
    case FnKind::neg_log:
      return ConvexFn::make(kind, 0.125, 16.0);
    case FnKind::piecewise_linear: {
      // Integer breakpoints from -8 to 8 with nondecreasing integer slopes.
      std::size_t interior = 1 + rng.below(4);
      std::set<long long> xs = {-8, 8};
      while (xs.size() < interior + 2) xs.insert(rng.range(-7, 7));
      std::vector<Breakpoint> bps;
      double y = static_cast<double>(rng.range(-2, 2));
      double slope = static_cast<double>(rng.range(-4, 0));
      double prev_x = 0.0;
      bool first = true;
      for (long long xi : xs) {
        double xd = static_cast<double>(xi);
        if (first) {
          bps.push_back({xd, y});
          first = false;
        } else {
          y += slope * (xd - prev_x);
          bps.push_back({xd, y});
          slope += static_cast<double>(rng.below(4));
        }
        prev_x = xd;
      }
      return ConvexFn::piecewise(std::move(bps));
    }
  }
  throw ConfigError("unknown function kind");
}

PointVector random_points(SeededRng& rng, std::size_t n, FnKind kind, PointMode mode) {
  Window w = point_window(kind);
  std::vector<Rational> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == PointMode::exact) {
      long long den = 1;
      for (std::uint64_t d = rng.below(5); d > 0; --d) den *= 10;
      long long num = rng.range(w.lo * den, w.hi * den);
      pts[i] = Rational(num, den);
    } else {
      double span = static_cast<double>(w.hi - w.lo);
      double v = static_cast<double>(w.lo) + span * rng.unit_double();
      pts[i] = rational_from_double(v);
    }
  }
  return PointVector(std::move(pts));
}

std::vector<Rational> composition(SeededRng& rng, std::size_t n, long long total, bool positive) {
  // Stars-and-bars: cut [0, total] at n-1 points; positive parts need
  // distinct interior cuts.
  std::vector<long long> cuts;
  cuts.reserve(n + 1);
  cuts.push_back(0);
  if (positive) {
    std::set<long long> interior;
    while (interior.size() < n - 1)
      interior.insert(1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(total - 1))));
    for (long long c : interior) cuts.push_back(c);
  } else {
    std::vector<long long> interior;
    for (std::size_t i = 0; i + 1 < n; ++i)
      interior.push_back(static_cast<long long>(rng.below(static_cast<std::uint64_t>(total + 1))));
    std::sort(interior.begin(), interior.end());
    for (long long c : interior) cuts.push_back(c);
  }
  cuts.push_back(total);
  std::vector<Rational> parts(n);
  for (std::size_t i = 0; i < n; ++i) parts[i] = Rational(cuts[i + 1] - cuts[i], total);
  return parts;
}

}  // namespace

WeightVector random_positive_weights(SeededRng& rng, std::size_t n, int denom_max) {
  if (n == 1) return WeightVector::uniform(1);
  long long slack = denom_max > static_cast<long long>(n) ? denom_max - static_cast<long long>(n) : 0;
  long long total = static_cast<long long>(n) +
                    static_cast<long long>(rng.below(static_cast<std::uint64_t>(slack + 1)));
  return WeightVector::normalized(composition(rng, n, total, true));
}

WeightVector random_weights(SeededRng& rng, std::size_t n, int denom_max) {
  if (n == 1) return WeightVector::uniform(1);
  long long total = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(denom_max)));
  return WeightVector::normalized(composition(rng, n, total, false));
}

TrialData generate_trial(const FuzzConfig& config, int trial_index) {
  SeededRng rng(mix_seed(config.seed, static_cast<std::uint64_t>(trial_index)));
  TrialData t;

  const auto catalog = config.catalog.empty() ? all_fn_kinds() : config.catalog;
  FnKind kind = catalog[rng.below(catalog.size())];
  const auto n = static_cast<std::size_t>(rng.range(config.n_min, config.n_max));
  t.N = static_cast<int>(rng.range(config.N_min, config.N_max));
  t.f = make_function(kind, rng);
  t.x = random_points(rng, n, kind, config.mode);

  t.q_seq.clear();
  for (int k = 0; k < t.N; ++k)
    t.q_seq.push_back(random_positive_weights(rng, n, config.denominator_max));
  t.gamma = random_weights(rng, n, config.denominator_max);

  t.forced_tie = config.tie_every > 0 && trial_index % config.tie_every == config.tie_every - 1;
  const WeightVector& q1 = t.q_seq.front();

  if (t.forced_tie && n < 3) {
    t.p = q1;  // full tie: every ratio equals 1
  } else if (t.forced_tie) {
    // p = m*q1 + (1-m)*w with w supported off the tie set S, so the minimum
    // ratio is exactly m with multiplicity |S| >= 2.
    std::size_t tie_count = 2 + rng.below(n - 2);  // in [2, n-1]
    std::set<std::size_t> tie_set;
    while (tie_set.size() < tie_count) tie_set.insert(rng.below(n));
    long long den = 2 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(config.denominator_max - 1)));
    Rational m(1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(den - 1))), den);
    WeightVector w_rest = random_positive_weights(rng, n - tie_count, config.denominator_max);
    std::vector<Rational> p_entries(n);
    std::size_t rest_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (tie_set.count(i)) {
        p_entries[i] = m * q1[i];
      } else {
        p_entries[i] = m * q1[i] + (1 - m) * w_rest[rest_idx++];
      }
    }
    t.p = WeightVector::normalized(std::move(p_entries));
  } else if (n >= 2 && rng.chance(1, 16)) {
    t.p = q1;  // occasional exact p = q
  } else {
    t.p = random_weights(rng, n, config.denominator_max);
    if (n >= 2 && rng.chance(1, 12)) {
      // Zero out one entry to exercise the stalled-chain path (m_k = 0).
      std::vector<Rational> e = t.p.entries();
      std::size_t z = rng.below(n);
      Rational moved = e[z];
      e[z] = 0;
      e[z == 0 ? 1 : 0] += moved;
      t.p = WeightVector::normalized(std::move(e));
    }
  }
  return t;
}

namespace {

// q-sequences for the reducing chains have data-dependent lengths; draw them
// from a child generator so the refine and reduce runs stay independent.
QSequence reducing_qseq(const FuzzConfig& config, int trial_index, std::uint64_t salt) {
  auto rng = std::make_shared<SeededRng>(
      mix_seed(mix_seed(config.seed, static_cast<std::uint64_t>(trial_index)), salt));
  int denom_max = config.denominator_max;
  return QSequence::generated([rng, denom_max](int, std::size_t n) {
    return random_positive_weights(*rng, n, denom_max);
  });
}

std::string trial_id(int trial_index, Family fam) {
  std::ostringstream os;
  os << "t" << std::setw(6) << std::setfill('0') << trial_index << "-" << family_name(fam);
  return os.str();
}

struct TrialEval {
  std::vector<FuzzOutcome> outcomes;
  bool saw_tie = false;
  bool saw_stall = false;
};

void eval_report(TrialEval& ev, const std::string& id, const std::string& family, double defect,
                 const VerifyReport& rep) {
  FuzzOutcome out;
  out.id = id;
  out.family = family;
  out.defect = defect;
  out.pass = rep.all_pass();
  out.worst_violation = rep.worst_violation;
  if (const CheckEntry* worst = rep.worst_check()) out.worst_check = worst->name;
  ev.outcomes.push_back(std::move(out));
}

void eval_bound(TrialEval& ev, const std::string& id, const std::string& family, double defect,
                bool ok, const std::string& check_name, double violation) {
  FuzzOutcome out;
  out.id = id;
  out.family = family;
  out.defect = defect;
  out.pass = ok;
  out.worst_violation = ok ? 0.0 : violation;
  if (!ok) out.worst_check = check_name;
  ev.outcomes.push_back(std::move(out));
}

TrialEval run_trial(const FuzzConfig& config, int trial_index) {
  TrialData t = generate_trial(config, trial_index);
  TrialEval ev;
  const auto families = config.families.empty() ? all_families() : config.families;

  for (Family fam : families) {
    const std::string id = trial_id(trial_index, fam);
    switch (fam) {
      case Family::dragomir: {
        DragomirReport rep = check_dragomir(t.f, t.x, t.p, t.q_seq.front());
        double lower_margin = rep.J_p - to_double(rep.m) * rep.J_q;
        double upper_margin = to_double(rep.M) * rep.J_q - rep.J_p;
        eval_bound(ev, id, "dragomir", std::min(lower_margin, upper_margin), rep.ok(),
                   rep.lower_ok ? "dragomir_upper" : "dragomir_lower",
                   std::max(-lower_margin, -upper_margin) / (1.0 + std::fabs(rep.J_p)));
        break;
      }
      case Family::lower6: {
        ChainResult r = lower_chain(t.f, t.x, t.p, QSequence::explicit_list(t.q_seq), t.N);
        for (const auto& st : r.trace) {
          if (st.multiplicity.has_value() && *st.multiplicity >= 2) ev.saw_tie = true;
        }
        if (!r.stall_steps.empty()) ev.saw_stall = true;
        eval_report(ev, id, "lower6", r.defect, verify_all(t.f, r));
        break;
      }
      case Family::upper7: {
        ChainResult r = upper_chain(t.f, t.x, t.p, QSequence::explicit_list(t.q_seq), t.N);
        eval_report(ev, id, "upper7", r.defect, verify_all(t.f, r));
        break;
      }
      case Family::reduce8: {
        ChainResult r = reduce_lower_chain(t.f, t.x, t.p, reducing_qseq(config, trial_index, 0x8), t.N);
        eval_report(ev, id, "reduce8", r.defect, verify_all(t.f, r));
        break;
      }
      case Family::reduce9: {
        ChainResult r = reduce_upper_chain(t.f, t.x, t.p, reducing_qseq(config, trial_index, 0x9), t.N);
        eval_report(ev, id, "reduce9", r.defect, verify_all(t.f, r));
        break;
      }
      case Family::thm4: {
        ThreeWeightReport rep = three_weight_bounds(t.f, t.x, t.p, t.q_seq.front(), t.gamma);
        double margin = std::min(rep.J_alpha - rep.lower, rep.upper - rep.J_alpha);
        eval_bound(ev, id, "thm4", margin, rep.ok, "three_weight_bounds",
                   -margin / (1.0 + std::fabs(rep.J_alpha)));
        break;
      }
      case Family::thm5: {
        HjBoundsReport rep = hj_correction_bounds(t.f, t.x, t.p, t.q_seq.front());
        double margin = std::min(rep.J_alpha - rep.lower, rep.upper - rep.J_alpha);
        eval_bound(ev, id, "thm5", margin, rep.ok, "hj_correction_bounds",
                   -margin / (1.0 + std::fabs(rep.J_alpha)));
        break;
      }
    }
  }
  return ev;
}

}  // namespace

FuzzReport fuzz(const FuzzConfig& config) {
  validate_config(config);

  std::vector<TrialEval> evals(static_cast<std::size_t>(config.trials));
  detail::parallel_for(evals.size(), effective_threads(config.threads),
                       [&](std::size_t i) { evals[i] = run_trial(config, static_cast<int>(i)); });

  FuzzReport rep;
  rep.seed = config.seed;
  rep.trials = config.trials;
  for (auto& ev : evals) {
    if (ev.saw_tie) ++rep.tie_instances;
    if (ev.saw_stall) ++rep.stall_instances;
    for (auto& out : ev.outcomes) {
      if (!out.pass) ++rep.failures;
      if (out.worst_violation > rep.worst_violation) {
        rep.worst_violation = out.worst_violation;
        rep.worst_instance = out.id;
      }
      rep.outcomes.push_back(std::move(out));
    }
  }
  std::sort(rep.outcomes.begin(), rep.outcomes.end(),
            [](const FuzzOutcome& a, const FuzzOutcome& b) { return a.id < b.id; });
  rep.instances = static_cast<int>(rep.outcomes.size());
  return rep;
}

nlohmann::json FuzzReport::to_json() const {
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& o : outcomes) {
    outs.push_back({{"id", o.id},
                    {"family", o.family},
                    {"defect", o.defect},
                    {"pass", o.pass},
                    {"worst_check", o.worst_check},
                    {"worst_violation", o.worst_violation}});
  }
  return nlohmann::json{{"seed", seed},
                        {"trials", trials},
                        {"instances", instances},
                        {"failures", failures},
                        {"tie_instances", tie_instances},
                        {"stall_instances", stall_instances},
                        {"worst_violation", worst_violation},
                        {"worst_instance", worst_instance},
                        {"outcomes", outs}};
}

std::string FuzzReport::to_csv() const {
  std::ostringstream os;
  os << "id,family,defect,worst_check,pass\n";
  for (const auto& o : outcomes) {
    os << o.id << "," << o.family << "," << o.defect << "," << o.worst_check << ","
       << (o.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace jenchain
