// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "jenchain/instance.hpp"
#include "jenchain/rng.hpp"
#include "jenchain/verify.hpp"

namespace jenchain {

enum class PointMode { exact, floats };

struct FuzzConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  int n_min = 2;
  int n_max = 8;
  int N_min = 1;
  int N_max = 4;
  std::vector<FnKind> catalog;     // empty = all six kinds
  std::vector<Family> families;    // empty = all seven families
  PointMode mode = PointMode::exact;
  int denominator_max = 10000;
  // Every tie_every-th trial forces a minimum-ratio tie (multiplicity >= 2)
  // at step 1; float-drawn weights would essentially never tie on their own.
  int tie_every = 5;
  int threads = 0;                 // <= 0: hardware default, capped by JENSEN_CHAIN_THREADS
};

struct FuzzOutcome {
  std::string id;
  std::string family;
  double defect = 0.0;
  bool pass = false;
  std::string worst_check;         // empty when everything passed
  double worst_violation = 0.0;
};

struct FuzzReport {
  std::uint64_t seed = 0;
  int trials = 0;
  int instances = 0;
  int failures = 0;
  int tie_instances = 0;           // trials whose lower chain saw a step with s >= 2
  int stall_instances = 0;         // trials whose lower chain stalled (some m_k = 0)
  double worst_violation = 0.0;
  std::string worst_instance;
  std::vector<FuzzOutcome> outcomes;   // sorted by instance id

  bool all_pass() const { return failures == 0; }
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

FuzzReport fuzz(const FuzzConfig& config);

/// Deterministic single-trial generation, exposed for the CLI generator and
/// for tests that need specific regimes.
struct TrialData {
  ConvexFn f = ConvexFn::make(FnKind::square, -8.0, 8.0);
  PointVector x = PointVector({Rational(0)});
  WeightVector p = WeightVector::uniform(1);
  std::vector<WeightVector> q_seq;   // refine-chain shapes (all length n)
  WeightVector gamma = WeightVector::uniform(1);
  int N = 1;
  bool forced_tie = false;
};

TrialData generate_trial(const FuzzConfig& config, int trial_index);

/// Strictly positive exact-rational weights over a denominator <= denom_max.
WeightVector random_positive_weights(SeededRng& rng, std::size_t n, int denom_max);

/// Nonnegative exact-rational weights (zero entries possible).
WeightVector random_weights(SeededRng& rng, std::size_t n, int denom_max);

std::vector<FnKind> all_fn_kinds();
std::vector<Family> all_families();

std::size_t effective_threads(int requested);

}  // namespace jenchain
