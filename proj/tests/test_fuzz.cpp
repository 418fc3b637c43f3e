// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "jenchain/error.hpp"
#include "jenchain/fuzz.hpp"

using namespace jenchain;

TEST_CASE("fuzz: identical configs give byte-identical reports") {
  FuzzConfig cfg;
  cfg.seed = 42;
  cfg.trials = 40;
  FuzzReport a = fuzz(cfg);
  FuzzReport b = fuzz(cfg);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("fuzz: thread count does not change the report") {
  FuzzConfig cfg;
  cfg.seed = 7;
  cfg.trials = 30;
  cfg.threads = 1;
  FuzzReport a = fuzz(cfg);
  cfg.threads = 4;
  FuzzReport b = fuzz(cfg);
  CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("fuzz: config validation") {
  FuzzConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(fuzz(cfg), ConfigError);
  cfg.trials = 1;
  cfg.n_min = 5;
  cfg.n_max = 3;
  CHECK_THROWS_AS(fuzz(cfg), ConfigError);
  cfg.n_min = 2;
  cfg.n_max = 40;
  CHECK_THROWS_AS(fuzz(cfg), ConfigError);
  cfg.n_max = 8;
  cfg.N_min = 0;
  CHECK_THROWS_AS(fuzz(cfg), ConfigError);
  cfg.N_min = 1;
  cfg.N_max = 100;
  CHECK_THROWS_AS(fuzz(cfg), ConfigError);
}

TEST_CASE("fuzz: a moderate run over every family is violation-free") {
  FuzzConfig cfg;
  cfg.seed = 2026;
  cfg.trials = 120;
  cfg.n_max = 8;
  cfg.N_max = 5;
  FuzzReport rep = fuzz(cfg);
  CHECK(rep.failures == 0);
  CHECK(rep.instances == 120 * 7);
  CHECK(rep.worst_violation == 0.0);
  // Forced ties actually occur at the configured cadence.
  CHECK(rep.tie_instances >= cfg.trials / cfg.tie_every);
}

TEST_CASE("fuzz: n = 1 instances degenerate to zero functionals and pass") {
  FuzzConfig cfg;
  cfg.seed = 5;
  cfg.trials = 50;
  cfg.n_min = 1;
  cfg.n_max = 1;
  FuzzReport rep = fuzz(cfg);
  CHECK(rep.failures == 0);
  for (const auto& o : rep.outcomes)
    CHECK(o.defect == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fuzz: float point mode passes the same checks") {
  FuzzConfig cfg;
  cfg.seed = 31;
  cfg.trials = 80;
  cfg.mode = PointMode::floats;
  FuzzReport rep = fuzz(cfg);
  CHECK(rep.failures == 0);
  CHECK(rep.worst_violation == 0.0);
}

TEST_CASE("fuzz: outcomes are sorted by instance id") {
  FuzzConfig cfg;
  cfg.seed = 11;
  cfg.trials = 25;
  FuzzReport rep = fuzz(cfg);
  for (std::size_t i = 1; i < rep.outcomes.size(); ++i)
    CHECK(rep.outcomes[i - 1].id < rep.outcomes[i].id);
}

TEST_CASE("generate_trial: forced-tie trials produce a step-1 tie") {
  FuzzConfig cfg;
  cfg.n_min = 3;
  cfg.n_max = 8;
  int checked = 0;
  for (int trial = cfg.tie_every - 1; trial < 200; trial += cfg.tie_every) {
    TrialData t = generate_trial(cfg, trial);
    REQUIRE(t.forced_tie);
    RatioExtremes e = ratio_extremes(t.p, t.q_seq.front());
    CHECK(e.argmin_set.size() >= 2);
    ++checked;
  }
  CHECK(checked >= 40);
}

TEST_CASE("generate_trial: weights respect the denominator bound") {
  FuzzConfig cfg;
  cfg.denominator_max = 64;
  cfg.tie_every = 0;
  for (int trial = 0; trial < 60; ++trial) {
    TrialData t = generate_trial(cfg, trial);
    for (const auto& q : t.q_seq)
      for (const auto& e : q.entries()) CHECK(denominator(e) <= 64);
  }
}
