// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <limits>

#include "jenchain/convex_fn.hpp"
#include "jenchain/error.hpp"

using namespace jenchain;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("eval matches the catalog formulas") {
  ConvexFn sq = ConvexFn::make(FnKind::square, -8.0, 8.0);
  CHECK(sq.eval(0.5) == 0.25);
  CHECK(sq.eval(-2.0) == 4.0);

  ConvexFn ab = ConvexFn::make(FnKind::absolute, -8.0, 8.0);
  CHECK(ab.eval(-1.0) == 1.0);

  ConvexFn fp = ConvexFn::make(FnKind::fourth_power, -8.0, 8.0);
  CHECK(fp.eval(2.0) == 16.0);

  ConvexFn ex = ConvexFn::make(FnKind::exponential, -8.0, 8.0);
  CHECK(ex.eval(0.0) == 1.0);

  ConvexFn nl = ConvexFn::make(FnKind::neg_log, 0.125, 16.0);
  CHECK(nl.eval(1.0) == 0.0);
  CHECK(nl.eval(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("piecewise_linear interpolates between breakpoints") {
  ConvexFn pl = ConvexFn::piecewise({{0.0, 0.0}, {1.0, 0.0}, {2.0, 2.0}});
  CHECK(pl.eval(1.5) == 1.0);
  CHECK(pl.eval(0.0) == 0.0);
  CHECK(pl.eval(1.0) == 0.0);
  CHECK(pl.eval(0.25) == 0.0);
  // Domain is half-open: the last breakpoint is excluded.
  CHECK_THROWS_AS(pl.eval(2.0), DomainError);
}

TEST_CASE("eval rejects points outside the half-open domain") {
  ConvexFn sq = ConvexFn::make(FnKind::square, -1.0, 2.0);
  CHECK_THROWS_AS(sq.eval(2.0), DomainError);
  CHECK_THROWS_AS(sq.eval(-1.0000001), DomainError);
  CHECK(sq.eval(-1.0) == 1.0);  // lower end is included
}

TEST_CASE("construction enforces domain invariants") {
  CHECK_THROWS_AS(ConvexFn::make(FnKind::square, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS(ConvexFn::make(FnKind::square, 3.0, 1.0), DomainError);
  CHECK_THROWS_AS(ConvexFn::make(FnKind::neg_log, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(ConvexFn::make(FnKind::neg_log, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ConvexFn::piecewise({{0.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(ConvexFn::piecewise({{1.0, 0.0}, {1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(ConvexFn::piecewise({{2.0, 0.0}, {1.0, 1.0}}), DomainError);
  CHECK_NOTHROW(ConvexFn::make(FnKind::exponential, 0.0, kInf));
}

TEST_CASE("check_convexity accepts the catalog and flags concave kinks") {
  CHECK(check_convexity(ConvexFn::make(FnKind::square, -8.0, 8.0), 101));
  CHECK(check_convexity(ConvexFn::make(FnKind::absolute, -8.0, 8.0), 101));
  CHECK(check_convexity(ConvexFn::make(FnKind::fourth_power, -8.0, 8.0), 101));
  CHECK(check_convexity(ConvexFn::make(FnKind::exponential, -8.0, 8.0), 101));
  CHECK(check_convexity(ConvexFn::make(FnKind::neg_log, 0.1, 10.0), 101));

  // Decreasing slopes: a concave kink the checker must reject.
  ConvexFn bad = ConvexFn::piecewise({{0.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}});
  CHECK_FALSE(check_convexity(bad, 101));

  ConvexFn good = ConvexFn::piecewise({{0.0, 0.0}, {1.0, 0.0}, {2.0, 2.0}});
  CHECK(check_convexity(good, 101));
}

TEST_CASE("check_convexity works on every grid size >= 3 and clipped domains") {
  for (int g : {3, 17, 64}) {
    CHECK(check_convexity(ConvexFn::make(FnKind::square, -8.0, 8.0), g));
    CHECK(check_convexity(ConvexFn::make(FnKind::exponential, 0.0, kInf), g));
    CHECK(check_convexity(ConvexFn::make(FnKind::neg_log, 0.1, 10.0), g));
  }
  CHECK_THROWS_AS(check_convexity(ConvexFn::make(FnKind::square, 0.0, 1.0), 2), ConfigError);
}

TEST_CASE("eval is pure: identical inputs give bit-identical outputs") {
  ConvexFn ex = ConvexFn::make(FnKind::exponential, -8.0, 8.0);
  double a = ex.eval(1.234567);
  double b = ex.eval(1.234567);
  CHECK(a == b);
}

TEST_CASE("ConvexFn round-trips through JSON") {
  ConvexFn sq = ConvexFn::make(FnKind::square, -8.0, 8.0);
  ConvexFn sq2 = ConvexFn::from_json(sq.to_json());
  CHECK(sq2.kind() == FnKind::square);
  CHECK(sq2.lower() == -8.0);
  CHECK(sq2.upper() == 8.0);

  ConvexFn ex = ConvexFn::make(FnKind::exponential, 0.5, kInf);
  nlohmann::json j = ex.to_json();
  CHECK(j["b"] == "inf");
  ConvexFn ex2 = ConvexFn::from_json(j);
  CHECK(ex2.unbounded_above());

  ConvexFn pl = ConvexFn::piecewise({{-1.0, 2.0}, {0.0, 0.0}, {3.0, 6.0}});
  ConvexFn pl2 = ConvexFn::from_json(pl.to_json());
  CHECK(pl2.breakpoints().size() == 3);
  CHECK(pl2.eval(1.5) == 3.0);

  CHECK_THROWS_AS(ConvexFn::from_json(nlohmann::json{{"kind", "cubic"}, {"a", 0}, {"b", 1}}),
                  ParseError);
}
