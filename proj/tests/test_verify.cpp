// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "jenchain/error.hpp"
#include "jenchain/fuzz.hpp"
#include "jenchain/reduce.hpp"
#include "jenchain/verify.hpp"
#include "oracle_util.hpp"

using namespace jenchain;
using oracle::rats;

namespace {

ConvexFn square() { return ConvexFn::make(FnKind::square, -8.0, 8.0); }
WeightVector w(const std::vector<std::string>& s) { return WeightVector::from_strings(s); }

QSequence const_q(int N) {
  std::vector<WeightVector> qs(static_cast<std::size_t>(N), w({"1/4", "3/4"}));
  return QSequence::explicit_list(std::move(qs));
}

ChainResult lower_example(int N) {
  return lower_chain(square(), PointVector(rats({"0", "1"})), w({"1/2", "1/2"}), const_q(N), N);
}

ChainResult upper_example(int N) {
  return upper_chain(square(), PointVector(rats({"0", "1"})), w({"1/2", "1/2"}), const_q(N), N);
}

const CheckEntry& find_check(const VerifyReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c;
  REQUIRE_MESSAGE(false, "check not found: " << name);
  static CheckEntry dummy;
  return dummy;
}

}  // namespace

TEST_CASE("telescoping: both sides equal 3/8 on the first lower step") {
  ChainResult r = lower_example(1);
  VerifyReport rep = telescoping_check(square(), r);
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].pass);
  CHECK(rep.checks[0].violation == 0.0);
  CHECK(std::stod(rep.checks[0].lhs) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(std::stod(rep.checks[0].rhs) == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("telescoping: upper step lhs is 1/8") {
  ChainResult r = upper_example(1);
  VerifyReport rep = telescoping_check(square(), r);
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].pass);
  CHECK(std::stod(rep.checks[0].lhs) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("telescoping: constant points hold exactly") {
  ChainResult r = lower_chain(square(), PointVector(rats({"2", "2"})), w({"1/2", "1/2"}),
                              const_q(3), 3);
  VerifyReport rep = telescoping_check(square(), r);
  CHECK(rep.all_pass());
  CHECK(rep.worst_violation == 0.0);
}

TEST_CASE("conservation: worked traces conserve sums and barycenters") {
  ChainResult r = lower_example(2);
  VerifyReport rep = conservation_check(r);
  CHECK(rep.all_pass());
  CHECK(find_check(rep, "weight_sum_1").lhs == "1");
  CHECK(find_check(rep, "barycenter_1").lhs == "1/2");
  CHECK(find_check(rep, "barycenter_3").lhs == "1/2");

  ChainResult u = upper_example(1);
  VerifyReport urep = conservation_check(u);
  CHECK(urep.all_pass());
  // State 2 is (2, -1): sums to 1 with barycenter 1/2, single positive pivot.
  CHECK(find_check(urep, "weight_sum_2").lhs == "1");
  CHECK(find_check(urep, "barycenter_2").lhs == "1/2");
  CHECK(find_check(urep, "single_positive_pivot_2").pass);
}

TEST_CASE("conservation: a corrupted trace fails the named check") {
  ChainResult r = lower_example(2);
  r.trace[1].p[0] += Rational(1, 100);  // weight sum now 101/100
  VerifyReport rep = conservation_check(r);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(find_check(rep, "weight_sum_2").pass);
  CHECK(find_check(rep, "weight_sum_2").lhs == "101/100");

  ChainResult r2 = lower_example(2);
  r2.trace[2].x[0] += 1;  // barycenter drifts
  VerifyReport rep2 = conservation_check(r2);
  CHECK_FALSE(find_check(rep2, "barycenter_3").pass);

  ChainResult r3 = lower_example(1);
  r3.trace[1].p[0] = Rational(-1, 4);
  r3.trace[1].p[1] = Rational(5, 4);
  VerifyReport rep3 = conservation_check(r3);
  CHECK_FALSE(find_check(rep3, "nonnegative_weights_2").pass);
}

TEST_CASE("final_jensen: terminal margin 1/32 on the N = 2 example") {
  ChainResult r = lower_example(2);
  VerifyReport rep = final_jensen_check(square(), r);
  CHECK(rep.all_pass());
  const CheckEntry& c = find_check(rep, "final_jensen");
  CHECK(std::stod(c.lhs) == doctest::Approx(9.0 / 32.0).epsilon(1e-12));
  CHECK(std::stod(c.rhs) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("final_jensen: equality cases pass") {
  // Constant points: every state evaluates to f(c) exactly.
  ChainResult r = lower_chain(square(), PointVector(rats({"2", "2"})), w({"1/2", "1/2"}),
                              const_q(1), 1);
  CHECK(final_jensen_check(square(), r).all_pass());
  // Point mass at the barycenter after a full tie.
  ChainResult r2 = lower_chain(square(), PointVector(rats({"0", "1"})), w({"1/2", "1/2"}),
                               QSequence::explicit_list({w({"1/2", "1/2"})}), 1);
  CHECK(final_jensen_check(square(), r2).all_pass());
  CHECK_THROWS_AS(final_jensen_check(square(), upper_example(1)), ConfigError);
}

TEST_CASE("structure: closed form checked exactly, tampering detected") {
  ChainResult r = upper_example(2);
  CHECK(structure_check(r).all_pass());
  r.extremes[1] = Rational(7);  // not p1[j]/prod(q_j)
  VerifyReport rep = structure_check(r);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(find_check(rep, "closed_form_Mk_2").pass);
}

TEST_CASE("structure: defect sign claim is enforced") {
  ChainResult r = lower_example(1);
  r.defect = -1.0;  // simulated violation
  VerifyReport rep = structure_check(r);
  CHECK_FALSE(find_check(rep, "defect_sign").pass);
}

TEST_CASE("verify_all: random traces of every variant pass all checks") {
  FuzzConfig cfg;
  cfg.n_min = 2;
  cfg.n_max = 7;
  for (int trial = 0; trial < 80; ++trial) {
    TrialData t = generate_trial(cfg, trial);
    CHECK(verify_all(t.f, lower_chain(t.f, t.x, t.p, QSequence::explicit_list(t.q_seq), t.N)).all_pass());
    CHECK(verify_all(t.f, upper_chain(t.f, t.x, t.p, QSequence::explicit_list(t.q_seq), t.N)).all_pass());
    CHECK(verify_all(t.f, reduce_lower_chain(t.f, t.x, t.p, QSequence::auto_uniform(), t.N)).all_pass());
    CHECK(verify_all(t.f, reduce_upper_chain(t.f, t.x, t.p, QSequence::auto_uniform(), t.N)).all_pass());
  }
}

TEST_CASE("verify reports serialize with both sides of every check") {
  ChainResult r = lower_example(1);
  VerifyReport rep = verify_all(square(), r);
  rep.instance_id = "example-b";
  nlohmann::json j = rep.to_json();
  CHECK(j["id"] == "example-b");
  CHECK(j["pass"] == true);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("lhs"));
    CHECK(c.contains("rhs"));
    CHECK(c.contains("tol"));
  }
}
