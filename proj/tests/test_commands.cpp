// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jenchain/commands.hpp"
#include "jenchain/error.hpp"

using namespace jenchain;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<nlohmann::json> load_jsonl(const std::string& path) {
  std::ifstream in(path);
  std::vector<nlohmann::json> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("instance JSON round-trips and validates per family") {
  nlohmann::json j{{"id", "x1"},
                   {"family", "dragomir"},
                   {"f", {{"kind", "square"}, {"a", -8.0}, {"b", 8.0}}},
                   {"x", {"0", "1"}},
                   {"p", {"1/2", "1/2"}},
                   {"q_seq", nlohmann::json::array({nlohmann::json::array({"1/4", "3/4"})})},
                   {"N", 1}};
  Instance inst = Instance::from_json(j);
  CHECK(inst.family == Family::dragomir);
  CHECK(Instance::from_json(inst.to_json()).to_json() == inst.to_json());

  // thm4 needs two weight vectors next to alpha.
  nlohmann::json bad = j;
  bad["family"] = "thm4";
  CHECK_THROWS_AS(Instance::from_json(bad), ConfigError);

  nlohmann::json outside = j;
  outside["x"] = {"0", "9"};
  CHECK_THROWS_AS(Instance::from_json(outside), DomainError);

  nlohmann::json auto_q = j;
  auto_q["family"] = "reduce8";
  auto_q["q_seq"] = "auto-uniform";
  auto_q["N"] = 3;
  CHECK(Instance::from_json(auto_q).auto_uniform_q);
}

TEST_CASE("gen is deterministic and honors the denominator bound") {
  TempDir tmp("jenchain_gen_test");
  GenOptions opts;
  opts.seed = 7;
  opts.count = 14;
  opts.out = tmp.file("a.jsonl");
  CHECK(cmd_gen(opts) == 0);
  opts.out = tmp.file("b.jsonl");
  CHECK(cmd_gen(opts) == 0);
  CHECK(slurp(tmp.file("a.jsonl")) == slurp(tmp.file("b.jsonl")));

  GenOptions small;
  small.seed = 3;
  small.count = 21;
  small.denominator_max = 4;
  small.n_min = 2;
  small.n_max = 4;
  small.out = tmp.file("small.jsonl");
  CHECK(cmd_gen(small) == 0);
  for (const auto& line : load_jsonl(tmp.file("small.jsonl"))) {
    Instance inst = Instance::from_json(line);
    for (const auto& e : inst.p.entries()) CHECK(denominator(e) <= 4);
    for (const auto& q : inst.q_seq)
      for (const auto& e : q.entries()) CHECK(denominator(e) <= 4);
  }
}

TEST_CASE("gen -> run -> verify round-trip is clean for every family") {
  TempDir tmp("jenchain_roundtrip_test");
  GenOptions opts;
  opts.seed = 99;
  opts.count = 28;  // four full family cycles
  opts.out = tmp.file("inst.jsonl");
  REQUIRE(cmd_gen(opts) == 0);
  REQUIRE(cmd_run(tmp.file("inst.jsonl"), tmp.file("res.jsonl")) == 0);
  REQUIRE(cmd_verify(tmp.file("res.jsonl"), tmp.file("ver.jsonl")) == 0);

  auto results = load_jsonl(tmp.file("res.jsonl"));
  CHECK(results.size() == 28);
  for (const auto& r : results) CHECK(r.at("pass") == true);

  auto reports = load_jsonl(tmp.file("ver.jsonl"));
  CHECK(reports.size() == 28);
  for (const auto& r : reports) CHECK(r.at("pass") == true);
}

TEST_CASE("run reports the worked example defect") {
  TempDir tmp("jenchain_run_example");
  nlohmann::json j{{"id", "example-b"},
                   {"family", "lower6"},
                   {"f", {{"kind", "square"}, {"a", -8.0}, {"b", 8.0}}},
                   {"x", {"0", "1"}},
                   {"p", {"1/2", "1/2"}},
                   {"q_seq", nlohmann::json::array({nlohmann::json::array({"1/4", "3/4"})})},
                   {"N", 1}};
  {
    std::ofstream out(tmp.file("inst.jsonl"));
    out << j.dump() << "\n";
  }
  REQUIRE(cmd_run(tmp.file("inst.jsonl"), tmp.file("res.jsonl")) == 0);
  auto results = load_jsonl(tmp.file("res.jsonl"));
  REQUIRE(results.size() == 1);
  CHECK(results[0].at("defect").get<double>() == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(results[0].at("result").at("extremes")[0] == "2/3");
}

TEST_CASE("verify flags a hand-corrupted trace with the named check") {
  TempDir tmp("jenchain_corrupt_test");
  GenOptions opts;
  opts.seed = 5;
  opts.count = 2;
  opts.family = "lower6";
  opts.out = tmp.file("inst.jsonl");
  REQUIRE(cmd_gen(opts) == 0);
  REQUIRE(cmd_run(tmp.file("inst.jsonl"), tmp.file("res.jsonl")) == 0);

  auto results = load_jsonl(tmp.file("res.jsonl"));
  results[0]["result"]["trace"][1]["p"][0] = "2/1";  // break the weight sum
  {
    std::ofstream out(tmp.file("bad.jsonl"));
    for (const auto& r : results) out << r.dump() << "\n";
  }
  CHECK(cmd_verify(tmp.file("bad.jsonl"), tmp.file("ver.jsonl")) == 1);
  auto reports = load_jsonl(tmp.file("ver.jsonl"));
  bool found = false;
  for (const auto& c : reports[0].at("checks")) {
    if (c.at("name").get<std::string>().rfind("weight_sum", 0) == 0 && c.at("pass") == false)
      found = true;
  }
  CHECK(found);
}

TEST_CASE("verify on an empty file is a config error") {
  TempDir tmp("jenchain_empty_test");
  {
    std::ofstream out(tmp.file("empty.jsonl"));
  }
  CHECK_THROWS_AS(cmd_verify(tmp.file("empty.jsonl"), tmp.file("ver.jsonl")), ConfigError);
}

TEST_CASE("special instances: thm4 equality and reduce9 collapse") {
  TempDir tmp("jenchain_special_test");
  nlohmann::json thm4{{"id", "eq-thm4"},
                      {"family", "thm4"},
                      {"f", {{"kind", "square"}, {"a", -8.0}, {"b", 8.0}}},
                      {"x", {"0", "1", "2"}},
                      {"p", {"1/3", "1/3", "1/3"}},
                      {"q_seq", {{"1/3", "1/3", "1/3"}, {"1/3", "1/3", "1/3"}}},
                      {"N", 1}};
  nlohmann::json reduce9{{"id", "eq-reduce9"},
                         {"family", "reduce9"},
                         {"f", {{"kind", "square"}, {"a", -8.0}, {"b", 8.0}}},
                         {"x", {"0", "1"}},
                         {"p", {"1/2", "1/2"}},
                         {"q_seq", nlohmann::json::array({nlohmann::json::array({"1/2", "1/2"}),
                                                          nlohmann::json::array({"1"})})},
                         {"N", 2}};
  {
    std::ofstream out(tmp.file("inst.jsonl"));
    out << thm4.dump() << "\n" << reduce9.dump() << "\n";
  }
  REQUIRE(cmd_run(tmp.file("inst.jsonl"), tmp.file("res.jsonl")) == 0);
  auto results = load_jsonl(tmp.file("res.jsonl"));
  REQUIRE(results.size() == 2);
  for (const auto& r : results) {
    if (r.at("id") == "eq-thm4") {
      CHECK(r.at("result").at("lower").get<double>() ==
            doctest::Approx(r.at("result").at("J_alpha").get<double>()).epsilon(1e-12));
    } else {
      // p = q collapses to one point after step 1 and terminates early.
      CHECK(r.at("result").at("n_seq") == nlohmann::json::array({2, 1}));
      CHECK(r.at("result").at("terminated_early") == true);
      CHECK(r.at("defect").get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("report produces the CSV summary") {
  TempDir tmp("jenchain_report_test");
  GenOptions opts;
  opts.seed = 13;
  opts.count = 7;
  opts.out = tmp.file("inst.jsonl");
  REQUIRE(cmd_gen(opts) == 0);
  REQUIRE(cmd_run(tmp.file("inst.jsonl"), tmp.file("res.jsonl")) == 0);
  REQUIRE(cmd_report(tmp.file("res.jsonl"), tmp.file("sum.csv")) == 0);
  std::string csv = slurp(tmp.file("sum.csv"));
  CHECK(csv.rfind("id,family,defect,worst_check,pass\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);

  FuzzOptions fopts;
  fopts.config.seed = 3;
  fopts.config.trials = 5;
  fopts.out = tmp.file("agg.json");
  fopts.csv = tmp.file("agg.csv");
  REQUIRE(cmd_fuzz(fopts) == 0);
  REQUIRE(cmd_report(tmp.file("agg.json"), tmp.file("agg2.csv")) == 0);
  CHECK(slurp(tmp.file("agg.csv")) == slurp(tmp.file("agg2.csv")));
}

TEST_CASE("missing input files raise IO errors") {
  CHECK_THROWS_AS(cmd_run("/nonexistent/path.jsonl", "/tmp/never.jsonl"), IoError);
  CHECK_THROWS_AS(cmd_report("/nonexistent/path.jsonl", ""), IoError);
}
