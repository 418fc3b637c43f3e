// SPDX-License-Identifier: MIT
//
// jenchain: generate, run, and machine-verify normalized Jensen-functional
// bound instances and their recursive refinement chains.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jenchain/commands.hpp"
#include "jenchain/error.hpp"

namespace {

std::vector<jenchain::FnKind> parse_catalog(const std::string& csv) {
  std::vector<jenchain::FnKind> kinds;
  if (csv.empty() || csv == "all") return kinds;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    std::string name = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!name.empty()) kinds.push_back(jenchain::fn_kind_from_name(name));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (kinds.empty()) throw jenchain::ConfigError("empty --catalog");
  return kinds;
}

jenchain::PointMode parse_mode(const std::string& mode) {
  if (mode == "exact") return jenchain::PointMode::exact;
  if (mode == "float") return jenchain::PointMode::floats;
  throw jenchain::ConfigError("--mode must be exact or float");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normalized Jensen functional bounds: instances, chains, verification"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a JSON-lines instance file");
  jenchain::GenOptions gen_opts;
  std::string gen_catalog = "all";
  std::string gen_mode = "exact";
  int gen_n = 0;
  gen->add_option("--seed", gen_opts.seed, "RNG seed");
  gen->add_option("--count", gen_opts.count, "number of instances");
  gen->add_option("--n-min", gen_opts.n_min, "minimum vector length");
  gen->add_option("--n-max", gen_opts.n_max, "maximum vector length");
  gen->add_option("--n", gen_n, "fixed vector length (sets both bounds)");
  gen->add_option("--N", gen_opts.N, "chain steps for chain families");
  gen->add_option("--family", gen_opts.family,
                  "dragomir|lower6|upper7|reduce8|reduce9|thm4|thm5|mixed");
  gen->add_option("--catalog", gen_catalog, "comma-separated function kinds, or 'all'");
  gen->add_option("--denominator-max", gen_opts.denominator_max, "max weight denominator");
  gen->add_option("--mode", gen_mode, "exact|float point generation");
  gen->add_option("--out", gen_opts.out, "output instance file")->required();

  // run
  auto* run = app.add_subcommand("run", "run instances, write one result per line");
  std::string run_in, run_out;
  run->add_option("input", run_in, "instance file (JSON lines)")->required();
  run->add_option("--out", run_out, "output result file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "re-check stored results and traces");
  std::string verify_in, verify_out;
  verify->add_option("input", verify_in, "result file (JSON lines)")->required();
  verify->add_option("--out", verify_out, "output verification report file");

  // fuzz
  auto* fz = app.add_subcommand("fuzz", "seeded random instances through every family");
  jenchain::FuzzOptions fuzz_opts;
  std::string fuzz_catalog = "all";
  std::string fuzz_mode = "exact";
  int fuzz_n = 0;
  fz->add_option("--seed", fuzz_opts.config.seed, "RNG seed");
  fz->add_option("--trials", fuzz_opts.config.trials, "number of trials");
  fz->add_option("--n-min", fuzz_opts.config.n_min, "minimum vector length");
  fz->add_option("--n-max", fuzz_opts.config.n_max, "maximum vector length");
  fz->add_option("--n", fuzz_n, "fixed vector length (sets both bounds)");
  fz->add_option("--N-min", fuzz_opts.config.N_min, "minimum chain steps");
  fz->add_option("--N-max", fuzz_opts.config.N_max, "maximum chain steps");
  fz->add_option("--N", fuzz_opts.config.N_max, "maximum chain steps (alias)");
  fz->add_option("--catalog", fuzz_catalog, "comma-separated function kinds, or 'all'");
  fz->add_option("--denominator-max", fuzz_opts.config.denominator_max, "max weight denominator");
  fz->add_option("--mode", fuzz_mode, "exact|float point generation");
  fz->add_option("--out", fuzz_opts.out, "aggregate JSON report path");
  fz->add_option("--csv", fuzz_opts.csv, "CSV summary path");

  // report
  auto* report = app.add_subcommand("report", "summarize results or a fuzz report as CSV");
  std::string report_in, report_out;
  report->add_option("input", report_in, "result file or aggregate fuzz report")->required();
  report->add_option("--out", report_out, "CSV output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      if (gen_n > 0) {
        gen_opts.n_min = gen_n;
        gen_opts.n_max = gen_n;
      }
      gen_opts.catalog = parse_catalog(gen_catalog);
      gen_opts.mode = parse_mode(gen_mode);
      return jenchain::cmd_gen(gen_opts);
    }
    if (run->parsed()) return jenchain::cmd_run(run_in, run_out);
    if (verify->parsed()) return jenchain::cmd_verify(verify_in, verify_out);
    if (fz->parsed()) {
      if (fuzz_n > 0) {
        fuzz_opts.config.n_min = fuzz_n;
        fuzz_opts.config.n_max = fuzz_n;
      }
      fuzz_opts.config.catalog = parse_catalog(fuzz_catalog);
      fuzz_opts.config.mode = parse_mode(fuzz_mode);
      return jenchain::cmd_fuzz(fuzz_opts);
    }
    if (report->parsed()) return jenchain::cmd_report(report_in, report_out);
  } catch (const jenchain::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return jenchain::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
