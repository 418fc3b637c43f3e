// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jenchain/fuzz.hpp"

namespace jenchain {

/// CLI command implementations, callable from tests. All of them return the
/// process exit code: 0 pass, 1 verification failure, 2 usage/config, 3 IO,
/// and throw jenchain::Error for conditions the caller maps the same way.

struct GenOptions {
  std::uint64_t seed = 1;
  int count = 10;
  int n_min = 2;
  int n_max = 6;
  int N = 3;
  std::string family = "mixed";      // one family name, or "mixed" to cycle
  std::vector<FnKind> catalog;       // empty = all
  int denominator_max = 10000;
  PointMode mode = PointMode::exact;
  std::string out;
};

int cmd_gen(const GenOptions& opts);

int cmd_run(const std::string& instances_path, const std::string& out_path, int threads = 0);

int cmd_verify(const std::string& results_path, const std::string& out_path);

struct FuzzOptions {
  FuzzConfig config;
  std::string out;                   // aggregate JSON report
  std::string csv;                   // optional CSV summary
};

int cmd_fuzz(const FuzzOptions& opts);

int cmd_report(const std::string& in_path, const std::string& out_path);

}  // namespace jenchain
