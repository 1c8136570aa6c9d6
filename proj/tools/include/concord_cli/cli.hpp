// Copyright 2026 The Concord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "concord/io.hpp"
#include "concord/solvers.hpp"

namespace concord::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,    // certificate failed, I/O error, anything unexpected
  kUsage = 2,      // bad flags or unparsable input
  kMaxIter = 3,    // solve stopped at --max-iter
  kUnderflow = 4,  // line search ran out of backtracks
};

// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// ---------------------------------------------------------------------------
// Benchmark plans

// How a cell picks its penalties. Exactly one member is used, in this order:
// explicit values, fractions of the cell's lambda_max, or a log grid.
struct LambdaSpec {
  std::vector<double> values;
  std::vector<double> fractions;
  int grid = 0;
  std::vector<int> pick;  // 0-based grid positions; all when empty
};

// One (p, n) data set. Rows of the output table are the cell's penalties.
struct BenchCell {
  Index p = 0;
  Index n = 0;
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
  LambdaSpec lambda;
};

struct BenchPlan {
  std::vector<BenchCell> cells;
  std::vector<Variant> variants;
  int repetitions = 1;
  double eps_subg = 1e-5;
  double eps_func = 1e-8;
  int max_iter = 1000;
  bool center = true;

  void validate() const;
  std::vector<std::string> variant_names() const;
};

// JSON form:
//   {"variants": ["concord", "ccista_0"], "repetitions": 3,
//    "eps_subg": 1e-5, "eps_func": 1e-8, "max_iter": 1000, "center": true,
//    "cells": [{"p": 200, "n": [50, 150], "pairs": 995, "seed": 7,
//               "lambda": {"grid": 10, "pick": [2, 4, 6]}}]}
// "n" may be a number or a list (one cell per entry); "lambda" may be a
// number, a list, {"fractions": [...]}, or {"grid": k, "pick": [...]}.
// "pairs" defaults to 5 (p - 1). Throws ParseError.
BenchPlan parse_bench_plan(const std::string& json_text);

struct BenchOptions {
  int workers = 1;
  std::optional<std::filesystem::path> trace_dir;
};

// Every cell x penalty x variant x repetition. Seconds are the median over
// repetitions, iterations come from the first repetition, nz_pct from the
// first variant that succeeded. Rows follow plan order regardless of the
// worker count.
std::vector<io::BenchRow> run_bench(const BenchPlan& plan,
                                    const BenchOptions& options);

// min(hardware threads, CONCORD_THREADS), at least 1.
int default_workers();

double median(std::vector<double> values);

}  // namespace concord::cli
