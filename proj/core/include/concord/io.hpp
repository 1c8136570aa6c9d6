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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "concord/solvers.hpp"
#include "concord/types.hpp"

namespace concord::io {

// Dense numeric CSV, one row per line. Blank lines are skipped; empty,
// non-numeric, or non-finite cells and ragged rows raise ParseError with the
// 1-based line and column.
Matrix read_dense_matrix(std::istream& in, bool has_header = false);
Matrix read_dense_matrix(const std::filesystem::path& path,
                         bool has_header = false);

// Rows are observations. The result is not marked centered.
DataMatrix read_dense_csv(const std::filesystem::path& path,
                          bool has_header = false);
CovarianceMatrix read_covariance_csv(const std::filesystem::path& path,
                                     bool has_header = false);

// 17 significant digits, no header.
void write_dense_csv(const Matrix& values, std::ostream& out);
void write_dense_csv(const Matrix& values, const std::filesystem::path& path);

// "i,j,value" header, 1-based indices, the diagonal first and then each
// off-diagonal pair once with i < j, 17 significant digits.
void write_sparse_triplets(const ConcentrationMatrix& omega, std::ostream& out);
void write_sparse_triplets(const ConcentrationMatrix& omega,
                           const std::filesystem::path& path);

// Accepts entries in any order and either triangle. The dimension is the
// largest index seen. Rejects duplicates (including (i,j) next to (j,i)),
// missing or nonpositive diagonal entries, and malformed lines.
ConcentrationMatrix read_sparse_triplets(std::istream& in);
ConcentrationMatrix read_sparse_triplets(const std::filesystem::path& path);

// iter,objective,delta_subg,delta_func,step_size,backtracks,nnz,elapsed_ms
void write_trace(const IterationTrace& trace, std::ostream& out);
void write_trace(const IterationTrace& trace,
                 const std::filesystem::path& path);
// Checks the header, complete rows, and iter strictly increasing from 1.
IterationTrace read_trace(std::istream& in);
IterationTrace read_trace(const std::filesystem::path& path);

inline constexpr const char* kTraceHeader =
    "iter,objective,delta_subg,delta_func,step_size,backtracks,nnz,elapsed_ms";

struct BenchCell {
  bool ok = false;  // false writes NA in both columns
  int iterations = 0;
  double seconds = 0.0;
  std::string error;
};

struct BenchRow {
  Index p = 0;
  Index n = 0;
  double lambda = 0.0;
  double nz_pct = 0.0;
  std::vector<BenchCell> cells;  // one per variant, in header order
};

// Header p,n,lambda,nz_pct,<v>_iter,<v>_seconds,... then one line per row.
// Numbers use the shortest decimal form that reads back exactly.
void write_bench_table(const std::vector<BenchRow>& rows,
                       const std::vector<std::string>& variants,
                       std::ostream& out);
void write_bench_table(const std::vector<BenchRow>& rows,
                       const std::vector<std::string>& variants,
                       const std::filesystem::path& path);

// row,variant,message for every failed cell; header only when none failed.
void write_bench_errors(const std::vector<BenchRow>& rows,
                        const std::vector<std::string>& variants,
                        std::ostream& out);

// Shortest round-trip decimal form.
std::string format_shortest(double value);
// %.17g.
std::string format_exact(double value);

}  // namespace concord::io
