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

#include "concord/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <utility>

#include "concord/error.hpp"

namespace concord::io {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view cell, std::size_t line,
                    std::size_t column) {
  if (cell.empty()) throw ParseError("empty cell", line, column);
  std::string_view body = cell;
  if (body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("number out of range: '" + std::string(cell) + "'", line,
                     column);
  }
  if (ec != std::errc() || ptr != body.data() + body.size()) {
    throw ParseError("not a number: '" + std::string(cell) + "'", line, column);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite value: '" + std::string(cell) + "'", line,
                     column);
  }
  return value;
}

long long parse_integer(std::string_view cell, std::size_t line,
                        std::size_t column) {
  if (cell.empty()) throw ParseError("empty cell", line, column);
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("not an integer: '" + std::string(cell) + "'", line,
                     column);
  }
  return value;
}

bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

std::string format_shortest(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return format_exact(value);
  return std::string(buf, ptr);
}

std::string format_exact(double value) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

// ---------------------------------------------------------------------------
// Dense matrices

Matrix read_dense_matrix(std::istream& in, bool has_header) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cells = split(line);
    if (rows == 0) {
      cols = cells.size();
    } else if (cells.size() != cols) {
      throw ParseError("ragged row: expected " + std::to_string(cols) +
                           " columns, found " + std::to_string(cells.size()),
                       line_no, 0);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      values.push_back(parse_double(cells[c], line_no, c + 1));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("no data rows", line_no, 0);
  Matrix out(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out(static_cast<Index>(r), static_cast<Index>(c)) = values[r * cols + c];
    }
  }
  return out;
}

Matrix read_dense_matrix(const std::filesystem::path& path, bool has_header) {
  auto in = open_in(path);
  try {
    return read_dense_matrix(in, has_header);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

DataMatrix read_dense_csv(const std::filesystem::path& path, bool has_header) {
  return DataMatrix(read_dense_matrix(path, has_header), false);
}

CovarianceMatrix read_covariance_csv(const std::filesystem::path& path,
                                     bool has_header) {
  Matrix m = read_dense_matrix(path, has_header);
  try {
    return CovarianceMatrix(std::move(m));
  } catch (const Error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_dense_csv(const Matrix& values, std::ostream& out) {
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_exact(values(r, c));
    }
    out << '\n';
  }
}

void write_dense_csv(const Matrix& values, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_dense_csv(values, out);
  finish(out, path);
}

// ---------------------------------------------------------------------------
// Sparse triplets

void write_sparse_triplets(const ConcentrationMatrix& omega,
                           std::ostream& out) {
  out << "i,j,value\n";
  for (Index i = 0; i < omega.dim(); ++i) {
    out << i + 1 << ',' << i + 1 << ',' << format_exact(omega.diag()(i))
        << '\n';
  }
  for (const auto& e : omega.upper()) {
    out << e.row + 1 << ',' << e.col + 1 << ',' << format_exact(e.value)
        << '\n';
  }
}

void write_sparse_triplets(const ConcentrationMatrix& omega,
                           const std::filesystem::path& path) {
  auto out = open_out(path);
  write_sparse_triplets(omega, out);
  finish(out, path);
}

ConcentrationMatrix read_sparse_triplets(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::map<std::pair<Index, Index>, double> entries;
  Index dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (!saw_header) {
      if (trim(line) != "i,j,value") {
        throw ParseError("expected header 'i,j,value'", line_no, 1);
      }
      saw_header = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != 3) {
      throw ParseError("expected 3 fields, found " +
                           std::to_string(cells.size()),
                       line_no, 0);
    }
    const long long i = parse_integer(cells[0], line_no, 1);
    const long long j = parse_integer(cells[1], line_no, 2);
    if (i < 1) throw ParseError("row index must be >= 1", line_no, 1);
    if (j < 1) throw ParseError("column index must be >= 1", line_no, 2);
    const double v = parse_double(cells[2], line_no, 3);
    const auto lo = static_cast<Index>(std::min(i, j) - 1);
    const auto hi = static_cast<Index>(std::max(i, j) - 1);
    if (i == j && !(v > 0.0)) {
      throw ParseError("nonpositive diagonal entry at (" + std::to_string(i) +
                           "," + std::to_string(j) + ")",
                       line_no, 3);
    }
    if (!entries.emplace(std::make_pair(lo, hi), v).second) {
      throw ParseError("duplicate entry (" + std::to_string(lo + 1) + "," +
                           std::to_string(hi + 1) + ")",
                       line_no, 0);
    }
    dim = std::max(dim, hi + 1);
  }
  if (!saw_header) throw ParseError("empty triplet file", line_no, 0);
  if (dim == 0) throw ParseError("triplet file has no entries", line_no, 0);
  Vector diag = Vector::Zero(dim);
  std::vector<OffDiagEntry> upper;
  for (const auto& [key, value] : entries) {
    if (key.first == key.second) {
      diag(key.first) = value;
    } else {
      upper.push_back({key.first, key.second, value});
    }
  }
  for (Index i = 0; i < dim; ++i) {
    if (diag(i) == 0.0) {
      throw ParseError("missing diagonal entry (" + std::to_string(i + 1) +
                       "," + std::to_string(i + 1) + ")");
    }
  }
  return ConcentrationMatrix(std::move(diag), std::move(upper));
}

ConcentrationMatrix read_sparse_triplets(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_sparse_triplets(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

// ---------------------------------------------------------------------------
// Traces

void write_trace(const IterationTrace& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace) {
    out << r.iter << ',' << format_exact(r.objective) << ','
        << format_exact(r.delta_subg) << ',' << format_exact(r.delta_func)
        << ',' << format_exact(r.step_size) << ',' << r.backtracks << ','
        << r.nnz << ',' << format_exact(r.elapsed_ms) << '\n';
  }
}

void write_trace(const IterationTrace& trace,
                 const std::filesystem::path& path) {
  auto out = open_out(path);
  write_trace(trace, out);
  finish(out, path);
}

IterationTrace read_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  IterationTrace trace;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (!saw_header) {
      if (trim(line) != kTraceHeader) {
        throw ParseError("unexpected trace header", line_no, 1);
      }
      saw_header = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != 8) {
      throw ParseError("expected 8 fields, found " +
                           std::to_string(cells.size()),
                       line_no, 0);
    }
    IterationRecord r;
    r.iter = static_cast<int>(parse_integer(cells[0], line_no, 1));
    r.objective = parse_double(cells[1], line_no, 2);
    r.delta_subg = parse_double(cells[2], line_no, 3);
    r.delta_func = parse_double(cells[3], line_no, 4);
    r.step_size = parse_double(cells[4], line_no, 5);
    r.backtracks = static_cast<int>(parse_integer(cells[5], line_no, 6));
    const long long nnz = parse_integer(cells[6], line_no, 7);
    if (nnz < 0) throw ParseError("negative nnz", line_no, 7);
    r.nnz = static_cast<std::size_t>(nnz);
    r.elapsed_ms = parse_double(cells[7], line_no, 8);
    const int expected = trace.empty() ? 1 : trace.back().iter + 1;
    if (r.iter != expected) {
      throw ParseError("iter must be " + std::to_string(expected), line_no, 1);
    }
    trace.push_back(r);
  }
  if (!saw_header) throw ParseError("empty trace file", line_no, 0);
  return trace;
}

IterationTrace read_trace(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_trace(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

// ---------------------------------------------------------------------------
// Benchmark tables

void write_bench_table(const std::vector<BenchRow>& rows,
                       const std::vector<std::string>& variants,
                       std::ostream& out) {
  out << "p,n,lambda,nz_pct";
  for (const auto& v : variants) out << ',' << v << "_iter," << v << "_seconds";
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != variants.size()) {
      throw InvalidArgument("bench row " + std::to_string(r) + " has " +
                            std::to_string(row.cells.size()) +
                            " cells for " + std::to_string(variants.size()) +
                            " variants");
    }
    out << row.p << ',' << row.n << ',' << format_shortest(row.lambda) << ','
        << format_shortest(row.nz_pct);
    for (const auto& cell : row.cells) {
      if (cell.ok) {
        out << ',' << cell.iterations << ',' << format_shortest(cell.seconds);
      } else {
        out << ",NA,NA";
      }
    }
    out << '\n';
  }
}

void write_bench_table(const std::vector<BenchRow>& rows,
                       const std::vector<std::string>& variants,
                       const std::filesystem::path& path) {
  auto out = open_out(path);
  write_bench_table(rows, variants, out);
  finish(out, path);
}

void write_bench_errors(const std::vector<BenchRow>& rows,
                        const std::vector<std::string>& variants,
                        std::ostream& out) {
  out << "row,variant,message\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t v = 0; v < rows[r].cells.size(); ++v) {
      const auto& cell = rows[r].cells[v];
      if (cell.ok) continue;
      std::string msg = cell.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
      }
      out << r + 1 << ',' << (v < variants.size() ? variants[v] : "?") << ','
          << msg << '\n';
    }
  }
}

}  // namespace concord::io
