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

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "concord/error.hpp"
#include "concord/certificates.hpp"
#include "concord/model.hpp"
#include "concord/synth.hpp"
#include "concord_cli/cli.hpp"

namespace concord::cli {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("plan field '") + key + "': " + e.what());
  }
}

std::vector<double> number_list(const json& value, const char* what) {
  if (value.is_number()) return {value.get<double>()};
  if (!value.is_array()) {
    throw ParseError(std::string(what) + " must be a number or a list");
  }
  std::vector<double> out;
  for (const auto& v : value) {
    if (!v.is_number()) {
      throw ParseError(std::string(what) + " entries must be numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

LambdaSpec parse_lambda(const json& value) {
  LambdaSpec spec;
  if (value.is_number() || value.is_array()) {
    spec.values = number_list(value, "lambda");
  } else if (value.is_object() && value.contains("fractions")) {
    spec.fractions = number_list(value.at("fractions"), "lambda.fractions");
  } else if (value.is_object() && value.contains("grid")) {
    spec.grid = get_or<int>(value, "grid", 0);
    spec.pick = get_or<std::vector<int>>(value, "pick", {});
  } else {
    throw ParseError(
        "lambda must be a number, a list, {\"fractions\": [...]}, or "
        "{\"grid\": k}");
  }
  return spec;
}

// Expanded row: one penalty of one cell.
struct RowPlan {
  std::size_t cell = 0;
  double lambda = 0.0;
};

struct Task {
  std::size_t row = 0;
  std::size_t variant = 0;
  int rep = 0;
};

struct Outcome {
  bool ok = false;
  int iterations = 0;
  double seconds = 0.0;
  double nz_pct = 0.0;
  std::string error;
};

std::vector<double> penalties(const LambdaSpec& spec,
                              const CovarianceMatrix& s) {
  if (!spec.values.empty()) return spec.values;
  if (!spec.fractions.empty()) {
    const double top = lambda_max(s);
    std::vector<double> out;
    for (double f : spec.fractions) out.push_back(f * top);
    return out;
  }
  const auto grid = lambda_grid(s, spec.grid);
  if (spec.pick.empty()) return grid;
  std::vector<double> out;
  for (int k : spec.pick) {
    if (k < 0 || k >= static_cast<int>(grid.size())) {
      throw InvalidArgument("lambda.pick index " + std::to_string(k) +
                            " outside grid of " + std::to_string(grid.size()));
    }
    out.push_back(grid[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace

void BenchPlan::validate() const {
  if (cells.empty()) throw InvalidArgument("bench plan has no cells");
  if (variants.empty()) throw InvalidArgument("bench plan has no variants");
  if (repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
  for (const auto& cell : cells) {
    SynthSpec{cell.p, cell.pairs, cell.n, cell.seed}.validate();
    const auto& l = cell.lambda;
    if (l.values.empty() && l.fractions.empty() && l.grid < 2) {
      throw InvalidArgument("each cell needs lambda values, fractions, or a "
                            "grid of at least 2");
    }
    for (double v : l.values) {
      if (!(v >= 0.0)) throw InvalidArgument("lambda must be >= 0");
    }
    for (double v : l.fractions) {
      if (!(v >= 0.0)) throw InvalidArgument("lambda fractions must be >= 0");
    }
  }
  SolverConfig config;
  config.eps_subg = eps_subg;
  config.eps_func = eps_func;
  config.max_iter = max_iter;
  config.validate();
}

std::vector<std::string> BenchPlan::variant_names() const {
  std::vector<std::string> out;
  for (auto v : variants) out.emplace_back(variant_name(v));
  return out;
}

BenchPlan parse_bench_plan(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("plan is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("plan must be a JSON object");

  BenchPlan plan;
  plan.repetitions = get_or<int>(doc, "repetitions", 1);
  plan.eps_subg = get_or<double>(doc, "eps_subg", plan.eps_subg);
  plan.eps_func = get_or<double>(doc, "eps_func", plan.eps_func);
  plan.max_iter = get_or<int>(doc, "max_iter", plan.max_iter);
  plan.center = get_or<bool>(doc, "center", true);
  for (const auto& name : get_or<std::vector<std::string>>(
           doc, "variants", {"concord", "ccista_0", "ccfista_1"})) {
    try {
      plan.variants.push_back(parse_variant(name));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }
  if (!doc.contains("cells") || !doc.at("cells").is_array()) {
    throw ParseError("plan needs a \"cells\" list");
  }
  for (const auto& c : doc.at("cells")) {
    if (!c.is_object() || !c.contains("p") || !c.contains("n") ||
        !c.contains("lambda")) {
      throw ParseError("each cell needs \"p\", \"n\", and \"lambda\"");
    }
    const auto p = get_or<Index>(c, "p", 0);
    if (p < 1) throw ParseError("cell p must be >= 1");
    const auto pairs = get_or<std::size_t>(c, "pairs", default_pairs(p));
    const auto seed = get_or<std::uint64_t>(c, "seed", 0);
    const auto lambda = parse_lambda(c.at("lambda"));
    for (double n : number_list(c.at("n"), "n")) {
      if (!(n >= 1.0) || n != static_cast<double>(static_cast<Index>(n))) {
        throw ParseError("n must be a positive integer");
      }
      plan.cells.push_back({p, static_cast<Index>(n), pairs, seed, lambda});
    }
  }
  try {
    plan.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return plan;
}

int default_workers() {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* env = std::getenv("CONCORD_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) workers = std::min(workers, cap);
  }
  return workers;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<io::BenchRow> run_bench(const BenchPlan& plan,
                                    const BenchOptions& options) {
  plan.validate();

  std::vector<DataMatrix> data;
  std::vector<RowPlan> rows;
  std::vector<io::BenchRow> table;
  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    const auto& cell = plan.cells[c];
    const auto truth = generate_sparse_concentration(
        {cell.p, cell.pairs, cell.n, cell.seed});
    data.push_back(sample_gaussian(truth, cell.n, cell.seed));
    const auto s = sample_covariance(data.back(), plan.center);
    for (double lambda : penalties(cell.lambda, s)) {
      rows.push_back({c, lambda});
      io::BenchRow row;
      row.p = cell.p;
      row.n = cell.n;
      row.lambda = lambda;
      row.cells.resize(plan.variants.size());
      table.push_back(std::move(row));
    }
  }

  std::vector<Task> tasks;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t v = 0; v < plan.variants.size(); ++v) {
      for (int rep = 0; rep < plan.repetitions; ++rep) {
        tasks.push_back({r, v, rep});
      }
    }
  }
  std::vector<Outcome> outcomes(tasks.size());

  auto execute = [&](std::size_t t) {
    const Task& task = tasks[t];
    const RowPlan& row = rows[task.row];
    const auto& cell = plan.cells[row.cell];
    Outcome& out = outcomes[t];
    try {
      SolverConfig config;
      config.variant = plan.variants[task.variant];
      config.eps_subg = plan.eps_subg;
      config.eps_func = plan.eps_func;
      config.max_iter = plan.max_iter;
      const auto result =
          solve(data[row.cell], PenaltyMatrix::uniform(cell.p, row.lambda),
                config, plan.center);
      out.ok = true;
      out.iterations = result.iterations;
      out.seconds = result.seconds;
      out.nz_pct = result.estimate.nz_percent();
      if (options.trace_dir && task.rep == 0) {
        const auto name = "row" + std::to_string(task.row + 1) + "_p" +
                          std::to_string(cell.p) + "_n" +
                          std::to_string(cell.n) + "_" +
                          std::string(variant_name(config.variant)) + ".csv";
        io::write_trace(result.trace, *options.trace_dir / name);
      }
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
  };

  const int workers =
      std::max(1, std::min<int>(options.workers, static_cast<int>(tasks.size())));
  if (options.trace_dir) std::filesystem::create_directories(*options.trace_dir);
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) execute(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) execute(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge by task index so the table does not depend on scheduling.
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool have_nz = false;
    for (std::size_t v = 0; v < plan.variants.size(); ++v) {
      std::vector<double> seconds;
      io::BenchCell& cell = table[r].cells[v];
      for (int rep = 0; rep < plan.repetitions; ++rep) {
        const std::size_t t =
            (r * plan.variants.size() + v) * plan.repetitions + rep;
        const Outcome& o = outcomes[t];
        if (!o.ok) {
          cell.ok = false;
          cell.error = o.error;
          seconds.clear();
          break;
        }
        if (rep == 0) {
          cell.iterations = o.iterations;
          if (!have_nz) {
            table[r].nz_pct = o.nz_pct;
            have_nz = true;
          }
        }
        seconds.push_back(o.seconds);
      }
      if (!seconds.empty()) {
        cell.ok = true;
        cell.seconds = median(std::move(seconds));
      }
    }
  }
  return table;
}

}  // namespace concord::cli
