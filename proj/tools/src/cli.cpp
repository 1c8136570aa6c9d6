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

#include "concord_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "concord/certificates.hpp"
#include "concord/error.hpp"
#include "concord/model.hpp"
#include "concord/synth.hpp"

namespace concord::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct SynthArgs {
  Index p = 0;
  std::optional<std::size_t> pairs;
  Index n = 0;
  std::uint64_t seed = 0;
  std::string out_data;
  std::string out_truth;
};

struct SolveArgs {
  std::string data;
  std::string cov;
  bool header = false;
  bool no_center = false;
  double lambda = 0.0;
  std::string variant = "ccista_0";
  double eps_subg = 1e-5;
  double eps_func = 1e-8;
  int max_iter = 1000;
  double tau0 = 1.0;
  double c = 0.5;
  std::string out;
  std::string trace;
};

struct BenchArgs {
  std::string plan;
  std::vector<Index> p;
  std::vector<Index> n;
  std::optional<std::size_t> pairs;
  std::uint64_t seed = 0;
  std::vector<double> lambda;
  std::vector<double> fractions;
  int grid = 0;
  std::vector<std::string> variants;
  int reps = 1;
  double eps_subg = 1e-5;
  double eps_func = 1e-8;
  int max_iter = 1000;
  int threads = 0;
  std::string out;
  std::string errors;
  std::string trace_dir;
};

struct CertifyArgs {
  std::string estimate;
  std::string data;
  std::string cov;
  bool header = false;
  bool no_center = false;
  double lambda = 0.0;
  std::optional<double> tol;
};

// A number JSON can hold; non-finite values become strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  SynthSpec spec;
  spec.p = a.p;
  spec.n = a.n;
  spec.seed = a.seed;
  spec.pairs = a.pairs ? *a.pairs : default_pairs(a.p);
  const auto truth = generate_sparse_concentration(spec);
  const auto data = sample_gaussian(truth, spec.n, spec.seed);
  io::write_dense_csv(data.values(), fs::path(a.out_data));
  if (!a.out_truth.empty()) io::write_sparse_triplets(truth, fs::path(a.out_truth));
  out << "p=" << spec.p << " n=" << spec.n << " nnz=" << truth.nnz()
      << " pairs=" << truth.offdiag_pairs() << " seed=" << spec.seed << '\n';
  return kOk;
}

// Loads S from --cov, or Y (and S from it) from --data.
struct Inputs {
  std::optional<DataMatrix> data;
  std::optional<CovarianceMatrix> cov;
  const CovarianceMatrix& s() const { return *cov; }
};

Inputs load_inputs(const std::string& data, const std::string& cov,
                   bool header, bool center) {
  Inputs in;
  if (!data.empty()) {
    in.data = io::read_dense_csv(fs::path(data), header);
    in.cov = sample_covariance(*in.data, center);
  } else {
    in.cov = io::read_covariance_csv(fs::path(cov), header);
  }
  return in;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  SolverConfig config;
  try {
    config.variant = parse_variant(a.variant);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  config.eps_subg = a.eps_subg;
  config.eps_func = a.eps_func;
  config.max_iter = a.max_iter;
  config.tau0 = a.tau0;
  config.c = a.c;
  const bool center = !a.no_center;

  Inputs in;
  try {
    config.validate();
    in = load_inputs(a.data, a.cov, a.header, center);
    in.s().require_positive_diagonal();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const auto lambda = PenaltyMatrix::uniform(in.s().dim(), a.lambda);

  SolverResult result;
  try {
    result = in.data ? solve(*in.data, lambda, config, center)
                     : solve(in.s(), lambda, config);
  } catch (const StepUnderflowError& e) {
    err << "error: " << e.what() << '\n';
    return kUnderflow;
  }

  if (!a.out.empty()) io::write_sparse_triplets(result.estimate, fs::path(a.out));
  if (!a.trace.empty()) io::write_trace(result.trace, fs::path(a.trace));
  out << "variant=" << variant_name(config.variant)
      << " iterations=" << result.iterations
      << " objective=" << io::format_exact(result.objective)
      << " delta_subg=" << io::format_shortest(result.delta_subg)
      << " seconds=" << io::format_shortest(result.seconds)
      << " converged=" << (result.converged ? "yes" : "no") << '\n';
  return result.converged ? kOk : kMaxIter;
}

BenchPlan plan_from_flags(const BenchArgs& a) {
  BenchPlan plan;
  plan.repetitions = a.reps;
  plan.eps_subg = a.eps_subg;
  plan.eps_func = a.eps_func;
  plan.max_iter = a.max_iter;
  const std::vector<std::string> names =
      a.variants.empty()
          ? std::vector<std::string>{"concord", "ccista_0", "ccfista_1"}
          : a.variants;
  for (const auto& v : names) plan.variants.push_back(parse_variant(v));
  LambdaSpec lambda;
  lambda.values = a.lambda;
  lambda.fractions = a.fractions;
  lambda.grid = a.grid;
  if (a.p.empty() || a.n.empty()) {
    throw InvalidArgument("bench needs --plan, or --p and --n");
  }
  for (Index p : a.p) {
    for (Index n : a.n) {
      if (p < 1) throw InvalidArgument("--p must be >= 1");
      plan.cells.push_back(
          {p, n, a.pairs ? *a.pairs : default_pairs(p), a.seed, lambda});
    }
  }
  plan.validate();
  return plan;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchPlan plan;
  try {
    if (!a.plan.empty()) {
      std::ifstream in(a.plan);
      if (!in) throw ParseError("cannot open plan '" + a.plan + "'");
      const std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
      plan = parse_bench_plan(text);
    } else {
      plan = plan_from_flags(a);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  BenchOptions options;
  options.workers = a.threads > 0 ? a.threads : default_workers();
  if (!a.trace_dir.empty()) options.trace_dir = fs::path(a.trace_dir);
  const auto rows = run_bench(plan, options);
  const auto names = plan.variant_names();
  io::write_bench_table(rows, names, fs::path(a.out));

  std::size_t failures = 0;
  for (const auto& row : rows) {
    for (const auto& cell : row.cells) failures += cell.ok ? 0 : 1;
  }
  if (failures > 0) {
    const fs::path errors =
        a.errors.empty() ? fs::path(a.out + ".errors.csv") : fs::path(a.errors);
    std::ofstream e(errors, std::ios::binary | std::ios::trunc);
    io::write_bench_errors(rows, names, e);
    err << failures << " run(s) failed; see " << errors.string() << '\n';
  }
  out << "rows=" << rows.size() << " variants=" << names.size()
      << " repetitions=" << plan.repetitions << " workers=" << options.workers
      << " failures=" << failures << '\n';
  return kOk;
}

int cmd_certify(const CertifyArgs& a, std::ostream& out, std::ostream& err) {
  const bool center = !a.no_center;
  Inputs in;
  std::optional<ConcentrationMatrix> omega;
  try {
    if (a.tol && !(*a.tol >= 0.0)) throw InvalidArgument("--tol must be >= 0");
    in = load_inputs(a.data, a.cov, a.header, center);
    in.s().require_positive_diagonal();
    omega = io::read_sparse_triplets(fs::path(a.estimate));
    if (omega->dim() != in.s().dim()) {
      throw DimensionError("estimate is " + std::to_string(omega->dim()) +
                           "x" + std::to_string(omega->dim()) +
                           " but the covariance is " +
                           std::to_string(in.s().dim()) + "x" +
                           std::to_string(in.s().dim()));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const auto lambda = PenaltyMatrix::uniform(in.s().dim(), a.lambda);
  // Each violation is bounded by the Frobenius norm of the minimal
  // subgradient, so this default accepts any solve that met eps_subg = 1e-5.
  const double tol = a.tol ? *a.tol : 1e-5 * omega->frobenius_norm();
  const auto report = kkt_check(*omega, in.s(), lambda, tol);
  const auto start = default_initial(in.s());
  const double level = objective(start, in.s(), lambda);
  const auto bounds = level_set_bounds(in.s(), lambda, level);

  json doc;
  doc["kkt"] = {{"diag_violation", number(report.diag_violation)},
                {"nonzero_violation", number(report.nonzero_violation)},
                {"zero_excess", number(report.zero_excess)},
                {"tolerance", number(report.tolerance)},
                {"pass", report.pass}};
  if (in.data) {
    doc["dual_excess_from_data"] =
        number(dual_feasibility_from_data(*in.data, *omega, lambda, center));
  }
  doc["objective"] = number(objective(*omega, in.s(), lambda));
  doc["subgradient_residual"] =
      number(subgradient_residual(*omega, in.s(), lambda));
  doc["level_set"] = {{"level", number(bounds.level)},
                      {"a", number(bounds.lower)},
                      {"log_a", number(bounds.log_lower)},
                      {"b", number(bounds.upper)},
                      {"spectral_norm", number(bounds.spectral_norm)},
                      {"L", number(bounds.lipschitz)}};
  out << doc.dump(2) << '\n';
  return report.pass ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Sparse inverse covariance estimation by convex pseudo-likelihood"};
  app.name("concord");
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a sparse truth and Gaussian data");
  s->add_option("--p", synth.p, "Number of variables")->required()->check(CLI::PositiveNumber);
  s->add_option("--pairs", synth.pairs, "Nonzero off-diagonal pairs (default 5(p-1))");
  s->add_option("--n", synth.n, "Number of observations")->required()->check(CLI::PositiveNumber);
  s->add_option("--seed", synth.seed, "Random seed");
  s->add_option("--out-data", synth.out_data, "Data CSV (n rows, p columns)")->required();
  s->add_option("--out-truth", synth.out_truth, "Truth as i,j,value triplets");

  SolveArgs solve_args;
  auto* v = app.add_subcommand("solve", "Estimate a sparse concentration matrix");
  auto* v_data = v->add_option("--data", solve_args.data, "Observations CSV");
  auto* v_cov = v->add_option("--cov", solve_args.cov, "Covariance CSV");
  v_data->excludes(v_cov);
  v->add_flag("--header", solve_args.header, "Input CSV has a header row");
  v->add_flag("--no-center", solve_args.no_center, "Do not center data columns");
  v->add_option("--lambda", solve_args.lambda, "Penalty weight")->required()->check(CLI::NonNegativeNumber);
  v->add_option("--variant", solve_args.variant,
                "One of: " + variant_list())->capture_default_str();
  v->add_option("--eps-subg", solve_args.eps_subg, "Subgradient tolerance")->capture_default_str();
  v->add_option("--eps-func", solve_args.eps_func, "Relative objective tolerance")->capture_default_str();
  v->add_option("--max-iter", solve_args.max_iter, "Iteration cap")->capture_default_str();
  v->add_option("--tau0", solve_args.tau0, "Initial step size")->capture_default_str();
  v->add_option("--c", solve_args.c, "Backtracking factor")->capture_default_str();
  v->add_option("--out", solve_args.out, "Estimate as i,j,value triplets");
  v->add_option("--trace", solve_args.trace, "Per-iteration trace CSV");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time solver variants over a grid of problems");
  b->add_option("--plan", bench.plan, "JSON plan file");
  b->add_option("--p", bench.p, "Dimensions");
  b->add_option("--n", bench.n, "Sample sizes");
  b->add_option("--pairs", bench.pairs, "Nonzero pairs in each truth (default 5(p-1))");
  b->add_option("--seed", bench.seed, "Random seed");
  b->add_option("--lambda", bench.lambda, "Explicit penalties");
  b->add_option("--lambda-fraction", bench.fractions, "Penalties as fractions of lambda_max");
  b->add_option("--grid", bench.grid, "Log grid of this many penalties");
  b->add_option("--variants", bench.variants, "Variants to compare")->delimiter(',');
  b->add_option("--reps", bench.reps, "Repetitions per run")->capture_default_str();
  b->add_option("--eps-subg", bench.eps_subg, "Subgradient tolerance")->capture_default_str();
  b->add_option("--eps-func", bench.eps_func, "Relative objective tolerance")->capture_default_str();
  b->add_option("--max-iter", bench.max_iter, "Iteration cap")->capture_default_str();
  b->add_option("--threads", bench.threads, "Workers (default: hardware, capped by CONCORD_THREADS)");
  b->add_option("--out", bench.out, "Table CSV")->required();
  b->add_option("--errors", bench.errors, "Failure CSV (default <out>.errors.csv)");
  b->add_option("--trace-dir", bench.trace_dir, "Directory for per-run traces");

  CertifyArgs cert;
  auto* c = app.add_subcommand("certify", "Check optimality conditions of an estimate");
  c->add_option("--estimate", cert.estimate, "Estimate triplets")->required();
  auto* c_data = c->add_option("--data", cert.data, "Observations CSV");
  auto* c_cov = c->add_option("--cov", cert.cov, "Covariance CSV");
  c_data->excludes(c_cov);
  c->add_flag("--header", cert.header, "Input CSV has a header row");
  c->add_flag("--no-center", cert.no_center, "Do not center data columns");
  c->add_option("--lambda", cert.lambda, "Penalty weight")->required()->check(CLI::NonNegativeNumber);
  c->add_option("--tol", cert.tol, "Tolerance on each optimality violation (default 1e-5 ||Omega||_F)");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("concord");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if ((v->parsed() && solve_args.data.empty() && solve_args.cov.empty()) ||
        (c->parsed() && cert.data.empty() && cert.cov.empty())) {
      throw CLI::ValidationError("exactly one of --data or --cov is required");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (s->parsed()) return cmd_synth(synth, out);
    if (v->parsed()) return cmd_solve(solve_args, out, err);
    if (b->parsed()) return cmd_bench(bench, out, err);
    if (c->parsed()) return cmd_certify(cert, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace concord::cli
