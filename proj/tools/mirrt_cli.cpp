#include "mirrt/benchmark.hpp"
#include "mirrt/io.hpp"
#include "mirrt/planner.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;

namespace {

enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kInvalidProblem = 3 };

struct SolveOptions {
  fs::path problem;
  std::string variant = "mi";
  double r0 = 0.02;
  double nu = 0.999;
  double p0 = 0.99;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_iters;
  std::optional<double> max_time_ms;
  std::optional<double> early_stop_cost;
  fs::path out = ".";
};

struct BenchOptions {
  fs::path sweep;
  fs::path out = ".";
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw mirrt::InputError("cannot create output directory '" + dir.string() + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw mirrt::InputError("cannot write '" + path.string() + "'");
  out << text;
}

int run_validate(const fs::path& file) {
  const mirrt::Problem problem = mirrt::load_problem(file);
  const auto violations = mirrt::problem_violations(problem);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid: " << v << '\n';
    return kInvalidProblem;
  }
  std::cout << "dimension=" << problem.dimension() << " c_min=" << problem.c_min() << " u=" << problem.lower_bound_u
            << '\n';
  return kOk;
}

int run_solve(const SolveOptions& opt) {
  const auto variant = mirrt::parse_variant(opt.variant);
  if (!variant) throw mirrt::InputError("--variant: expected uniform, informed or mi");
  const mirrt::Problem problem = mirrt::load_problem(opt.problem);
  if (auto violations = mirrt::problem_violations(problem); !violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid: " << v << '\n';
    return kInvalidProblem;
  }
  ensure_dir(opt.out);

  mirrt::PlannerConfig config;
  config.variant = *variant;
  config.r0 = opt.r0;
  config.nu = opt.nu;
  config.p0 = opt.p0;
  config.seed = opt.seed;
  config.early_stop_cost = opt.early_stop_cost;
  config.budget = mirrt::Budget{opt.max_iters, opt.max_time_ms};
  if (!opt.max_iters && !opt.max_time_ms) config.budget.max_iterations = 200000;

  const mirrt::PlanResult result = mirrt::plan(problem, config);

  const std::string stem =
      opt.problem.stem().string() + "_" + mirrt::to_string(*variant) + "_" + std::to_string(opt.seed);
  {
    std::ofstream trace(opt.out / (stem + ".csv"));
    if (!trace) throw mirrt::InputError("cannot write trace file");
    mirrt::write_trace_csv(trace, result.trace);
  }
  if (result.best_path) write_text(opt.out / (stem + "_path.json"), mirrt::path_to_json(*result.best_path) + "\n");

  std::cout << std::setprecision(12) << "cost=" << result.best_cost << " iterations=" << result.iterations
            << " time_ms=" << std::fixed << std::setprecision(1) << result.elapsed_ms
            << " termination=" << mirrt::to_string(result.termination) << '\n';
  return kOk;
}

int run_bench(const BenchOptions& opt) {
  const mirrt::SweepSpec spec = mirrt::load_sweep(opt.sweep);
  ensure_dir(opt.out);
  const auto records = mirrt::run_benchmark(spec, opt.workers,
                                            [](const mirrt::RunRecord& r, std::size_t done, std::size_t total) {
                                              std::cerr << '[' << done << '/' << total << "] n=" << r.n
                                                        << " variant=" << mirrt::to_string(r.variant) << ' '
                                                        << mirrt::to_string(r.parameter) << '=' << r.value
                                                        << " rep=" << r.repetition << " iterations=" << r.iterations
                                                        << (r.reached ? "" : " (not reached)") << '\n';
                                            });
  {
    std::ofstream runs(opt.out / "runs.csv");
    if (!runs) throw mirrt::InputError("cannot write runs.csv");
    mirrt::write_runs_csv(runs, records);
  }
  {
    std::ofstream summary(opt.out / "summary.csv");
    if (!summary) throw mirrt::InputError("cannot write summary.csv");
    mirrt::write_summary_csv(summary, mirrt::aggregate_percentiles(records));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-strategy informed RRT* planner and narrow-passage benchmark"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Plan on a problem file; writes a trace CSV and the solution path");
  solve_cmd->add_option("problem", solve.problem, "Problem JSON file")->required();
  solve_cmd->add_option("--variant", solve.variant, "uniform | informed | mi")
      ->check(CLI::IsMember({"uniform", "informed", "mi"}));
  solve_cmd->add_option("--r0", solve.r0, "Local tube radius coefficient")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--nu", solve.nu, "Forgetting factor in [0, 1)")->check(CLI::Range(0.0, 0.999999999));
  solve_cmd->add_option("--p0", solve.p0, "Initial local-sampling probability")->check(CLI::Range(1e-12, 1.0));
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("--max-iters", solve.max_iters, "Iteration budget");
  solve_cmd->add_option("--max-time-ms", solve.max_time_ms, "Wall-time budget in milliseconds");
  solve_cmd->add_option("--early-stop-cost", solve.early_stop_cost, "Stop once the cost drops below this value");
  solve_cmd->add_option("--out", solve.out, "Output directory");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a parameter sweep; writes runs.csv and summary.csv");
  bench_cmd->add_option("sweep", bench.sweep, "Sweep JSON file")->required();
  bench_cmd->add_option("--out", bench.out, "Output directory");
  bench_cmd->add_option("--workers", bench.workers, "Concurrent runs")->check(CLI::PositiveNumber);

  fs::path validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a problem file's invariants");
  validate_cmd->add_option("problem", validate_file, "Problem JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*bench_cmd) return run_bench(bench);
    if (*validate_cmd) return run_validate(validate_file);
  } catch (const mirrt::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const mirrt::InvalidProblem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidProblem;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
