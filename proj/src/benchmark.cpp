#include "mirrt/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

namespace mirrt {

NarrowPassageSpec NarrowPassageSpec::for_dimension(std::size_t n) {
  if (n < 2) throw UsageError("narrow passage: n must be >= 2");
  NarrowPassageSpec spec;
  spec.n = n;
  // Cross-sections are (n-1)-balls, so the volume ratio is (r1/r2)^(n-1).
  spec.cavity_radius = spec.outer_radius * std::pow(2.0, -1.0 / static_cast<double>(n - 1));
  spec.offset_a = (spec.outer_radius + 3.0 * spec.cavity_radius) / 4.0;
  return spec;
}

Configuration NarrowPassageSpec::start() const {
  Configuration x = Configuration::Zero(static_cast<Eigen::Index>(n));
  x[0] = -0.6 * length;
  x[1] = offset_a;
  return x;
}

Configuration NarrowPassageSpec::goal() const {
  Configuration x = start();
  x[0] = 0.6 * length;
  return x;
}

Problem make_narrow_passage(std::size_t n) {
  const auto spec = NarrowPassageSpec::for_dimension(n);
  const auto dim = static_cast<Eigen::Index>(n);
  Bounds bounds{Configuration::Constant(dim, -5.0), Configuration::Constant(dim, 5.0)};
  HollowSpherinder obstacle{spec.length, spec.outer_radius, spec.cavity_radius, 0};
  return make_problem(std::move(bounds), {obstacle}, spec.start(), spec.goal(), kNarrowPassageResolution);
}

NarrowPassageMinima analytic_minima(std::size_t n) {
  const auto spec = NarrowPassageSpec::for_dimension(n);
  auto route = [&](double r) {
    const double dx = 0.1 * spec.length;
    const double dy = r - spec.offset_a;
    return spec.length + 2.0 * std::sqrt(dx * dx + dy * dy);
  };
  return {route(spec.cavity_radius), route(spec.outer_radius)};
}

std::string to_string(SweepParameter p) { return p == SweepParameter::R0 ? "R0" : "nu"; }

void validate(const SweepSpec& spec) {
  std::vector<std::string> errors;
  if (spec.problem != "narrow_passage") errors.push_back("unknown problem '" + spec.problem + "'");
  if (spec.dims.empty()) errors.emplace_back("dims must be nonempty");
  for (auto n : spec.dims) {
    if (n < 2) errors.emplace_back("dims must be >= 2");
  }
  if (spec.values.empty()) errors.emplace_back("values must be nonempty");
  for (double v : spec.values) {
    if (spec.parameter == SweepParameter::R0 && !(v > 0.0)) errors.emplace_back("R0 values must be > 0");
    if (spec.parameter == SweepParameter::Nu && !(v >= 0.0 && v < 1.0)) errors.emplace_back("nu values must lie in [0, 1)");
  }
  if (spec.variants.empty()) errors.emplace_back("variants must be nonempty");
  if (spec.repetitions < 1) errors.emplace_back("repetitions must be >= 1");
  if (spec.iteration_cap < 1) errors.emplace_back("iteration_cap must be >= 1");
  if (!(spec.early_stop_multiplier >= 1.0)) errors.emplace_back("early_stop_multiplier must be >= 1");
  if (!errors.empty()) {
    std::string msg = "invalid sweep spec:";
    for (const auto& e : errors) msg += " " + e + ";";
    throw UsageError(msg);
  }
}

std::uint64_t run_seed(const std::string& problem, std::size_t n, std::size_t repetition, std::uint64_t base_seed) {
  const std::string key = problem + "/n=" + std::to_string(n) + "/rep=" + std::to_string(repetition);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  // splitmix64 finaliser
  std::uint64_t z = h ^ base_seed;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

RunRecord execute(const SweepSpec& spec, const Problem& problem, double threshold, RunRecord record) {
  PlannerConfig config;
  config.variant = record.variant;
  config.r0 = spec.parameter == SweepParameter::R0 ? record.value : spec.r0;
  config.nu = spec.parameter == SweepParameter::Nu ? record.value : spec.nu;
  config.p0 = spec.p0;
  config.seed = record.seed;
  config.budget = Budget{spec.iteration_cap, std::nullopt};
  config.early_stop_cost = threshold;
  config.record_trace = false;
  config.gamma_measure = spec.gamma_measure;
  config.steer_step = spec.steer_step;
  try {
    const PlanResult result = plan(problem, config);
    record.reached = result.termination == Termination::EarlyStop;
    record.iterations = record.reached ? result.iterations : spec.iteration_cap;
    record.final_cost = result.best_cost;
    record.wall_ms = result.elapsed_ms;
  } catch (const std::exception& e) {
    record.reached = false;
    record.iterations = spec.iteration_cap;
    record.final_cost = std::numeric_limits<double>::infinity();
    record.status = std::string("error: ") + e.what();
  }
  return record;
}

}  // namespace

std::vector<RunRecord> run_benchmark(const SweepSpec& spec, std::size_t workers, const ProgressCallback& progress) {
  validate(spec);
  struct Job {
    RunRecord record;
    const Problem* problem;
    double threshold;
  };
  std::map<std::size_t, Problem> problems;
  std::map<std::size_t, double> thresholds;
  for (auto n : spec.dims) {
    problems.emplace(n, make_narrow_passage(n));
    thresholds.emplace(n, spec.early_stop_multiplier * analytic_minima(n).global());
  }

  std::vector<Job> jobs;
  for (double value : spec.values) {
    for (auto n : spec.dims) {
      for (Variant variant : spec.variants) {
        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
          RunRecord r;
          r.n = n;
          r.variant = variant;
          r.parameter = spec.parameter;
          r.value = value;
          r.repetition = rep;
          r.seed = run_seed(spec.problem, n, rep, spec.base_seed);
          jobs.push_back(Job{r, &problems.at(n), thresholds.at(n)});
        }
      }
    }
  }

  std::vector<RunRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      out[i] = execute(spec, *jobs[i].problem, jobs[i].threshold, jobs[i].record);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(out[i], ++done, jobs.size());
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(jobs.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return out;
}

double nearest_rank(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw UsageError("nearest_rank: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw UsageError("nearest_rank: q must lie in [0, 1]");
  const auto count = static_cast<double>(sorted.size());
  // Guard against q * N landing a hair above an integer.
  auto rank = static_cast<std::size_t>(std::ceil(q * count - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

double SummaryRow::at(double q) const {
  for (std::size_t i = 0; i < quantiles.size(); ++i) {
    if (quantiles[i] == q) return values[i];
  }
  throw UsageError("SummaryRow: quantile not computed");
}

std::vector<SummaryRow> aggregate_percentiles(const std::vector<RunRecord>& records,
                                              const std::vector<double>& quantiles) {
  using Key = std::tuple<double, std::size_t, int, int>;
  std::map<Key, std::vector<const RunRecord*>> groups;
  std::vector<Key> order;
  for (const auto& r : records) {
    Key key{r.value, r.n, static_cast<int>(r.variant), static_cast<int>(r.parameter)};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  std::vector<SummaryRow> rows;
  for (const auto& key : order) {
    const auto& group = groups.at(key);
    SummaryRow row;
    row.value = std::get<0>(key);
    row.n = std::get<1>(key);
    row.variant = static_cast<Variant>(std::get<2>(key));
    row.parameter = static_cast<SweepParameter>(std::get<3>(key));
    row.runs = group.size();
    std::vector<double> sample;
    std::size_t successes = 0;
    for (const auto* r : group) {
      sample.push_back(static_cast<double>(r->iterations));
      if (r->reached) ++successes;
    }
    std::sort(sample.begin(), sample.end());
    row.success_rate = static_cast<double>(successes) / static_cast<double>(group.size());
    row.quantiles = quantiles;
    for (double q : quantiles) row.values.push_back(nearest_rank(sample, q));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "n,variant,parameter,value,repetition,seed,iterations,reached,final_cost,wall_ms,status\n";
  for (const auto& r : records) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out << r.n << ',' << to_string(r.variant) << ',' << to_string(r.parameter) << ',' << std::setprecision(12)
        << r.value << ',' << r.repetition << ',' << r.seed << ',' << r.iterations << ',' << (r.reached ? 1 : 0) << ','
        << r.final_cost << ',' << std::fixed << std::setprecision(3) << r.wall_ms << std::defaultfloat << ','
        << status << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "n,variant,parameter,value,runs,success_rate,median,p10,p90\n";
  for (const auto& r : rows) {
    out << r.n << ',' << to_string(r.variant) << ',' << to_string(r.parameter) << ',' << std::setprecision(12)
        << r.value << ',' << r.runs << ',' << r.success_rate << ',' << r.median() << ',' << r.p10() << ',' << r.p90()
        << '\n';
  }
}

}  // namespace mirrt
