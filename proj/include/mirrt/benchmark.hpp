#pragma once

#include "mirrt/geometry.hpp"
#include "mirrt/planner.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace mirrt {

/// Hollow-spherinder narrow-passage world in [-5, 5]^n. The cavity radius is
/// chosen so that the cavity holds half of the cylinder's cross-section
/// volume; start and goal sit a quarter of the wall thickness above the
/// cavity, just outside the cylinder's ends.
struct NarrowPassageSpec {
  std::size_t n = 2;
  double length = 1.0;
  double outer_radius = 1.0;
  double cavity_radius = 0.5;
  double offset_a = 0.625;

  static NarrowPassageSpec for_dimension(std::size_t n);
  Configuration start() const;
  Configuration goal() const;
};

/// Edge resolution used by the narrow-passage problems.
inline constexpr double kNarrowPassageResolution = 0.01;

Problem make_narrow_passage(std::size_t n);

struct NarrowPassageMinima {
  /// Route through the cavity (shorter; the global optimum).
  double through_passage = 0.0;
  /// Route over the outer wall (the local optimum).
  double around = 0.0;

  double global() const { return std::min(through_passage, around); }
  double local() const { return std::max(through_passage, around); }
};

NarrowPassageMinima analytic_minima(std::size_t n);

enum class SweepParameter { R0, Nu };

std::string to_string(SweepParameter p);

struct SweepSpec {
  std::string problem = "narrow_passage";
  std::vector<std::size_t> dims{2};
  SweepParameter parameter = SweepParameter::R0;
  std::vector<double> values{0.02};
  std::vector<Variant> variants{Variant::MixedStrategyRRTStar};
  std::size_t repetitions = 1;
  std::size_t iteration_cap = 200000;
  double early_stop_multiplier = 1.01;
  /// Values of the parameter that is not swept.
  double r0 = 0.02;
  double nu = 0.999;
  double p0 = 0.99;
  std::uint64_t base_seed = 0;
  GammaMeasure gamma_measure = GammaMeasure::Bounds;
  /// Steering step; planner default when unset.
  std::optional<double> steer_step;
};

/// Throws UsageError listing what is wrong.
void validate(const SweepSpec& spec);

struct RunRecord {
  std::size_t n = 0;
  Variant variant = Variant::MixedStrategyRRTStar;
  SweepParameter parameter = SweepParameter::R0;
  double value = 0.0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  /// Iterations until the threshold was crossed, or the cap.
  std::size_t iterations = 0;
  bool reached = false;
  double final_cost = 0.0;
  double wall_ms = 0.0;
  /// "ok", or the error message of a failed run.
  std::string status = "ok";
};

/// Stable FNV-1a hash of (problem, n, repetition) mixed with the base seed.
/// Independent of variant and parameter value, so runs are paired.
std::uint64_t run_seed(const std::string& problem, std::size_t n, std::size_t repetition, std::uint64_t base_seed);

using ProgressCallback = std::function<void(const RunRecord& record, std::size_t done, std::size_t total)>;

/// One seeded run per (value, n, variant, repetition). Results are ordered by
/// that enumeration regardless of worker count.
std::vector<RunRecord> run_benchmark(const SweepSpec& spec, std::size_t workers = 1,
                                     const ProgressCallback& progress = {});

struct SummaryRow {
  std::size_t n = 0;
  Variant variant = Variant::MixedStrategyRRTStar;
  SweepParameter parameter = SweepParameter::R0;
  double value = 0.0;
  std::size_t runs = 0;
  double success_rate = 0.0;
  std::vector<double> quantiles;
  std::vector<double> values;

  /// Value for quantile q (must be one of `quantiles`).
  double at(double q) const;
  double median() const { return at(0.5); }
  double p10() const { return at(0.1); }
  double p90() const { return at(0.9); }
};

/// Nearest-rank quantile of an ascending-sorted sample.
double nearest_rank(const std::vector<double>& sorted, double q);

/// Groups by (n, variant, parameter, value); censored runs count at their
/// iteration value (the cap).
std::vector<SummaryRow> aggregate_percentiles(const std::vector<RunRecord>& records,
                                              const std::vector<double>& quantiles = {0.5, 0.1, 0.9});

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace mirrt
