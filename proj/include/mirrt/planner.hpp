#pragma once

#include "mirrt/geometry.hpp"
#include "mirrt/samplers.hpp"
#include "mirrt/tree.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mirrt {

enum class Variant { UniformRRTStar, InformedRRTStar, MixedStrategyRRTStar };

/// Which probability inflates the rewire radius: the running guess p_k or the
/// clamp p_max.
enum class RewirePhi { Instantaneous, Maximum };

/// Measure entering the rewire constant: the bounds volume, or the volume of
/// the current informed set (never more than the bounds volume).
enum class GammaMeasure { Bounds, InformedSet };

enum class Termination { BudgetExhausted, EarlyStop, InformedSetEmpty };

enum class SampleSource { Uniform, Goal, Informed, Local, None };

enum class TraceEvent { None, Improved, Starved };

struct Budget {
  std::optional<std::size_t> max_iterations;
  std::optional<double> max_wall_time_ms;
};

struct PlannerConfig {
  Variant variant = Variant::MixedStrategyRRTStar;
  /// Steering step; 0.1 x bounds diameter when unset.
  std::optional<double> steer_step;
  /// Fixed rewire constant; overrides gamma_measure when set.
  std::optional<double> gamma;
  GammaMeasure gamma_measure = GammaMeasure::Bounds;
  double r0 = 0.02;
  double nu = 0.999;
  double p0 = 0.99;
  double p_max = 0.99;
  /// Goal bias used until a first solution exists.
  double goal_bias = 0.05;
  /// Every this many iterations without a solution the goal itself is drawn.
  std::size_t goal_connect_period = 50;
  RewirePhi rewire_phi = RewirePhi::Instantaneous;
  std::uint64_t seed = 0;
  Budget budget{200000, std::nullopt};
  /// Stop as soon as the incumbent cost drops strictly below this value.
  std::optional<double> early_stop_cost;
  bool record_trace = true;

  /// Test hook: overrides the local-sampling probability without clamping
  /// (1.0 samples the tube exclusively).
  std::optional<double> pinned_local_probability;
  /// Test hook: collision-free start-to-goal route loaded as the initial
  /// incumbent.
  std::optional<std::vector<Configuration>> initial_route;
};

struct TraceRecord {
  std::size_t iteration = 0;
  double elapsed_ms = 0.0;
  double cost = 0.0;
  double p = 0.0;
  SampleSource strategy = SampleSource::None;
  double measure = 0.0;
  TraceEvent event = TraceEvent::None;
};

struct PlanResult {
  std::optional<Path> best_path;
  double best_cost = 0.0;
  std::size_t iterations = 0;
  /// Iteration of the first solution, if any.
  std::optional<std::size_t> first_solution_iteration;
  std::vector<TraceRecord> trace;
  Termination termination = Termination::BudgetExhausted;
  double elapsed_ms = 0.0;
  std::size_t tree_size = 0;
};

/// State handed to the observer after every iteration.
struct IterationView {
  const Tree& tree;
  const TraceRecord& record;
  /// Sample drawn this iteration (absent when sampling starved).
  const Configuration* sample;
  /// Incumbent cost the sample was drawn against.
  double cost_before;
};

using IterationObserver = std::function<void(const IterationView& view)>;

/// Anytime RRT* with uniform, informed or mixed-strategy sampling.
/// Deterministic for a fixed seed (apart from elapsed times).
PlanResult plan(const Problem& problem, const PlannerConfig& config, const IterationObserver& observer = {});

std::string to_string(Variant v);
std::string to_string(Termination t);
std::string to_string(SampleSource s);
std::string to_string(TraceEvent e);
/// Accepts "uniform", "informed", "mi" and the full variant names.
std::optional<Variant> parse_variant(const std::string& name);

/// Writes `iteration,elapsed_ms,cost,p,strategy,measure,event` rows.
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);

}  // namespace mirrt
