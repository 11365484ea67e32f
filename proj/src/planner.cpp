#include "mirrt/planner.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace mirrt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Draw {
  std::optional<Configuration> x;
  SampleSource source = SampleSource::None;
  bool starved = false;
  bool informed_empty = false;
};

void validate(const PlannerConfig& c) {
  if (c.steer_step && !(*c.steer_step > 0.0)) throw UsageError("planner: steer_step must be > 0");
  if (c.gamma && !(*c.gamma > 0.0)) throw UsageError("planner: gamma must be > 0");
  if (!(c.r0 > 0.0)) throw UsageError("planner: r0 must be > 0");
  if (!c.budget.max_iterations && !c.budget.max_wall_time_ms) throw UsageError("planner: empty budget");
  if (!(c.goal_bias >= 0.0 && c.goal_bias < 1.0)) throw UsageError("planner: goal_bias must lie in [0, 1)");
  if (c.pinned_local_probability && !(*c.pinned_local_probability >= 0.0 && *c.pinned_local_probability <= 1.0)) {
    throw UsageError("planner: pinned probability must lie in [0, 1]");
  }
}

}  // namespace

PlanResult plan(const Problem& problem, const PlannerConfig& config, const IterationObserver& observer) {
  validate(config);
  if (auto violations = problem_violations(problem); !violations.empty()) throw InvalidProblem(std::move(violations));

  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); };

  const std::size_t n = problem.dimension();
  const double eta = config.steer_step.value_or(0.1 * problem.bounds.diameter());
  const double c_min = problem.c_min();
  const double bounds_gamma = default_gamma(problem.bounds);
  auto gamma_at = [&](double c_k) {
    if (config.gamma) return *config.gamma;
    if (config.gamma_measure == GammaMeasure::Bounds || !std::isfinite(c_k) ||
        config.variant == Variant::UniformRRTStar) {
      return bounds_gamma;
    }
    const double measure = informed_set_measure(std::max(c_k, c_min), c_min, n);
    return std::min(bounds_gamma, gamma_for_measure(measure, n));
  };
  const double u = problem.lower_bound_u;
  const EllipsoidFrame frame = EllipsoidFrame::from(problem.start, problem.goal);

  Rng rng(config.seed);
  GuessState guess = GuessState::initial(config.p0, config.nu, config.p_max);
  Tree tree(problem.start, problem.goal);

  PlanResult result;
  std::optional<Path> incumbent;
  if (config.initial_route) {
    seed_route(tree, problem, *config.initial_route, eta);
    incumbent = extract_solution(tree);
    result.first_solution_iteration = 0;
  }

  auto local_probability = [&]() -> double {
    if (config.pinned_local_probability) return *config.pinned_local_probability;
    switch (config.variant) {
      case Variant::MixedStrategyRRTStar:
        return guess.p;
      default:
        return 0.0;
    }
  };

  auto draw_informed = [&](double c_k, Draw& d) {
    SampleResult s = sample_informed(rng, problem, frame, c_k);
    if (s.status == SampleStatus::InformedSetEmpty) {
      d.informed_empty = true;
    } else if (s.ok()) {
      d.x = std::move(s.x);
      d.source = SampleSource::Informed;
    } else {
      d.starved = true;
    }
  };
  auto draw_local = [&](double c_k, Draw& d) {
    const double radius = local_radius(config.r0, c_k, u);
    if (radius > 0.0) {
      SampleResult s = sample_local(rng, *incumbent, radius, problem, c_k);
      if (s.ok()) {
        d.x = std::move(s.x);
        d.source = SampleSource::Local;
        return;
      }
    }
    d.starved = true;
  };

  const std::size_t max_iter = config.budget.max_iterations.value_or(std::numeric_limits<std::size_t>::max());
  std::size_t k = 0;
  while (k < max_iter) {
    if (config.budget.max_wall_time_ms && elapsed_ms() >= *config.budget.max_wall_time_ms) break;
    ++k;
    const double c_k = tree.goal_cost();
    const double p_k = local_probability();

    Draw draw;
    if (!std::isfinite(c_k)) {
      if ((config.goal_connect_period > 0 && k % config.goal_connect_period == 0) || rng.uniform() < config.goal_bias) {
        draw.x = problem.goal;
        draw.source = SampleSource::Goal;
      } else {
        draw.x = sample_uniform(rng, problem.bounds);
        draw.source = SampleSource::Uniform;
      }
    } else if (config.variant == Variant::UniformRRTStar && !config.pinned_local_probability) {
      draw.x = sample_uniform(rng, problem.bounds);
      draw.source = SampleSource::Uniform;
    } else if (select_strategy(rng, p_k) == Strategy::Local) {
      draw_local(c_k, draw);
      if (!draw.x) draw_informed(c_k, draw);
    } else {
      draw_informed(c_k, draw);
      if (!draw.x && !draw.informed_empty && p_k > 0.0) draw_local(c_k, draw);
    }

    if (draw.informed_empty && !draw.x) {
      --k;
      result.termination = Termination::InformedSetEmpty;
      break;
    }

    TraceEvent event = draw.starved ? TraceEvent::Starved : TraceEvent::None;
    bool improved = false;
    if (draw.x) {
      const double phi_source = config.rewire_phi == RewirePhi::Maximum ? config.p_max : p_k;
      const double phi = std::clamp(phi_source, 0.0, config.p_max);
      const double radius = rewire_radius(tree.size(), n, gamma_at(c_k), phi, eta);
      const ExtendResult ext = extend_and_rewire(tree, problem, *draw.x, radius, eta);
      improved = ext.outcome == ExtendOutcome::Improved;
    }

    const double c_new = tree.goal_cost();
    if (improved) {
      event = TraceEvent::Improved;
      incumbent = extract_solution(tree);
      if (!result.first_solution_iteration) result.first_solution_iteration = k;
      if (std::isfinite(c_k)) guess = update_guess(guess, c_k, c_new, u);
    } else if (std::isfinite(c_k)) {
      guess = update_guess(guess, c_k, c_new, u);
    }

    TraceRecord record{k, 0.0, c_new, p_k, draw.source, 0.0, event};
    if (config.record_trace || observer) {
      record.elapsed_ms = elapsed_ms();
      record.measure = std::isfinite(c_new) ? informed_set_measure(std::max(c_new, c_min), c_min, n) : kInf;
    }
    if (observer) observer(IterationView{tree, record, draw.x ? &*draw.x : nullptr, c_k});
    if (config.record_trace) result.trace.push_back(record);

    if (improved && config.early_stop_cost && c_new < *config.early_stop_cost) {
      result.termination = Termination::EarlyStop;
      break;
    }
  }

  result.iterations = k;
  result.best_cost = tree.goal_cost();
  if (incumbent) result.best_path = std::move(incumbent);
  result.elapsed_ms = elapsed_ms();
  result.tree_size = tree.size();
  return result;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::UniformRRTStar:
      return "uniform";
    case Variant::InformedRRTStar:
      return "informed";
    case Variant::MixedStrategyRRTStar:
      return "mi";
  }
  return "?";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::BudgetExhausted:
      return "budget_exhausted";
    case Termination::EarlyStop:
      return "early_stop";
    case Termination::InformedSetEmpty:
      return "informed_set_empty";
  }
  return "?";
}

std::string to_string(SampleSource s) {
  switch (s) {
    case SampleSource::Uniform:
      return "uniform";
    case SampleSource::Goal:
      return "goal";
    case SampleSource::Informed:
      return "informed";
    case SampleSource::Local:
      return "local";
    case SampleSource::None:
      return "none";
  }
  return "?";
}

std::string to_string(TraceEvent e) {
  switch (e) {
    case TraceEvent::None:
      return "none";
    case TraceEvent::Improved:
      return "improved";
    case TraceEvent::Starved:
      return "starved";
  }
  return "?";
}

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "uniform" || name == "rrtstar" || name == "UniformRRTStar") return Variant::UniformRRTStar;
  if (name == "informed" || name == "InformedRRTStar") return Variant::InformedRRTStar;
  if (name == "mi" || name == "MixedStrategyRRTStar") return Variant::MixedStrategyRRTStar;
  return std::nullopt;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << "iteration,elapsed_ms,cost,p,strategy,measure,event\n";
  out << std::setprecision(12);
  for (const auto& r : trace) {
    out << r.iteration << ',' << std::fixed << std::setprecision(3) << r.elapsed_ms << std::defaultfloat
        << std::setprecision(12) << ',' << r.cost << ',' << r.p << ',' << to_string(r.strategy) << ',' << r.measure
        << ',' << to_string(r.event) << '\n';
  }
}

}  // namespace mirrt
