#include "mirrt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mirrt {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::ostringstream out;
  out << "invalid problem:";
  for (const auto& v : violations) out << "\n  - " << v;
  return out.str();
}

bool all_finite(const ConfigRef& x) { return x.allFinite(); }

// Lexicographic order, used to make edge sampling independent of direction.
bool lex_less(const ConfigRef& a, const ConfigRef& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

struct Contains {
  const ConfigRef& x;

  bool operator()(const AxisAlignedBox& box) const {
    return (x.array() >= box.min.array()).all() && (x.array() <= box.max.array()).all();
  }
  bool operator()(const HyperSphere& sphere) const {
    return (x - sphere.center).squaredNorm() <= sphere.radius * sphere.radius;
  }
  bool operator()(const HollowSpherinder& s) const {
    if (std::abs(x[static_cast<Eigen::Index>(s.axis)]) > 0.5 * s.length) return false;
    double radial = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (i != static_cast<Eigen::Index>(s.axis)) radial += x[i] * x[i];
    }
    return s.cavity_radius * s.cavity_radius <= radial && radial <= s.outer_radius * s.outer_radius;
  }
};

}  // namespace

InvalidProblem::InvalidProblem(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

bool Bounds::contains(const ConfigRef& x) const {
  return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

bool obstacle_contains(const Obstacle& obstacle, const ConfigRef& x) {
  return std::visit(Contains{x}, obstacle);
}

std::vector<std::string> obstacle_violations(const Obstacle& obstacle, std::size_t n) {
  std::vector<std::string> out;
  const auto dim = static_cast<Eigen::Index>(n);
  if (const auto* box = std::get_if<AxisAlignedBox>(&obstacle)) {
    if (box->min.size() != dim || box->max.size() != dim) {
      out.emplace_back("box corners must have dimension " + std::to_string(n));
    } else if (!(box->min.array() < box->max.array()).all()) {
      out.emplace_back("box min must be < max componentwise");
    }
  } else if (const auto* sphere = std::get_if<HyperSphere>(&obstacle)) {
    if (sphere->center.size() != dim) out.emplace_back("sphere center must have dimension " + std::to_string(n));
    if (!(sphere->radius > 0.0)) out.emplace_back("sphere radius must be > 0");
  } else if (const auto* s = std::get_if<HollowSpherinder>(&obstacle)) {
    if (!(s->length > 0.0)) out.emplace_back("spherinder length must be > 0");
    if (!(0.0 < s->cavity_radius && s->cavity_radius < s->outer_radius)) {
      out.emplace_back("spherinder radii must satisfy 0 < cavity_radius < outer_radius");
    }
    if (s->axis >= n) out.emplace_back("spherinder axis out of range");
  }
  return out;
}

std::vector<std::string> problem_violations(const Problem& p) {
  std::vector<std::string> out;
  const std::size_t n = p.bounds.dimension();
  if (n < 2) out.emplace_back("dimension must be >= 2");
  if (p.bounds.upper.size() != p.bounds.lower.size()) {
    out.emplace_back("bounds lower/upper dimension mismatch");
    return out;
  }
  if (!all_finite(p.bounds.lower) || !all_finite(p.bounds.upper)) out.emplace_back("bounds must be finite");
  if (!(p.bounds.lower.array() < p.bounds.upper.array()).all()) out.emplace_back("bounds lower must be < upper");
  for (std::size_t i = 0; i < p.obstacles.size(); ++i) {
    for (auto& v : obstacle_violations(p.obstacles[i], n)) {
      out.push_back("obstacle " + std::to_string(i) + ": " + v);
    }
  }
  if (!out.empty()) return out;

  auto check_endpoint = [&](const Configuration& x, const char* name) {
    if (static_cast<std::size_t>(x.size()) != n) {
      out.push_back(std::string(name) + " must have dimension " + std::to_string(n));
      return;
    }
    if (!all_finite(x)) {
      out.push_back(std::string(name) + " must be finite");
    } else if (!p.bounds.contains(x)) {
      out.push_back(std::string(name) + " is outside the bounds");
    } else if (point_in_collision(p, x)) {
      out.push_back(std::string(name) + " is in collision");
    }
  };
  check_endpoint(p.start, "start");
  check_endpoint(p.goal, "goal");
  if (!out.empty()) return out;

  const double c_min = p.c_min();
  if (!(c_min > 0.0)) out.emplace_back("start and goal must differ (c_min > 0)");
  if (!(p.edge_resolution > 0.0) || !std::isfinite(p.edge_resolution)) {
    out.emplace_back("edge_resolution must be > 0");
  }
  if (!std::isfinite(p.lower_bound_u) || p.lower_bound_u < 0.0) {
    out.emplace_back("lower_bound_u must be finite and >= 0");
  } else if (p.lower_bound_u > c_min && p.edge_resolution > 0.0 && !edge_in_collision(p, p.start, p.goal)) {
    // The straight segment is feasible, so c_min is the optimum.
    out.emplace_back("lower_bound_u exceeds the straight-line optimum (not admissible)");
  }
  return out;
}

Problem make_problem(Bounds bounds, std::vector<Obstacle> obstacles, Configuration start, Configuration goal,
                     std::optional<double> edge_resolution, std::optional<double> lower_bound_u) {
  Problem p;
  p.bounds = std::move(bounds);
  p.obstacles = std::move(obstacles);
  p.start = std::move(start);
  p.goal = std::move(goal);
  if (p.bounds.lower.size() == p.bounds.upper.size()) {
    p.edge_resolution = edge_resolution.value_or(0.005 * p.bounds.diameter());
  }
  if (p.start.size() == p.goal.size()) {
    p.lower_bound_u = lower_bound_u.value_or(p.c_min());
  }
  if (auto violations = problem_violations(p); !violations.empty()) {
    throw InvalidProblem(std::move(violations));
  }
  return p;
}

double distance(const ConfigRef& a, const ConfigRef& b) {
  if (a.size() != b.size()) throw UsageError("distance: dimension mismatch");
  return (a - b).norm();
}

bool point_in_collision(const Problem& world, const ConfigRef& x) {
  if (!world.bounds.contains(x)) return true;
  for (const auto& obstacle : world.obstacles) {
    if (obstacle_contains(obstacle, x)) return true;
  }
  return false;
}

bool edge_in_collision(const Problem& world, const ConfigRef& a, const ConfigRef& b) {
  if (a.size() != b.size()) throw UsageError("edge_in_collision: dimension mismatch");
  const bool swap = lex_less(b, a);
  const ConfigRef& from = swap ? b : a;
  const ConfigRef& to = swap ? a : b;
  if (point_in_collision(world, from) || point_in_collision(world, to)) return true;
  const double length = (to - from).norm();
  // Power-of-two subdivision, so halving the resolution only adds samples.
  long steps = 1;
  while (length / static_cast<double>(steps) > world.edge_resolution) steps *= 2;
  // Coarse to fine: midpoint first, then odd multiples of each finer stride.
  // Same sample set as a linear sweep, but crossings show up early.
  thread_local Configuration delta, x;
  delta = to - from;
  x.resize(from.size());
  for (long stride = steps / 2; stride >= 1; stride /= 2) {
    for (long i = stride; i < steps; i += 2 * stride) {
      const double t = static_cast<double>(i) / static_cast<double>(steps);
      x = from + t * delta;
      if (point_in_collision(world, x)) return true;
    }
  }
  return false;
}

Path::Path(std::vector<Configuration> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) throw UsageError("Path: at least 2 waypoints required");
  cumulative_.reserve(waypoints_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    const double len = distance(waypoints_[i - 1], waypoints_[i]);
    segment_lengths_.push_back(len);
    total_cost_ += len;
    cumulative_.push_back(total_cost_);
  }
}

Configuration interpolate_path(const Path& path, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw UsageError("interpolate_path: s must lie in [0, 1]");
  const auto& w = path.waypoints_;
  if (s == 0.0 || path.total_cost_ == 0.0) return w.front();
  if (s == 1.0) return w.back();
  const double target = s * path.total_cost_;
  // First cumulative length strictly beyond the target selects the segment.
  auto it = std::upper_bound(path.cumulative_.begin(), path.cumulative_.end(), target);
  auto seg = static_cast<std::size_t>(std::distance(path.cumulative_.begin(), it)) - 1;
  seg = std::min(seg, path.segment_lengths_.size() - 1);
  const double len = path.segment_lengths_[seg];
  const double t = len > 0.0 ? std::clamp((target - path.cumulative_[seg]) / len, 0.0, 1.0) : 0.0;
  return w[seg] + t * (w[seg + 1] - w[seg]);
}

double path_cost(const Path& path) { return path.total_cost(); }

double path_cost(const std::vector<Configuration>& waypoints) {
  if (waypoints.size() < 2) throw UsageError("path_cost: at least 2 waypoints required");
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) total += distance(waypoints[i - 1], waypoints[i]);
  return total;
}

}  // namespace mirrt
