#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mirrt {

/// A point of the n-dimensional configuration space.
using Configuration = Eigen::VectorXd;
using ConfigRef = Eigen::Ref<const Eigen::VectorXd>;

/// Raised when an operation is called outside its contract (bad dimensions,
/// parameters out of range).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a problem definition violates one of its invariants.
class InvalidProblem : public std::runtime_error {
 public:
  explicit InvalidProblem(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct Bounds {
  Configuration lower;
  Configuration upper;

  std::size_t dimension() const { return static_cast<std::size_t>(lower.size()); }
  bool contains(const ConfigRef& x) const;
  double diameter() const { return (upper - lower).norm(); }
  double volume() const { return (upper - lower).prod(); }
};

struct AxisAlignedBox {
  Configuration min;
  Configuration max;
};

struct HyperSphere {
  Configuration center;
  double radius = 0.0;
};

/// Cylinder of length `length` along coordinate `axis`, centred at the
/// origin, whose cross-section is the (n-1)-dimensional annulus between
/// `cavity_radius` and `outer_radius`.
struct HollowSpherinder {
  double length = 1.0;
  double outer_radius = 1.0;
  double cavity_radius = 0.5;
  std::size_t axis = 0;
};

using Obstacle = std::variant<AxisAlignedBox, HyperSphere, HollowSpherinder>;

bool obstacle_contains(const Obstacle& obstacle, const ConfigRef& x);

/// Checks the obstacle's own invariants against dimension n; returns a list of
/// human-readable violations (empty when valid).
std::vector<std::string> obstacle_violations(const Obstacle& obstacle, std::size_t n);

struct Problem {
  Bounds bounds;
  std::vector<Obstacle> obstacles;
  Configuration start;
  Configuration goal;
  double edge_resolution = 0.0;
  double lower_bound_u = 0.0;

  std::size_t dimension() const { return static_cast<std::size_t>(start.size()); }
  double c_min() const { return (goal - start).norm(); }
};

/// Builds a problem, filling edge_resolution (0.005 x bounds diameter) and
/// lower_bound_u (c_min) when not given. Throws InvalidProblem listing every
/// violated invariant.
Problem make_problem(Bounds bounds, std::vector<Obstacle> obstacles, Configuration start,
                     Configuration goal, std::optional<double> edge_resolution = std::nullopt,
                     std::optional<double> lower_bound_u = std::nullopt);

/// Returns all invariant violations of an already-built problem.
std::vector<std::string> problem_violations(const Problem& problem);

double distance(const ConfigRef& a, const ConfigRef& b);

/// True when x is inside an obstacle or outside the bounds.
bool point_in_collision(const Problem& world, const ConfigRef& x);

/// Samples the segment at a spacing no larger than the problem's edge
/// resolution, endpoints included, by power-of-two subdivision. The sample
/// set is symmetric in (a, b) and nested under halving of the resolution.
bool edge_in_collision(const Problem& world, const ConfigRef& a, const ConfigRef& b);

class Path {
 public:
  explicit Path(std::vector<Configuration> waypoints);

  const std::vector<Configuration>& waypoints() const { return waypoints_; }
  const std::vector<double>& segment_lengths() const { return segment_lengths_; }
  double total_cost() const { return total_cost_; }
  std::size_t dimension() const { return static_cast<std::size_t>(waypoints_.front().size()); }

 private:
  std::vector<Configuration> waypoints_;
  std::vector<double> segment_lengths_;
  std::vector<double> cumulative_;
  double total_cost_ = 0.0;

  friend Configuration interpolate_path(const Path& path, double s);
};

/// Point at arc-length fraction s of the polyline.
Configuration interpolate_path(const Path& path, double s);

double path_cost(const Path& path);
double path_cost(const std::vector<Configuration>& waypoints);

}  // namespace mirrt
