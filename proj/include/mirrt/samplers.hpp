#pragma once

#include "mirrt/geometry.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace mirrt {

/// Seeded random source; one per planner run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Uniform on [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return normal_(engine_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Exponentially smoothed guess that the incumbent is not yet locally optimal.
struct GuessState {
  double p = 0.99;
  double nu = 0.999;
  double p_max = 0.99;
  double p0 = 0.99;

  static GuessState initial(double p0, double nu, double p_max);
};

/// Frame of the prolate hyperspheroid with foci at start and goal.
struct EllipsoidFrame {
  Configuration center;
  Eigen::MatrixXd rotation;
  double c_min = 0.0;

  static EllipsoidFrame from(const ConfigRef& start, const ConfigRef& goal);
};

enum class SampleStatus { Ok, InformedSetEmpty, Starved };

struct SampleResult {
  SampleStatus status = SampleStatus::Ok;
  Configuration x;
  int attempts = 0;

  bool ok() const { return status == SampleStatus::Ok; }
};

inline constexpr int kRejectionBudget = 1000;

/// Uniform draw from the closed unit n-ball: normalised Gaussian direction,
/// radius r^(1/n).
Eigen::VectorXd sample_unit_ball(Rng& rng, std::size_t n);

/// Uniform draw over the bounds box (no collision filtering).
Configuration sample_uniform(Rng& rng, const Bounds& bounds);

/// True when |x - start| + |goal - x| < c_k.
bool in_informed_set(const Problem& problem, const ConfigRef& x, double c_k);

/// Draws a collision-free point of the L2-informed set. With c_k infinite the
/// draw is uniform over the bounds; with c_k <= c_min the set is empty.
SampleResult sample_informed(Rng& rng, const Problem& problem, const EllipsoidFrame& frame, double c_k,
                             int budget = kRejectionBudget);
SampleResult sample_informed(Rng& rng, const Problem& problem, double c_k, int budget = kRejectionBudget);

/// Lebesgue measure of the L2-informed set.
double informed_set_measure(double c_k, double c_min, std::size_t n);

/// Volume of the unit n-ball.
double unit_ball_volume(std::size_t n);

/// Draws around the incumbent path: sigma(s) + R b, rejected until the point
/// is in the informed set, in bounds and collision-free. Non-uniform over the
/// tube by construction.
SampleResult sample_local(Rng& rng, const Path& path, double radius, const Problem& problem, double c_k,
                          int budget = kRejectionBudget);

/// Thrown when the supplied lower bound turns out larger than an achieved cost.
class AdmissibilityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown when the incumbent cost increases between iterations.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

double local_radius(double r0, double c_k, double u);

/// One step of the guess recursion: smoothed relative improvement when the
/// cost decreased, plain decay otherwise. Result clamped into (0, p_max].
GuessState update_guess(const GuessState& state, double c_prev, double c_new, double u);

enum class Strategy { Local, Global };

Strategy select_strategy(Rng& rng, double p);

}  // namespace mirrt
