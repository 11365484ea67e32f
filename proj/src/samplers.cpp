#include "mirrt/samplers.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mirrt {

GuessState GuessState::initial(double p0, double nu, double p_max) {
  if (!(p0 > 0.0 && p0 <= 1.0)) throw UsageError("GuessState: p0 must lie in (0, 1]");
  if (!(nu >= 0.0 && nu < 1.0)) throw UsageError("GuessState: nu must lie in [0, 1)");
  if (!(p_max > 0.0 && p_max < 1.0)) throw UsageError("GuessState: p_max must lie in (0, 1)");
  return GuessState{std::min(p0, p_max), nu, p_max, p0};
}

EllipsoidFrame EllipsoidFrame::from(const ConfigRef& start, const ConfigRef& goal) {
  const auto n = start.size();
  EllipsoidFrame frame;
  frame.center = 0.5 * (start + goal);
  frame.c_min = (goal - start).norm();
  if (!(frame.c_min > 0.0)) throw UsageError("EllipsoidFrame: start and goal coincide");
  const Eigen::VectorXd axis = (goal - start) / frame.c_min;
  // Householder QR completes the transverse axis to an orthonormal basis.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(axis);
  frame.rotation = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  if (frame.rotation.col(0).dot(axis) < 0.0) frame.rotation.col(0) *= -1.0;
  return frame;
}

Eigen::VectorXd sample_unit_ball(Rng& rng, std::size_t n) {
  if (n < 1) throw UsageError("sample_unit_ball: n must be >= 1");
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = rng.normal();
    norm = w.norm();
  } while (!(norm > 0.0));
  const double r = rng.uniform();
  return (std::pow(r, 1.0 / static_cast<double>(n)) / norm) * w;
}

Configuration sample_uniform(Rng& rng, const Bounds& bounds) {
  Configuration x(bounds.lower.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
  return x;
}

bool in_informed_set(const Problem& problem, const ConfigRef& x, double c_k) {
  return (x - problem.start).norm() + (problem.goal - x).norm() < c_k;
}

SampleResult sample_informed(Rng& rng, const Problem& problem, const EllipsoidFrame& frame, double c_k,
                             int budget) {
  SampleResult result;
  if (std::isinf(c_k)) {
    while (result.attempts < budget) {
      ++result.attempts;
      result.x = sample_uniform(rng, problem.bounds);
      if (!point_in_collision(problem, result.x)) return result;
    }
    result.status = SampleStatus::Starved;
    return result;
  }
  if (!(c_k > frame.c_min)) {
    result.status = SampleStatus::InformedSetEmpty;
    return result;
  }
  const auto n = problem.dimension();
  Eigen::VectorXd radii = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                                    0.5 * std::sqrt(c_k * c_k - frame.c_min * frame.c_min));
  radii[0] = 0.5 * c_k;
  while (result.attempts < budget) {
    ++result.attempts;
    const Eigen::VectorXd b = sample_unit_ball(rng, n);
    result.x = frame.rotation * radii.cwiseProduct(b) + frame.center;
    if (in_informed_set(problem, result.x, c_k) && !point_in_collision(problem, result.x)) return result;
  }
  result.status = SampleStatus::Starved;
  return result;
}

SampleResult sample_informed(Rng& rng, const Problem& problem, double c_k, int budget) {
  return sample_informed(rng, problem, EllipsoidFrame::from(problem.start, problem.goal), c_k, budget);
}

double unit_ball_volume(std::size_t n) {
  const double half = 0.5 * static_cast<double>(n);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double informed_set_measure(double c_k, double c_min, std::size_t n) {
  if (c_k < c_min) throw UsageError("informed_set_measure: c_k must be >= c_min");
  if (std::isinf(c_k)) return std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  return c_k * std::pow(c_k * c_k - c_min * c_min, 0.5 * (nd - 1.0)) * unit_ball_volume(n) / std::pow(2.0, nd);
}

SampleResult sample_local(Rng& rng, const Path& path, double radius, const Problem& problem, double c_k,
                          int budget) {
  if (!(radius > 0.0)) throw UsageError("sample_local: radius must be > 0");
  const auto n = problem.dimension();
  SampleResult result;
  while (result.attempts < budget) {
    ++result.attempts;
    const Eigen::VectorXd b = sample_unit_ball(rng, n);
    const double s = rng.uniform();
    result.x = interpolate_path(path, s) + radius * b;
    if (in_informed_set(problem, result.x, c_k) && !point_in_collision(problem, result.x)) return result;
  }
  result.status = SampleStatus::Starved;
  return result;
}

double local_radius(double r0, double c_k, double u) {
  if (c_k < u) {
    throw AdmissibilityViolation("local_radius: cost " + std::to_string(c_k) + " below lower bound " +
                                 std::to_string(u));
  }
  return r0 * (c_k - u);
}

GuessState update_guess(const GuessState& state, double c_prev, double c_new, double u) {
  if (c_new > c_prev) throw ContractViolation("update_guess: incumbent cost increased");
  GuessState next = state;
  if (c_new < c_prev) {
    if (!(c_prev > u)) throw AdmissibilityViolation("update_guess: previous cost not above lower bound");
    next.p = state.nu * state.p + (1.0 - state.nu) * (c_prev - c_new) / (c_prev - u);
  } else {
    next.p = state.nu * state.p;
  }
  // Keep p strictly positive even after underflow.
  next.p = std::clamp(next.p, std::numeric_limits<double>::min(), state.p_max);
  return next;
}

Strategy select_strategy(Rng& rng, double p) {
  return rng.uniform() < p ? Strategy::Local : Strategy::Global;
}

}  // namespace mirrt
