#pragma once

#include "mirrt/geometry.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>

namespace mirrt::testing {

inline Configuration v(std::initializer_list<double> xs) {
  Configuration c(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) c[i++] = x;
  return c;
}

/// Exact Euclidean distance from x to the polyline.
inline double distance_to_polyline(const ConfigRef& x, const std::vector<Configuration>& w) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < w.size(); ++i) {
    const Eigen::VectorXd d = w[i] - w[i - 1];
    const double len2 = d.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((x - w[i - 1]).dot(d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (x - (w[i - 1] + t * d)).norm());
  }
  return best;
}

/// Direct evaluation of the ellipse membership predicate.
inline bool strictly_inside_ellipse(const ConfigRef& x, const ConfigRef& start, const ConfigRef& goal, double c) {
  return (x - start).norm() + (goal - x).norm() < c;
}

/// Upper tail P(X >= k) of Binomial(n, 1/2).
inline double sign_test_p_value(int wins, int trials) {
  double p = 0.0;
  for (int i = wins; i <= trials; ++i) {
    double log_c = std::lgamma(trials + 1.0) - std::lgamma(i + 1.0) - std::lgamma(trials - i + 1.0);
    p += std::exp(log_c - trials * std::log(2.0));
  }
  return p;
}

}  // namespace mirrt::testing

#include <queue>

namespace mirrt::testing {

struct Rect {
  double x0, y0, x1, y1;
};

/// True when the open segment a-b passes through the interior of r
/// (Liang-Barsky clipping against the rectangle).
inline bool segment_hits_rect(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Rect& r) {
  double t0 = 0.0, t1 = 1.0;
  const Eigen::Vector2d d = b - a;
  const double p[4] = {-d.x(), d.x(), -d.y(), d.y()};
  const double q[4] = {a.x() - r.x0, r.x1 - a.x(), a.y() - r.y0, r.y1 - a.y()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] <= 0.0) return false;
    } else {
      const double t = q[i] / p[i];
      if (p[i] < 0.0) {
        t0 = std::max(t0, t);
      } else {
        t1 = std::min(t1, t);
      }
    }
  }
  return t1 - t0 > 1e-12;
}

/// Exact shortest path among axis-aligned rectangles in the plane: Dijkstra
/// over the visibility graph of start, goal and the rectangle corners pushed
/// out by `inflate`.
inline double visibility_graph_shortest_path(const Eigen::Vector2d& start, const Eigen::Vector2d& goal,
                                             const std::vector<Rect>& rects, double inflate = 1e-9) {
  std::vector<Eigen::Vector2d> nodes{start, goal};
  for (const auto& r : rects) {
    nodes.emplace_back(r.x0 - inflate, r.y0 - inflate);
    nodes.emplace_back(r.x1 + inflate, r.y0 - inflate);
    nodes.emplace_back(r.x0 - inflate, r.y1 + inflate);
    nodes.emplace_back(r.x1 + inflate, r.y1 + inflate);
  }
  auto visible = [&](std::size_t i, std::size_t j) {
    for (const auto& r : rects) {
      if (segment_hits_rect(nodes[i], nodes[j], r)) return false;
    }
    return true;
  };
  std::vector<double> dist(nodes.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[0] = 0.0;
  open.emplace(0.0, 0);
  while (!open.empty()) {
    const auto [d, i] = open.top();
    open.pop();
    if (d > dist[i]) continue;
    if (i == 1) return d;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i || !visible(i, j)) continue;
      const double nd = d + (nodes[j] - nodes[i]).norm();
      if (nd < dist[j]) {
        dist[j] = nd;
        open.emplace(nd, j);
      }
    }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace mirrt::testing
