#pragma once

#include "mirrt/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mirrt {

/// Incremental k-d tree over points of fixed dimension. Point ids are
/// insertion indices. No rebalancing: RRT* inserts in random order, which
/// keeps the depth logarithmic in expectation.
class KdTree {
 public:
  explicit KdTree(std::size_t dimension) : dim_(dimension) {}

  std::size_t size() const { return nodes_.size(); }
  std::size_t dimension() const { return dim_; }

  std::size_t insert(const ConfigRef& point);

  /// Id of the nearest point (ties resolved to the lowest id). Tree must be
  /// nonempty.
  std::size_t nearest(const ConfigRef& query) const;

  /// Ids of all points with distance <= radius, in ascending id order.
  std::vector<std::size_t> within(const ConfigRef& query, double radius) const;

 private:
  struct Node {
    std::int64_t left = -1;
    std::int64_t right = -1;
    std::uint32_t axis = 0;
  };

  const double* point(std::size_t id) const { return coords_.data() + id * dim_; }
  double squared_distance(std::size_t id, const ConfigRef& q) const;

  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<Node> nodes_;
};

}  // namespace mirrt
