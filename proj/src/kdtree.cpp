#include "mirrt/kdtree.hpp"

#include <algorithm>
#include <limits>

namespace mirrt {

double KdTree::squared_distance(std::size_t id, const ConfigRef& q) const {
  const double* p = point(id);
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double d = p[i] - q[static_cast<Eigen::Index>(i)];
    sum += d * d;
  }
  return sum;
}

std::size_t KdTree::insert(const ConfigRef& x) {
  if (static_cast<std::size_t>(x.size()) != dim_) throw UsageError("KdTree::insert: dimension mismatch");
  const std::size_t id = nodes_.size();
  coords_.insert(coords_.end(), x.data(), x.data() + dim_);
  if (id == 0) {
    nodes_.push_back(Node{});
    return id;
  }
  std::size_t cur = 0;
  while (true) {
    Node& node = nodes_[cur];
    const std::uint32_t axis = node.axis;
    const bool go_left = x[axis] < point(cur)[axis];
    std::int64_t& child = go_left ? node.left : node.right;
    if (child < 0) {
      child = static_cast<std::int64_t>(id);
      nodes_.push_back(Node{-1, -1, static_cast<std::uint32_t>((axis + 1) % dim_)});
      return id;
    }
    cur = static_cast<std::size_t>(child);
  }
}

std::size_t KdTree::nearest(const ConfigRef& q) const {
  if (nodes_.empty()) throw UsageError("KdTree::nearest: empty tree");
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  // Explicit stack of (node, lower bound on squared distance to its region).
  std::vector<std::pair<std::int64_t, double>> stack;
  stack.reserve(64);
  stack.emplace_back(0, 0.0);
  while (!stack.empty()) {
    const auto [idx, bound] = stack.back();
    stack.pop_back();
    if (idx < 0 || bound > best_d2) continue;
    const auto id = static_cast<std::size_t>(idx);
    const double d2 = squared_distance(id, q);
    if (d2 < best_d2 || (d2 == best_d2 && id < best)) {
      best_d2 = d2;
      best = id;
    }
    const Node& node = nodes_[id];
    const double diff = q[node.axis] - point(id)[node.axis];
    const std::int64_t near_child = diff < 0.0 ? node.left : node.right;
    const std::int64_t far_child = diff < 0.0 ? node.right : node.left;
    stack.emplace_back(far_child, diff * diff);
    stack.emplace_back(near_child, 0.0);
  }
  return best;
}

std::vector<std::size_t> KdTree::within(const ConfigRef& q, double radius) const {
  std::vector<std::size_t> out;
  if (nodes_.empty() || radius < 0.0) return out;
  const double r2 = radius * radius;
  std::vector<std::int64_t> stack;
  stack.reserve(64);
  stack.push_back(0);
  while (!stack.empty()) {
    const std::int64_t idx = stack.back();
    stack.pop_back();
    if (idx < 0) continue;
    const auto id = static_cast<std::size_t>(idx);
    if (squared_distance(id, q) <= r2) out.push_back(id);
    const Node& node = nodes_[id];
    const double diff = q[node.axis] - point(id)[node.axis];
    // Points equal on the split axis go right.
    if (diff < 0.0) {
      stack.push_back(node.left);
      if (diff * diff <= r2) stack.push_back(node.right);
    } else {
      stack.push_back(node.right);
      if (diff * diff <= r2) stack.push_back(node.left);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mirrt
