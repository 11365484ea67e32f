#pragma once

#include "mirrt/geometry.hpp"
#include "mirrt/kdtree.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirrt {

using NodeId = std::size_t;

struct TreeNode {
  Configuration config;
  std::optional<NodeId> parent;
  double cost_to_come = 0.0;
  std::vector<NodeId> children;
};

class NoSolution : public std::logic_error {
 public:
  NoSolution() : std::logic_error("no solution yet") {}
};

/// RRT* search tree rooted at the start configuration. Tracks the node that
/// coincides with the goal, once one is inserted.
class Tree {
 public:
  Tree(const ConfigRef& root, const ConfigRef& goal);

  std::size_t size() const { return nodes_.size(); }
  std::size_t dimension() const { return index_.dimension(); }
  const TreeNode& node(NodeId id) const { return nodes_[id]; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const Configuration& goal() const { return goal_; }

  std::optional<NodeId> goal_node() const { return goal_node_; }
  /// Cost-to-come of the goal node, infinity when unreached.
  double goal_cost() const;

  NodeId nearest(const ConfigRef& x) const { return index_.nearest(x); }
  std::vector<NodeId> near(const ConfigRef& x, double radius) const { return index_.within(x, radius); }

  /// Appends a leaf under `parent`; the cost-to-come is derived.
  NodeId add_node(const ConfigRef& x, NodeId parent);

  /// Moves `id` under `new_parent` and refreshes the cost-to-come of the
  /// whole subtree. `new_parent` must not be a descendant of `id`.
  void reparent(NodeId id, NodeId new_parent);

 private:
  std::vector<TreeNode> nodes_;
  KdTree index_;
  Configuration goal_;
  std::optional<NodeId> goal_node_;
};

enum class ExtendOutcome { Improved, Extended, Rejected };

struct ExtendResult {
  ExtendOutcome outcome = ExtendOutcome::Rejected;
  std::optional<NodeId> node;
  /// Goal cost after the call (infinity when unreached).
  double best_cost = 0.0;
};

/// Steer from the nearest node towards x by at most `eta`, pick the cheapest
/// collision-free parent among the nodes within `radius`, insert, and rewire
/// the neighbourhood through the new node.
ExtendResult extend_and_rewire(Tree& tree, const Problem& problem, const ConfigRef& x, double radius, double eta);

/// Near-neighbour radius gamma (log k / k)^(1/n), inflated by (1 - phi)^(-1/n)
/// for mixed sampling and capped at eta.
double rewire_radius(std::size_t tree_size, std::size_t n, double gamma, double phi, double eta);

/// Sufficient RRT* constant 2 (1 + 1/n)^(1/n) (measure / zeta_n)^(1/n), with
/// the free-space measure bounded above by the box volume.
double default_gamma(const Bounds& bounds);
double gamma_for_measure(double measure, std::size_t n);

Path extract_solution(const Tree& tree, NodeId goal_node);
Path extract_solution(const Tree& tree);

/// Inserts a pre-computed collision-free route as a chain of nodes, each edge
/// subdivided to at most `spacing`. The route must start at the root and end
/// at the goal. Returns the goal node.
NodeId seed_route(Tree& tree, const Problem& problem, const std::vector<Configuration>& route, double spacing);

/// Structural checks: single root, acyclic parent links, consistent child
/// lists and cost-to-come within `tolerance`. Returns every violation found.
std::vector<std::string> tree_violations(const Tree& tree, double tolerance = 1e-9);

}  // namespace mirrt
