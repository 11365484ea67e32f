#include "mirrt/tree.hpp"

#include "mirrt/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mirrt {

Tree::Tree(const ConfigRef& root, const ConfigRef& goal) : index_(static_cast<std::size_t>(root.size())), goal_(goal) {
  if (root.size() != goal.size()) throw UsageError("Tree: root/goal dimension mismatch");
  nodes_.push_back(TreeNode{root, std::nullopt, 0.0, {}});
  index_.insert(root);
  if (root == goal) goal_node_ = 0;
}

double Tree::goal_cost() const {
  return goal_node_ ? nodes_[*goal_node_].cost_to_come : std::numeric_limits<double>::infinity();
}

NodeId Tree::add_node(const ConfigRef& x, NodeId parent) {
  const NodeId id = nodes_.size();
  const double cost = nodes_[parent].cost_to_come + distance(nodes_[parent].config, x);
  nodes_.push_back(TreeNode{x, parent, cost, {}});
  nodes_[parent].children.push_back(id);
  index_.insert(x);
  if (!goal_node_ && x == goal_) goal_node_ = id;
  return id;
}

void Tree::reparent(NodeId id, NodeId new_parent) {
  TreeNode& node = nodes_[id];
  if (node.parent) {
    auto& siblings = nodes_[*node.parent].children;
    siblings.erase(std::find(siblings.begin(), siblings.end(), id));
  }
  node.parent = new_parent;
  nodes_[new_parent].children.push_back(id);

  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    TreeNode& n = nodes_[cur];
    const TreeNode& p = nodes_[*n.parent];
    n.cost_to_come = p.cost_to_come + distance(p.config, n.config);
    stack.insert(stack.end(), n.children.begin(), n.children.end());
  }
}

ExtendResult extend_and_rewire(Tree& tree, const Problem& problem, const ConfigRef& x, double radius, double eta) {
  const double before = tree.goal_cost();
  ExtendResult result;
  result.best_cost = before;

  const NodeId nearest = tree.nearest(x);
  const Configuration& from = tree.node(nearest).config;
  const double d = distance(from, x);
  if (d == 0.0) return result;
  Configuration x_new = d <= eta ? Configuration(x) : Configuration(from + (eta / d) * (x - from));
  if (point_in_collision(problem, x_new)) return result;

  // Candidate parents ordered by the cost they would give; the first one with
  // a free edge wins, so collision checks stop early.
  std::vector<NodeId> near = tree.near(x_new, radius);
  if (std::find(near.begin(), near.end(), nearest) == near.end()) near.push_back(nearest);
  std::vector<std::pair<double, NodeId>> candidates;
  candidates.reserve(near.size());
  for (NodeId id : near) {
    const double dist = distance(tree.node(id).config, x_new);
    if (dist == 0.0) return result;
    candidates.emplace_back(tree.node(id).cost_to_come + dist, id);
  }
  // Min-heap: usually only a few candidates are popped, so a full sort is wasted.
  std::make_heap(candidates.begin(), candidates.end(), std::greater<>{});

  std::optional<NodeId> parent;
  for (auto end = candidates.end(); end != candidates.begin(); --end) {
    std::pop_heap(candidates.begin(), end, std::greater<>{});
    const NodeId id = (end - 1)->second;
    if (!edge_in_collision(problem, tree.node(id).config, x_new)) {
      parent = id;
      break;
    }
  }
  if (!parent) return result;

  const NodeId added = tree.add_node(x_new, *parent);
  result.node = added;
  for (NodeId id : near) {
    if (id == *parent) continue;
    const double via = tree.node(added).cost_to_come + distance(tree.node(added).config, tree.node(id).config);
    if (via < tree.node(id).cost_to_come && !edge_in_collision(problem, x_new, tree.node(id).config)) {
      tree.reparent(id, added);
    }
  }

  result.best_cost = tree.goal_cost();
  result.outcome = result.best_cost < before ? ExtendOutcome::Improved : ExtendOutcome::Extended;
  return result;
}

double rewire_radius(std::size_t tree_size, std::size_t n, double gamma, double phi, double eta) {
  const double k = static_cast<double>(std::max<std::size_t>(tree_size, 2));
  const double nd = static_cast<double>(n);
  const double base = gamma * std::pow(std::log(k) / k, 1.0 / nd);
  return std::min(base * std::pow(1.0 - phi, -1.0 / nd), eta);
}

double gamma_for_measure(double measure, std::size_t n) {
  const double nd = static_cast<double>(n);
  return 2.0 * std::pow(1.0 + 1.0 / nd, 1.0 / nd) * std::pow(measure / unit_ball_volume(n), 1.0 / nd);
}

double default_gamma(const Bounds& bounds) { return gamma_for_measure(bounds.volume(), bounds.dimension()); }

Path extract_solution(const Tree& tree, NodeId goal_node) {
  if (goal_node >= tree.size()) throw NoSolution();
  std::vector<Configuration> waypoints;
  std::optional<NodeId> cur = goal_node;
  while (cur) {
    waypoints.push_back(tree.node(*cur).config);
    cur = tree.node(*cur).parent;
  }
  std::reverse(waypoints.begin(), waypoints.end());
  if (waypoints.size() == 1) waypoints.push_back(waypoints.front());
  return Path(std::move(waypoints));
}

Path extract_solution(const Tree& tree) {
  if (!tree.goal_node()) throw NoSolution();
  return extract_solution(tree, *tree.goal_node());
}

NodeId seed_route(Tree& tree, const Problem& problem, const std::vector<Configuration>& route, double spacing) {
  if (route.size() < 2) throw UsageError("seed_route: at least 2 waypoints required");
  if (route.front() != tree.node(0).config) throw UsageError("seed_route: route must start at the root");
  if (route.back() != tree.goal()) throw UsageError("seed_route: route must end at the goal");
  if (!(spacing > 0.0)) throw UsageError("seed_route: spacing must be > 0");
  NodeId parent = 0;
  for (std::size_t i = 1; i < route.size(); ++i) {
    if (edge_in_collision(problem, route[i - 1], route[i])) throw UsageError("seed_route: route is in collision");
    const double len = distance(route[i - 1], route[i]);
    const auto steps = std::max<long>(1, static_cast<long>(std::ceil(len / spacing)));
    for (long j = 1; j <= steps; ++j) {
      const Configuration x = j == steps ? route[i]
                                         : Configuration(route[i - 1] + (static_cast<double>(j) / static_cast<double>(steps)) *
                                                                            (route[i] - route[i - 1]));
      parent = tree.add_node(x, parent);
    }
  }
  return parent;
}

std::vector<std::string> tree_violations(const Tree& tree, double tolerance) {
  std::vector<std::string> out;
  const auto& nodes = tree.nodes();
  std::size_t roots = 0;
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const TreeNode& n = nodes[id];
    if (!n.parent) {
      ++roots;
      if (id != 0) out.push_back("node " + std::to_string(id) + " has no parent");
      continue;
    }
    const TreeNode& p = nodes[*n.parent];
    if (std::count(p.children.begin(), p.children.end(), id) != 1) {
      out.push_back("node " + std::to_string(id) + " missing from its parent's children");
    }
    const double expected = p.cost_to_come + distance(p.config, n.config);
    if (std::abs(expected - n.cost_to_come) > tolerance * std::max(1.0, expected)) {
      out.push_back("node " + std::to_string(id) + " cost-to-come inconsistent");
    }
  }
  if (roots != 1) out.push_back("tree has " + std::to_string(roots) + " roots");
  // Walk each parent chain once; 1 marks nodes on the current walk, 2 nodes
  // already known to reach the root.
  std::vector<char> state(nodes.size(), 0);
  for (NodeId id = 0; id < nodes.size(); ++id) {
    std::vector<NodeId> walk;
    std::optional<NodeId> cur = id;
    bool cycle = false;
    while (cur && state[*cur] != 2) {
      if (state[*cur] == 1) {
        cycle = true;
        break;
      }
      state[*cur] = 1;
      walk.push_back(*cur);
      cur = nodes[*cur].parent;
    }
    for (NodeId w : walk) state[w] = 2;
    if (cycle) {
      out.push_back("cycle through node " + std::to_string(id));
      break;
    }
  }
  return out;
}

}  // namespace mirrt
