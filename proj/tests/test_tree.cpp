#include "mirrt/samplers.hpp"
#include "mirrt/tree.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace mirrt;
using mirrt::testing::v;

namespace {

Problem empty_world() { return make_problem(Bounds{v({-5, -5}), v({5, 5})}, {}, v({-0.6, 0}), v({0.6, 0})); }

Problem box_world() {
  return make_problem(Bounds{v({0, 0}), v({10, 10})},
                      {AxisAlignedBox{v({3, 2}), v({4, 8})}, AxisAlignedBox{v({6, 0}), v({7, 5})},
                       AxisAlignedBox{v({6, 6}), v({7, 10})}},
                      v({1, 5}), v({9, 5}), 0.02);
}

}  // namespace

TEST_CASE("extend reaches a goal within one step") {
  const Problem p = empty_world();
  Tree tree(p.start, p.goal);
  const ExtendResult r = extend_and_rewire(tree, p, p.goal, 1.0, 1.5);
  CHECK(r.outcome == ExtendOutcome::Improved);
  CHECK(r.best_cost == doctest::Approx(p.c_min()));
  REQUIRE(tree.goal_node());
  CHECK(tree.goal_cost() == doctest::Approx(1.2));
}

TEST_CASE("extend steers by at most eta") {
  const Problem p = empty_world();
  Tree tree(p.start, p.goal);
  const ExtendResult r = extend_and_rewire(tree, p, v({4.4, 0}), 1.0, 1.0);
  REQUIRE(r.node);
  CHECK(r.outcome == ExtendOutcome::Extended);
  CHECK(distance(tree.node(*r.node).config, v({0.4, 0})) < 1e-12);
}

TEST_CASE("colliding samples are rejected without touching the tree") {
  const Problem p = box_world();
  Tree tree(p.start, p.goal);
  const ExtendResult r = extend_and_rewire(tree, p, v({3.5, 5}), 5.0, 10.0);
  CHECK(r.outcome == ExtendOutcome::Rejected);
  CHECK(tree.size() == 1);
  // Free sample whose only connecting edge crosses the wall.
  const ExtendResult through = extend_and_rewire(tree, p, v({5, 5}), 5.0, 10.0);
  CHECK(through.outcome == ExtendOutcome::Rejected);
  CHECK(tree.size() == 1);
  // Duplicate of an existing node.
  CHECK(extend_and_rewire(tree, p, p.start, 5.0, 10.0).outcome == ExtendOutcome::Rejected);
}

TEST_CASE("after every insertion no neighbour can be improved through the new node") {
  const Problem p = box_world();
  Rng rng(21);
  Tree tree(p.start, p.goal);
  const double eta = 1.5;
  while (tree.size() < 200) {
    const Configuration x = sample_uniform(rng, p.bounds);
    const std::size_t k = tree.size();
    const double radius = rewire_radius(k, 2, default_gamma(p.bounds), 0.0, eta);
    const ExtendResult r = extend_and_rewire(tree, p, x, radius, eta);
    if (!r.node) continue;
    const TreeNode& added = tree.node(*r.node);
    // Brute-force oracle over the whole tree, restricted to the near set.
    for (NodeId id = 0; id < tree.size(); ++id) {
      if (id == *r.node) continue;
      const double d = distance(added.config, tree.node(id).config);
      if (d > radius) continue;
      const double via = added.cost_to_come + d;
      if (via < tree.node(id).cost_to_come - 1e-9) {
        CHECK(edge_in_collision(p, added.config, tree.node(id).config));
      }
      // The chosen parent is optimal among free near nodes.
      const double as_parent = tree.node(id).cost_to_come + d;
      if (as_parent < added.cost_to_come - 1e-9 && id != *added.parent) {
        CHECK(edge_in_collision(p, tree.node(id).config, added.config));
      }
    }
    REQUIRE(tree_violations(tree).empty());
  }
}

TEST_CASE("rewire radius") {
  const double base = rewire_radius(100, 2, 3.0, 0.0, 100.0);
  CHECK(base == doctest::Approx(3.0 * std::sqrt(std::log(100.0) / 100.0)));
  CHECK(rewire_radius(100, 2, 3.0, 0.5, 100.0) / base == doctest::Approx(1.41421).epsilon(1e-5));
  double prev = 0.0;
  for (double phi = 0.0; phi <= 0.99; phi += 0.01) {
    const double r = rewire_radius(500, 3, 2.0, phi, 100.0);
    CHECK(r >= prev);
    prev = r;
  }
  CHECK(rewire_radius(10, 2, 50.0, 0.0, 1.5) == 1.5);
  CHECK(default_gamma(Bounds{v({-5, -5}), v({5, 5})}) ==
        doctest::Approx(2.0 * std::sqrt(1.5) * std::sqrt(100.0 / 3.14159265358979)));
}

TEST_CASE("extract a chain") {
  const Problem p = empty_world();
  Tree tree(p.start, p.goal);
  const NodeId a = tree.add_node(v({0, 0.5}), 0);
  const NodeId g = tree.add_node(p.goal, a);
  const Path path = extract_solution(tree, g);
  CHECK(path.waypoints().size() == 3);
  CHECK(path.total_cost() == doctest::Approx(tree.node(g).cost_to_come).epsilon(1e-12));
  CHECK_THROWS_AS(extract_solution(Tree(p.start, p.goal)), NoSolution);
}

TEST_CASE("extracted paths match the tree and are collision-free") {
  const Problem p = box_world();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    Tree tree(p.start, p.goal);
    for (int i = 0; i < 3000; ++i) {
      const Configuration x = rng.uniform() < 0.05 ? p.goal : sample_uniform(rng, p.bounds);
      extend_and_rewire(tree, p, x, rewire_radius(tree.size(), 2, default_gamma(p.bounds), 0.0, 1.5), 1.5);
    }
    REQUIRE(tree.goal_node());
    const Path path = extract_solution(tree);
    CHECK(std::abs(path.total_cost() - tree.goal_cost()) <= 1e-9);
    for (std::size_t i = 1; i < path.waypoints().size(); ++i) {
      CHECK_FALSE(edge_in_collision(p, path.waypoints()[i - 1], path.waypoints()[i]));
    }
    CHECK(tree_violations(tree).empty());
  }
}

TEST_CASE("seeded routes become the incumbent") {
  const Problem p = box_world();
  Tree tree(p.start, p.goal);
  const std::vector<Configuration> route{p.start, v({2, 9}), v({5, 9}), v({5, 5.5}), v({8, 5.5}), p.goal};
  const NodeId g = seed_route(tree, p, route, 0.5);
  CHECK(tree.goal_node() == g);
  CHECK(tree.goal_cost() == doctest::Approx(path_cost(route)));
  CHECK(tree_violations(tree).empty());
  Tree other(p.start, p.goal);
  CHECK_THROWS_AS(seed_route(other, p, {p.start, p.goal}, 0.5), UsageError);
}

TEST_CASE("tree violations are detected") {
  const Problem p = empty_world();
  Tree tree(p.start, p.goal);
  const NodeId a = tree.add_node(v({0, 1}), 0);
  const NodeId b = tree.add_node(v({1, 1}), a);
  CHECK(tree_violations(tree).empty());
  tree.reparent(a, 0);
  CHECK(tree_violations(tree).empty());
  CHECK(tree.node(b).cost_to_come == doctest::Approx(distance(p.start, v({0, 1})) + 1.0));
}
