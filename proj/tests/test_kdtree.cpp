#include "mirrt/kdtree.hpp"
#include "mirrt/samplers.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace mirrt;
using mirrt::testing::v;

namespace {

std::size_t linear_nearest(const std::vector<Configuration>& pts, const Configuration& q) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = (pts[i] - q).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::vector<std::size_t> linear_within(const std::vector<Configuration>& pts, const Configuration& q, double r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if ((pts[i] - q).squaredNorm() <= r * r) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("single point") {
  KdTree tree(2);
  tree.insert(v({1, 2}));
  CHECK(tree.nearest(v({-7, 3})) == 0);
  CHECK(tree.within(v({1, 2}), 0.0) == std::vector<std::size_t>{0});
  CHECK(tree.within(v({1, 2.1}), 0.0).empty());
}

TEST_CASE("empty tree and dimension checks") {
  KdTree tree(3);
  CHECK_THROWS_AS(tree.nearest(v({0, 0, 0})), UsageError);
  CHECK(tree.within(v({0, 0, 0}), 1.0).empty());
  CHECK_THROWS_AS(tree.insert(v({0, 0})), UsageError);
}

TEST_CASE("index agrees with a linear scan") {
  for (std::size_t n : {2u, 3u, 7u}) {
    Rng rng(100 + n);
    const Bounds box{Configuration::Constant(n, -5), Configuration::Constant(n, 5)};
    KdTree tree(n);
    std::vector<Configuration> pts;
    for (int i = 0; i < 10000; ++i) {
      pts.push_back(sample_uniform(rng, box));
      tree.insert(pts.back());
    }
    const double radius = n == 2 ? 0.3 : (n == 3 ? 0.8 : 3.0);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
      const Configuration q = sample_uniform(rng, box);
      if (tree.nearest(q) != linear_nearest(pts, q)) ++mismatches;
      if (tree.within(q, radius) != linear_within(pts, q, radius)) ++mismatches;
    }
    CAPTURE(n);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("duplicates and ties") {
  KdTree tree(2);
  tree.insert(v({0, 0}));
  tree.insert(v({1, 0}));
  tree.insert(v({1, 0}));
  tree.insert(v({-1, 0}));
  CHECK(tree.within(v({1, 0}), 0.0) == std::vector<std::size_t>{1, 2});
  CHECK(tree.nearest(v({1, 0})) == 1);
  // Equidistant from ids 1 and 3: lowest id wins.
  CHECK(tree.nearest(v({0, 5})) == 0);
  CHECK(tree.within(v({0, 0}), 1.0) == std::vector<std::size_t>{0, 1, 2, 3});
}
