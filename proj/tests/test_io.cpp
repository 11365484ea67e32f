#include "mirrt/benchmark.hpp"
#include "mirrt/io.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <string>

using namespace mirrt;

TEST_CASE("problem documents round-trip") {
  const Problem p = make_narrow_passage(3);
  const Problem q = parse_problem(problem_to_json(p));
  CHECK(problem_to_json(q) == problem_to_json(p));
  CHECK(problem_violations(q).empty());
}

TEST_CASE("problem defaults and obstacle types") {
  const Problem p = parse_problem(R"({
    "dimension": 2,
    "bounds": {"lower": [0, 0], "upper": [10, 10]},
    "obstacles": [
      {"type": "box", "min": [4, 0], "max": [5, 8]},
      {"type": "sphere", "center": [7, 7], "radius": 1},
      {"type": "hollow_spherinder", "length": 1, "outer_radius": 1, "cavity_radius": 0.5, "axis": 1}
    ],
    "start": [1, 1], "goal": [9, 1]
  })");
  CHECK(p.obstacles.size() == 3);
  CHECK(p.lower_bound_u == doctest::Approx(8.0));
  CHECK(p.edge_resolution == doctest::Approx(0.005 * std::sqrt(200.0)));
  CHECK(std::get<HollowSpherinder>(p.obstacles[2]).axis == 1);
}

TEST_CASE("malformed problem documents") {
  auto message = [](const std::string& text) {
    try {
      parse_problem(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{\n  \"dimension\": 2,\n  oops\n}").find("line 3") != std::string::npos);
  CHECK(message(R"({"dimension": 2})").find("bounds") != std::string::npos);
  CHECK(message(R"({"dimension": 2, "bounds": {"lower": [0], "upper": [1, 1]}, "start": [0, 0], "goal": [1, 1]})")
            .find("bounds.lower") != std::string::npos);
  CHECK(message(R"({"dimension": 2, "bounds": {"lower": [0, 0], "upper": [1, 1]},
                   "obstacles": [{"type": "torus"}], "start": [0, 0], "goal": [1, 1]})")
            .find("obstacles[0].type") != std::string::npos);
  CHECK(message(R"({"dimension": 2, "bounds": {"lower": [0, 0], "upper": [1, 1]}, "start": [0, "x"], "goal": [1, 1]})")
            .find("start[1]") != std::string::npos);
}

TEST_CASE("sweep documents") {
  const SweepSpec s = parse_sweep(R"({"problem": "narrow_passage", "dims": [2, 3], "parameter": "nu",
    "values": [0.9, 0.999], "variants": ["mi", "informed"], "repetitions": 5, "iteration_cap": 1000,
    "early_stop_multiplier": 1.02})");
  CHECK(s.dims == std::vector<std::size_t>{2, 3});
  CHECK(s.parameter == SweepParameter::Nu);
  CHECK(s.variants.size() == 2);
  CHECK(s.early_stop_multiplier == doctest::Approx(1.02));
  CHECK_THROWS_AS(parse_sweep(R"({"problem": "narrow_passage"})"), InputError);
  CHECK_THROWS_AS(parse_sweep(R"({"problem": "narrow_passage", "dims": [2], "parameter": "R0", "values": [],
    "variants": ["mi"], "repetitions": 1, "iteration_cap": 10})"),
                  InputError);
  CHECK_THROWS_AS(parse_sweep(R"({"problem": "narrow_passage", "dims": [2], "parameter": "eta", "values": [1],
    "variants": ["mi"], "repetitions": 1, "iteration_cap": 10})"),
                  InputError);
}

TEST_CASE("solution path document") {
  const Path path({mirrt::testing::v({0, 0}), mirrt::testing::v({3, 4})});
  const std::string doc = path_to_json(path, -1);
  CHECK(doc == R"({"cost":5.0,"waypoints":[[0.0,0.0],[3.0,4.0]]})");
}
