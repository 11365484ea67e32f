#include "mirrt/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mirrt {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column pair.
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
}

const json& require(const json& obj, const std::string& field, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(field);
  if (it == obj.end()) throw InputError(where + ": missing field '" + field + "'");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(where + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a string");
  return v.get<std::string>();
}

Configuration as_vector(const json& v, const std::string& where, std::size_t n) {
  if (!v.is_array()) throw InputError(where + ": expected an array of numbers");
  if (v.size() != n) {
    throw InputError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  Configuration x(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) x[static_cast<Eigen::Index>(i)] = as_number(v[i], where + "[" + std::to_string(i) + "]");
  return x;
}

Obstacle parse_obstacle(const json& o, const std::string& where, std::size_t n) {
  const std::string type = as_string(require(o, "type", where), where + ".type");
  if (type == "box") {
    return AxisAlignedBox{as_vector(require(o, "min", where), where + ".min", n),
                          as_vector(require(o, "max", where), where + ".max", n)};
  }
  if (type == "sphere") {
    return HyperSphere{as_vector(require(o, "center", where), where + ".center", n),
                       as_number(require(o, "radius", where), where + ".radius")};
  }
  if (type == "hollow_spherinder") {
    HollowSpherinder s;
    s.length = as_number(require(o, "length", where), where + ".length");
    s.outer_radius = as_number(require(o, "outer_radius", where), where + ".outer_radius");
    s.cavity_radius = as_number(require(o, "cavity_radius", where), where + ".cavity_radius");
    if (o.contains("axis")) s.axis = as_count(o["axis"], where + ".axis");
    return s;
  }
  throw InputError(where + ".type: unknown obstacle type '" + type + "'");
}

json vector_json(const ConfigRef& x) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) arr.push_back(x[i]);
  return arr;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem parse_problem(const std::string& text) {
  const json doc = parse_json(text);
  const std::size_t n = as_count(require(doc, "dimension", "problem"), "dimension");
  if (n < 1) throw InputError("dimension: must be >= 1");
  const json& bounds = require(doc, "bounds", "problem");
  Problem p;
  p.bounds.lower = as_vector(require(bounds, "lower", "bounds"), "bounds.lower", n);
  p.bounds.upper = as_vector(require(bounds, "upper", "bounds"), "bounds.upper", n);
  if (doc.contains("obstacles")) {
    const json& obstacles = doc["obstacles"];
    if (!obstacles.is_array()) throw InputError("obstacles: expected an array");
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      p.obstacles.push_back(parse_obstacle(obstacles[i], "obstacles[" + std::to_string(i) + "]", n));
    }
  }
  p.start = as_vector(require(doc, "start", "problem"), "start", n);
  p.goal = as_vector(require(doc, "goal", "problem"), "goal", n);
  p.edge_resolution = doc.contains("edge_resolution") ? as_number(doc["edge_resolution"], "edge_resolution")
                                                      : 0.005 * p.bounds.diameter();
  p.lower_bound_u = doc.contains("lower_bound_u") ? as_number(doc["lower_bound_u"], "lower_bound_u") : p.c_min();
  return p;
}

Problem load_problem(const std::filesystem::path& path) { return parse_problem(read_file(path)); }

std::string problem_to_json(const Problem& p, int indent) {
  json doc;
  doc["dimension"] = p.dimension();
  doc["bounds"] = {{"lower", vector_json(p.bounds.lower)}, {"upper", vector_json(p.bounds.upper)}};
  json obstacles = json::array();
  for (const auto& o : p.obstacles) {
    if (const auto* box = std::get_if<AxisAlignedBox>(&o)) {
      obstacles.push_back({{"type", "box"}, {"min", vector_json(box->min)}, {"max", vector_json(box->max)}});
    } else if (const auto* sphere = std::get_if<HyperSphere>(&o)) {
      obstacles.push_back({{"type", "sphere"}, {"center", vector_json(sphere->center)}, {"radius", sphere->radius}});
    } else if (const auto* s = std::get_if<HollowSpherinder>(&o)) {
      obstacles.push_back({{"type", "hollow_spherinder"},
                           {"length", s->length},
                           {"outer_radius", s->outer_radius},
                           {"cavity_radius", s->cavity_radius},
                           {"axis", s->axis}});
    }
  }
  doc["obstacles"] = obstacles;
  doc["start"] = vector_json(p.start);
  doc["goal"] = vector_json(p.goal);
  doc["edge_resolution"] = p.edge_resolution;
  doc["lower_bound_u"] = p.lower_bound_u;
  return doc.dump(indent);
}

SweepSpec parse_sweep(const std::string& text) {
  const json doc = parse_json(text);
  SweepSpec spec;
  spec.problem = as_string(require(doc, "problem", "sweep"), "problem");
  const json& dims = require(doc, "dims", "sweep");
  if (!dims.is_array()) throw InputError("dims: expected an array");
  spec.dims.clear();
  for (std::size_t i = 0; i < dims.size(); ++i) spec.dims.push_back(as_count(dims[i], "dims[" + std::to_string(i) + "]"));

  const std::string parameter = as_string(require(doc, "parameter", "sweep"), "parameter");
  if (parameter == "R0" || parameter == "r0") {
    spec.parameter = SweepParameter::R0;
  } else if (parameter == "nu") {
    spec.parameter = SweepParameter::Nu;
  } else {
    throw InputError("parameter: expected \"R0\" or \"nu\", got '" + parameter + "'");
  }

  const json& values = require(doc, "values", "sweep");
  if (!values.is_array()) throw InputError("values: expected an array");
  spec.values.clear();
  for (std::size_t i = 0; i < values.size(); ++i) spec.values.push_back(as_number(values[i], "values[" + std::to_string(i) + "]"));

  const json& variants = require(doc, "variants", "sweep");
  if (!variants.is_array()) throw InputError("variants: expected an array");
  spec.variants.clear();
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const std::string where = "variants[" + std::to_string(i) + "]";
    auto v = parse_variant(as_string(variants[i], where));
    if (!v) throw InputError(where + ": unknown variant");
    spec.variants.push_back(*v);
  }

  spec.repetitions = as_count(require(doc, "repetitions", "sweep"), "repetitions");
  spec.iteration_cap = as_count(require(doc, "iteration_cap", "sweep"), "iteration_cap");
  if (doc.contains("early_stop_multiplier")) spec.early_stop_multiplier = as_number(doc["early_stop_multiplier"], "early_stop_multiplier");
  if (doc.contains("r0")) spec.r0 = as_number(doc["r0"], "r0");
  if (doc.contains("nu")) spec.nu = as_number(doc["nu"], "nu");
  if (doc.contains("p0")) spec.p0 = as_number(doc["p0"], "p0");
  if (doc.contains("gamma_measure")) {
    const std::string m = as_string(doc["gamma_measure"], "gamma_measure");
    if (m == "bounds") {
      spec.gamma_measure = GammaMeasure::Bounds;
    } else if (m == "informed") {
      spec.gamma_measure = GammaMeasure::InformedSet;
    } else {
      throw InputError("gamma_measure: expected \"bounds\" or \"informed\"");
    }
  }
  if (doc.contains("steer_step")) spec.steer_step = as_number(doc["steer_step"], "steer_step");
  if (doc.contains("seed")) spec.base_seed = as_count(doc["seed"], "seed");
  try {
    validate(spec);
  } catch (const UsageError& e) {
    throw InputError(e.what());
  }
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) { return parse_sweep(read_file(path)); }

std::string path_to_json(const Path& path, int indent) {
  json doc;
  doc["cost"] = path.total_cost();
  json waypoints = json::array();
  for (const auto& w : path.waypoints()) waypoints.push_back(vector_json(w));
  doc["waypoints"] = waypoints;
  return doc.dump(indent);
}

}  // namespace mirrt
