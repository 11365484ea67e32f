#pragma once

#include "mirrt/benchmark.hpp"
#include "mirrt/geometry.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace mirrt {

/// Malformed input file: syntax error, missing field or wrong type. The
/// message names the offending line or field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a problem document. Structural problems raise InputError; the
/// returned problem is NOT checked against its invariants (see
/// problem_violations) so that callers can report every violation.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::filesystem::path& path);

std::string problem_to_json(const Problem& problem, int indent = 2);

SweepSpec parse_sweep(const std::string& text);
SweepSpec load_sweep(const std::filesystem::path& path);

std::string path_to_json(const Path& path, int indent = 2);

std::string read_file(const std::filesystem::path& path);

}  // namespace mirrt
