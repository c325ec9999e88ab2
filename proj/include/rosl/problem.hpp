#pragma once
// Problem files: a map, a target y_bar, a solver configuration, and the
// optional starting point / sampling box / grid used by the subcommands.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rosl/maps.hpp"
#include "rosl/solve.hpp"

namespace rosl {

struct ProblemSpec {
  BuiltinMapSpec map_spec;
  Multimap map;
  Vector y_bar;
  SolveConfig config;
  std::optional<Vector> x0;
  std::optional<Box> box;
  std::vector<int> grid_counts;
};

/// Parses a problem from JSON. The config inherits l and L from the map's
/// declared constants when the config itself does not set them.
ProblemSpec problem_from_json(const nlohmann::json& j);

/// Loads a problem file; propagates parse errors (with line/column info)
/// and validation errors as std::invalid_argument.
ProblemSpec load_problem(const std::string& path);

}  // namespace rosl
