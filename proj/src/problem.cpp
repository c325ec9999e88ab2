#include "rosl/problem.hpp"

#include <fstream>
#include <stdexcept>

namespace rosl {

ProblemSpec problem_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("problem: expected a JSON object");
  if (!j.contains("map")) throw std::invalid_argument("problem: missing \"map\"");
  if (!j.contains("y_bar")) throw std::invalid_argument("problem: missing \"y_bar\"");

  BuiltinMapSpec map_spec = map_spec_from_json(j.at("map"));
  Multimap map = make_multimap(map_spec);

  SolveConfig config;
  if (j.contains("config")) config = solve_config_from_json(j.at("config"));
  const bool config_has_l = j.contains("config") && j.at("config").contains("l");
  if (!config_has_l) {
    if (!map.declared_l())
      throw std::invalid_argument("problem: config.l missing and the map declares no l");
    config.l = *map.declared_l();
  }
  if (!config.L && map.declared_L()) config.L = map.declared_L();

  ProblemSpec spec{std::move(map_spec), std::move(map), vector_from_json(j.at("y_bar")),
                   config,              {},             {},
                   {}};
  if (spec.y_bar.dim() != spec.map.dim())
    throw std::invalid_argument("problem: y_bar dimension must match the map");

  if (j.contains("x0")) {
    spec.x0 = vector_from_json(j.at("x0"));
    if (spec.x0->dim() != spec.map.dim())
      throw std::invalid_argument("problem: x0 dimension must match the map");
  }
  if (j.contains("box")) {
    spec.box = box_from_json(j.at("box"));
    if (spec.box->dim() != spec.map.dim())
      throw std::invalid_argument("problem: box dimension must match the map");
  }
  if (j.contains("grid_counts")) {
    for (const auto& e : j.at("grid_counts")) {
      int n = e.get<int>();
      if (n < 1) throw std::invalid_argument("problem: grid counts must be >= 1");
      spec.grid_counts.push_back(n);
    }
    if (spec.grid_counts.size() != static_cast<size_t>(spec.map.dim()))
      throw std::invalid_argument("problem: grid_counts must list one count per dimension");
  }
  return spec;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("problem: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("problem '" + path + "': " + e.what());
  }
  return problem_from_json(j);
}

}  // namespace rosl
