#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mash/controller.hpp"
#include "mash/harness/config.hpp"

namespace mash {

/// Declarative experiment: model, objects, strategy and time stepping.
///
/// {
///   "name": "...", "dt": 0.01, "t_max": 5.0, "seed": 0,
///   <model sections, see ModelConfig>,
///   "objects": [{"name", "shape": "sphere" | "annulus", "radius" |
///                "outer_radius"/"inner_radius"/"height", "mass",
///                "center": [x, y, z], "surface_mu", "pairs": "A"|"B"|"both"}],
///   "strategy": {"kind": "SmallSingle" | "LargeSingle" | "MultiObject",
///                <StrategyParams fields>}
/// }
struct Scenario {
  std::string name;
  ModelConfig model;
  std::vector<ObjectModel> objects;
  Strategy strategy = Strategy::SmallSingle;
  StrategyParams params;
  double dt = 0.01;
  double t_max = 10.0;
  std::uint64_t seed = 0;
};

/// Throws ValidationError listing every violated field.
Scenario parse_scenario(const nlohmann::json& j, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

std::vector<std::string> violations(const Scenario& scenario);

}  // namespace mash
