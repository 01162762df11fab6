#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "mash/actuator.hpp"
#include "mash/brake.hpp"
#include "mash/gripper.hpp"
#include "mash/material.hpp"

namespace mash {

/// Physical model shared by scenarios, characterization sweeps and
/// calibration problems.
///
/// JSON sections (all optional):
///   "brake"         applied to all eight brake layers
///   "actuator"      rest_length / layer_gap / p_max for all four actuators
///   "actuators"     array of four per-actuator overrides (A0, A1, B0, B1),
///                   each may carry "inner_brake" / "outer_brake"
///   "extension_law" {"anchors": [[kPa, mm], ...] | "csv": path, "interpolation"}
///   "gripper", "stiffness", "yeoh", "filter"
struct ModelConfig {
  ExtensionLaw law = ExtensionLaw::measured_default();
  GripperConfig gripper;
  StiffnessParams stiffness;
  YeohCoefficients yeoh;
  FilterState filter;
};

/// Appends every problem to `errors`; `base_dir` resolves relative CSV paths.
ModelConfig parse_model_config(const nlohmann::json& j, const std::filesystem::path& base_dir,
                               std::vector<std::string>& errors);

/// Keys parse_model_config() consumes, for callers that embed it.
const std::vector<std::string>& model_config_keys();

std::vector<std::string> violations(const ModelConfig& model);

/// Same layer gap on all four actuators.
void set_layer_gap(GripperConfig& gripper, double layer_gap);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace mash
