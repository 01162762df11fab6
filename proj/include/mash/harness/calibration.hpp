#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mash/harness/config.hpp"

namespace mash {

/// Which forward model a dataset is fitted against, and its row layout
/// (inputs..., measured output):
///   ExtensionLaw   (pressure_kPa, length_mm)            -> lengths at knots
///   LayerGap       (pressure_kPa, pair_aperture_mm)     -> layer_gap
///   Stiffness      (voltage_V, tip_mass_kg, deflection_rad)
///                                                       -> ei_free, ei_engaged, slip_lever
///   BrakeTau       (time_s, engagement) after switch-on -> tau
///   Filter         (raw_sample_N, filtered_N) in order  -> alpha, max_step
///   GripForceGain  (pressure_residual_kPa, normal_force_N) -> grip_force_gain
enum class CalibrationModel { ExtensionLaw, LayerGap, Stiffness, BrakeTau, Filter, GripForceGain };

struct Bound {
  double lo = 0.0;
  double hi = 0.0;
};

struct CalibrationProblem {
  CalibrationModel model = CalibrationModel::LayerGap;
  std::vector<std::vector<double>> data;
  std::vector<Bound> bounds;
  std::vector<double> initial;  // empty -> centre of the bounds (a ramp for extension_law)
  double tolerance = 1e-10;     // relative SSE improvement that counts as converged
  ModelConfig base;             // fixed part of the forward model
  std::vector<double> knots;    // ExtensionLaw only; empty -> data pressures
  double filter_initial = 0.0;  // Filter only: value before the first sample
};

struct CalibrationResult {
  std::vector<std::string> names;
  std::vector<double> parameters;
  double sse = 0.0;
  double initial_sse = 0.0;
  int iterations = 0;
  bool converged = false;
};

std::size_t parameter_count(const CalibrationProblem& problem);
std::vector<std::string> parameter_names(const CalibrationProblem& problem);
std::vector<std::string> violations(const CalibrationProblem& problem);

/// Forward-model prediction for every data row.
std::vector<double> predict(const CalibrationProblem& problem, std::span<const double> params);

/// Sum of squared residuals. Throws NumericError naming the first row whose
/// residual is not finite.
double sum_squared_residuals(const CalibrationProblem& problem, std::span<const double> params);

/// Bounded derivative-free least squares. The result never has a larger SSE
/// than the initial guess.
CalibrationResult calibrate(const CalibrationProblem& problem);

/// {"model": "layer_gap", "data": [[...], ...], "bounds": [[lo, hi], ...],
///  "initial": [...], "tolerance": 1e-10, "knots": [...], "filter_initial": 0,
///  <model sections, see ModelConfig>}
CalibrationProblem parse_calibration_problem(const nlohmann::json& j,
                                             const std::filesystem::path& base_dir);

nlohmann::ordered_json to_json(const CalibrationResult& result, const CalibrationProblem& problem);

const char* to_string(CalibrationModel model);
CalibrationModel calibration_model_from_string(const std::string& name);

}  // namespace mash
