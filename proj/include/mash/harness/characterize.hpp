#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "mash/harness/config.hpp"

namespace mash {

enum class CharacterizeKind { BrakeForce, BrakeResponse, Extension, Aperture, Stiffness };

/// Sweep settings; every field may be overridden through the "sweep"
/// section of a characterization config.
struct SweepParams {
  double voltage_step = 100.0;   // brake_force, V
  double dt = 0.001;             // brake_response, s
  double duration = 0.5;         // s
  double t_on = 0.05;            // s
  double voltage = 2000.0;       // V
  double noise = 0.0;            // N, std-dev of additive gaussian force noise
  std::uint64_t seed = 1;
  std::vector<double> extension_pressures{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};  // kPa
  std::vector<double> aperture_pressures{5, 10, 15, 20, 25, 30};                       // kPa
  std::vector<double> loads{20, 40, 60, 80, 100};                                      // g
  std::vector<double> voltages{0, 600, 900, 1200, 1500, 1800, 2000};                   // V
};

struct CharacterizeConfig {
  ModelConfig model;
  SweepParams sweep;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column by name; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
};

Table characterize(CharacterizeKind kind, const CharacterizeConfig& config);

/// Comma-separated, shortest round-trip decimals, LF line endings.
void write_csv(std::ostream& out, const Table& table);

/// 10% to 90% crossing interval of a rising column, linearly interpolated
/// between samples. NaN when either level is never reached.
double rise_time(const Table& table, const std::string& time_column, const std::string& value_column,
                 double final_value = 1.0);

CharacterizeConfig parse_characterize_config(const nlohmann::json& j, const std::filesystem::path& base_dir);

const char* to_string(CharacterizeKind kind);
/// Throws UsageError for an unknown name.
CharacterizeKind characterize_kind_from_string(const std::string& name);

}  // namespace mash
