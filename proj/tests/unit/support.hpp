#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>

#include "mash/harness/config.hpp"

namespace mash::test {

inline std::filesystem::path source_path(const std::filesystem::path& relative) {
  return std::filesystem::path(MASH_SOURCE_DIR) / relative;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Layer gap fitted to the 256 mm aperture at 30 kPa.
inline constexpr double kCalibratedLayerGap = 13.394126219996437;

inline GripperConfig calibrated_gripper() {
  GripperConfig cfg;
  set_layer_gap(cfg, kCalibratedLayerGap);
  return cfg;
}

inline double relative_error(double actual, double expected) {
  return std::abs(actual - expected) / std::abs(expected);
}

}  // namespace mash::test
