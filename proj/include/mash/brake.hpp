#pragma once

#include <limits>
#include <string>
#include <vector>

namespace mash {

inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kGravity = 9.81;                         // m/s^2

/// Electrostatic-adhesion brake constants. SI units throughout.
///
/// The default gap is chosen so that a 2000 V drive holds 0.2 kg
/// (1.962 N); see required_gap_for_force().
struct BrakeParams {
  double eps_r = 3.4;                 // PI film relative permittivity
  double eps_0 = kVacuumPermittivity;
  double area = 3.175e-4;             // electrode contact area, m^2
  double gap = 44.14e-6;              // dielectric thickness, m
  double mu = 0.2;                    // PI film friction coefficient
  double u_max = 2000.0;              // V
  double tau = 0.08;                  // engagement time constant, s
};

std::vector<std::string> violations(const BrakeParams& params);
void validate(const BrakeParams& params);

struct BrakeState {
  double voltage = 0.0;     // V
  double engagement = 0.0;  // 0..1
};

/// Limiting recursive averaging filter state.
struct FilterState {
  double value = 0.0;  // N
  double alpha = 0.2;
  double max_step = 0.05;  // N per sample
};

struct FilterOutput {
  FilterState state;
  double filtered = 0.0;
};

/// Static braking force, mu * eps_r * eps_0 * A * U^2 / (2 d^2).
/// Throws DomainError when voltage is outside [0, u_max].
double braking_force(const BrakeParams& params, double voltage);

/// Dielectric thickness at which `voltage` yields `target_force`.
/// params.gap is ignored. Throws NoSolutionError unless both inputs are > 0.
double required_gap_for_force(const BrakeParams& params, double voltage,
                              double target_force);

/// First-order lag of the engagement toward 1 (voltage on) or 0 (off).
BrakeState engagement_step(const BrakeState& state, double commanded_voltage,
                           double dt, const BrakeParams& params);

/// engagement * braking_force(voltage).
double available_force(const BrakeState& state, const BrakeParams& params);

FilterOutput limited_recursive_average(const FilterState& filter, double sample);

inline FilterState unlimited_filter(double alpha, double value = 0.0) {
  return {value, alpha, std::numeric_limits<double>::infinity()};
}

}  // namespace mash
