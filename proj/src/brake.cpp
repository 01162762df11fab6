#include "mash/brake.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mash/errors.hpp"

namespace mash {

std::vector<std::string> violations(const BrakeParams& p) {
  std::vector<std::string> out;
  if (!(p.eps_r > 0)) out.emplace_back("eps_r must be > 0");
  if (!(p.eps_0 > 0)) out.emplace_back("eps_0 must be > 0");
  if (!(p.area > 0)) out.emplace_back("area must be > 0");
  if (!(p.gap > 0)) out.emplace_back("gap must be > 0");
  if (!(p.mu > 0 && p.mu <= 1.5)) out.emplace_back("mu must be in (0, 1.5]");
  if (!(p.u_max > 0)) out.emplace_back("u_max must be > 0");
  if (!(p.tau > 0)) out.emplace_back("tau must be > 0");
  return out;
}

void validate(const BrakeParams& params) {
  if (auto v = violations(params); !v.empty()) throw ValidationError(std::move(v));
}

namespace {

// Everything in the force law except U^2 / d^2.
double force_prefactor(const BrakeParams& p) {
  return p.mu * p.eps_r * p.eps_0 * p.area / 2.0;
}

void check_voltage(const BrakeParams& p, double voltage) {
  if (!(voltage >= 0.0 && voltage <= p.u_max)) {
    std::ostringstream msg;
    msg << "brake voltage " << voltage << " V outside [0, " << p.u_max << "] V";
    throw DomainError(msg.str());
  }
}

}  // namespace

double braking_force(const BrakeParams& params, double voltage) {
  check_voltage(params, voltage);
  return force_prefactor(params) * voltage * voltage / (params.gap * params.gap);
}

double required_gap_for_force(const BrakeParams& params, double voltage,
                              double target_force) {
  if (!(voltage > 0.0) || !(target_force > 0.0)) {
    throw NoSolutionError("required_gap_for_force needs voltage > 0 and force > 0");
  }
  return std::sqrt(force_prefactor(params) * voltage * voltage / target_force);
}

BrakeState engagement_step(const BrakeState& state, double commanded_voltage,
                           double dt, const BrakeParams& params) {
  if (!(dt >= 0.0)) throw DomainError("engagement_step: dt must be >= 0");
  check_voltage(params, commanded_voltage);
  if (dt == 0.0) return state;
  const double target = commanded_voltage > 0.0 ? 1.0 : 0.0;
  const double decay = std::exp(-dt / params.tau);
  double engagement = target + (state.engagement - target) * decay;
  engagement = std::clamp(engagement, 0.0, 1.0);
  return {commanded_voltage, engagement};
}

double available_force(const BrakeState& state, const BrakeParams& params) {
  return state.engagement * braking_force(params, state.voltage);
}

FilterOutput limited_recursive_average(const FilterState& filter, double sample) {
  const double step =
      std::clamp(filter.alpha * (sample - filter.value), -filter.max_step, filter.max_step);
  FilterOutput out{filter, filter.value + step};
  out.state.value = out.filtered;
  return out;
}

}  // namespace mash
