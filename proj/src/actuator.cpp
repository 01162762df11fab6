#include "mash/actuator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mash/errors.hpp"

namespace mash {

std::vector<std::string> violations(const ActuatorGeometry& g) {
  std::vector<std::string> out;
  if (!(g.rest_length > 0)) out.emplace_back("rest_length must be > 0");
  if (!(g.layer_gap > 0)) out.emplace_back("layer_gap must be > 0");
  if (!(g.p_max > 0)) out.emplace_back("p_max must be > 0");
  for (auto& v : violations(g.inner_brake)) out.push_back("inner_brake." + v);
  for (auto& v : violations(g.outer_brake)) out.push_back("outer_brake." + v);
  return out;
}

std::vector<std::string> violations(const StiffnessParams& sp) {
  std::vector<std::string> out;
  if (!(sp.ei_free > 0)) out.emplace_back("ei_free must be > 0");
  if (!(sp.ei_engaged > sp.ei_free)) out.emplace_back("ei_engaged must exceed ei_free");
  if (!(sp.slip_lever > 0)) out.emplace_back("slip_lever must be > 0");
  return out;
}

namespace {

constexpr double kSeriesThreshold = 1e-3;

// (1 - cos t) / t and sin t / t, exact away from 0, Taylor series near it.
double one_minus_cos_over(double t) {
  if (std::abs(t) < kSeriesThreshold) {
    const double t2 = t * t;
    return t * (0.5 - t2 / 24.0 + t2 * t2 / 720.0);
  }
  return (1.0 - std::cos(t)) / t;
}

double sinc(double t) {
  if (std::abs(t) < kSeriesThreshold) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

void check_pressure(const ActuatorGeometry& geom, double pressure) {
  if (!(pressure >= 0.0 && pressure <= geom.p_max)) {
    std::ostringstream msg;
    msg << "pressure " << pressure << " kPa outside [0, " << geom.p_max << "] kPa";
    throw RangeError(msg.str());
  }
}

void check_engagement(double e) {
  if (!(e >= 0.0 && e <= 1.0)) throw DomainError("engagement must be in [0, 1]");
}

}  // namespace

ArcConfig arc_from(double theta, double arc_length) {
  ArcConfig c;
  c.theta = theta;
  c.arc_length = arc_length;
  c.curvature = arc_length > 0.0 ? theta / arc_length : 0.0;
  c.tip_x = arc_length * one_minus_cos_over(theta);
  c.tip_y = arc_length * sinc(theta);
  c.tip_tangent = theta;
  return c;
}

double free_extension(const ActuatorGeometry& geom, const ExtensionLaw& law, double pressure) {
  check_pressure(geom, pressure);
  return law.length(pressure);
}

double bend_angle(const ActuatorGeometry& geom, const ExtensionLaw& law, double pressure,
                  BrakeSide braked_side, double engagement) {
  check_engagement(engagement);
  const double extension = free_extension(geom, law, pressure) - geom.rest_length;
  const double sign = braked_side == BrakeSide::Inner ? 1.0 : -1.0;
  return sign * engagement * extension / geom.layer_gap;
}

namespace {

// Net engagement e in [-1, 1]: the braked wall length moves from L(P) to L0
// as |e| goes 0 -> 1, so the centerline is L - |e| (L - L0) / 2.
ArcConfig pose_for_net(const ActuatorGeometry& geom, double length, double net) {
  const double extension = length - geom.rest_length;
  const double theta = net * extension / geom.layer_gap;
  const double arc = length - std::abs(net) * extension / 2.0;
  return arc_from(theta, arc);
}

}  // namespace

ArcConfig bend_config(const ActuatorGeometry& geom, const ExtensionLaw& law, double pressure,
                      BrakeSide braked_side, double engagement) {
  check_engagement(engagement);
  const double length = free_extension(geom, law, pressure);
  const double net = braked_side == BrakeSide::Inner ? engagement : -engagement;
  return pose_for_net(geom, length, net);
}

ArcConfig actuator_pose(const ActuatorGeometry& geom, const ExtensionLaw& law,
                        const Actuation& a) {
  check_engagement(a.inner);
  check_engagement(a.outer);
  return pose_for_net(geom, free_extension(geom, law, a.pressure), a.inner - a.outer);
}

double slip_threshold(const StiffnessParams& sp, const BrakeParams& brake, double voltage) {
  return sp.slip_lever * braking_force(brake, voltage);
}

double effective_rigidity(const StiffnessParams& sp, const BrakeParams& brake, double voltage,
                          double applied_moment) {
  if (voltage <= 0.0) return sp.ei_free;
  return applied_moment <= slip_threshold(sp, brake, voltage) ? sp.ei_engaged : sp.ei_free;
}

double tip_deflection_under_load(const ActuatorGeometry& geom, const StiffnessParams& sp,
                                 const BrakeParams& brake, double voltage, double tip_mass) {
  if (!(tip_mass >= 0.0)) throw DomainError("tip_mass must be >= 0");
  const double moment = tip_mass * kGravity * geom.rest_length;  // N mm
  const double rigidity = effective_rigidity(sp, brake, voltage, moment);
  return moment * geom.rest_length / (2.0 * rigidity);
}

}  // namespace mash
