#pragma once

#include <string>
#include <vector>

#include "mash/brake.hpp"
#include "mash/material.hpp"

namespace mash {

/// Structural dimensions of one MASH actuator. Lengths in mm, pressure in kPa.
struct ActuatorGeometry {
  double rest_length = 104.0;
  double layer_gap = 20.0;  // strain-limiting layer to extending wall, lever arm w
  double p_max = 100.0;
  BrakeParams inner_brake;
  BrakeParams outer_brake;
};

std::vector<std::string> violations(const ActuatorGeometry& geom);

enum class BrakeSide { Inner, Outer };

/// Constant-curvature pose of one actuator in its mounting plane.
///
/// tip_x is lateral and positive toward the gripper axis; tip_y is axial,
/// measured from the base along the unbent actuator direction.
struct ArcConfig {
  double theta = 0.0;       // rad, + bends inward
  double arc_length = 0.0;  // mm
  double curvature = 0.0;   // 1/mm, theta / arc_length
  double tip_x = 0.0;       // mm
  double tip_y = 0.0;       // mm
  double tip_tangent = 0.0; // rad from the axial direction
};

/// Builds the arc from bend angle and centerline length. Near theta = 0 the
/// tip position uses a series expansion, so it is finite at exactly 0.
ArcConfig arc_from(double theta, double arc_length);

/// Pressure plus both brake-layer engagements of one actuator.
struct Actuation {
  double pressure = 0.0;  // kPa
  double inner = 0.0;     // engagement 0..1
  double outer = 0.0;
};

struct StiffnessParams {
  double ei_free = 5000.0;     // N mm^2, brakes off
  double ei_engaged = 50000.0; // N mm^2, brake holding without slip
  double slip_lever = 50.0;    // mm
};

std::vector<std::string> violations(const StiffnessParams& params);

/// Unconstrained SPA length. Throws RangeError above geom.p_max.
double free_extension(const ActuatorGeometry& geom, const ExtensionLaw& law, double pressure);

/// One wall held by its brake, the other free to extend.
double bend_angle(const ActuatorGeometry& geom, const ExtensionLaw& law, double pressure,
                  BrakeSide braked_side, double engagement);

ArcConfig bend_config(const ActuatorGeometry& geom, const ExtensionLaw& law, double pressure,
                      BrakeSide braked_side, double engagement);

/// General pose: the net engagement (inner - outer) decides side and amount
/// of bending. Reduces to bend_config when one side is off.
ArcConfig actuator_pose(const ActuatorGeometry& geom, const ExtensionLaw& law,
                        const Actuation& actuation);

/// Moment (N mm) above which the engaged layer slips.
double slip_threshold(const StiffnessParams& sp, const BrakeParams& brake, double voltage);

double effective_rigidity(const StiffnessParams& sp, const BrakeParams& brake, double voltage,
                          double applied_moment);

/// Tip angle of a horizontal cantilever carrying `tip_mass` kg at its end.
double tip_deflection_under_load(const ActuatorGeometry& geom, const StiffnessParams& sp,
                                 const BrakeParams& brake, double voltage, double tip_mass);

}  // namespace mash
