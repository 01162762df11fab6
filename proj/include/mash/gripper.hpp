#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mash/actuator.hpp"

namespace mash {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline constexpr std::size_t kFingers = 4;

enum class PairId { A, B };
enum class PairMask : unsigned { A = 1, B = 2, Both = 3 };

/// Fingers are ordered A0, A1, B0, B1 at azimuths 0, 180, 90, 270 degrees.
/// The two pairs are opposed and orthogonal to each other.
PairId pair_of(std::size_t finger);
double azimuth(std::size_t finger);
std::array<std::size_t, 2> fingers_of(PairId pair);

/// Four actuators on a circular base. Gripper frame: z along the gripper
/// axis pointing away from the base, lengths in mm.
struct GripperConfig {
  double mount_separation = 85.3;  // tip-to-tip distance of a pair at rest
  std::array<ActuatorGeometry, 2> pair_a{};
  std::array<ActuatorGeometry, 2> pair_b{};
  double fingertip_mu = 0.8;
  double fingertip_area = 870.0;  // mm^2
  double fingertip_depth = 12.65;  // pad thickness toward the axis
  double grip_force_gain = 0.05;   // N per kPa of residual pressure
  double contact_tolerance = 0.5;  // mm

  const ActuatorGeometry& actuator(std::size_t finger) const;
};

std::vector<std::string> violations(const GripperConfig& cfg);

struct Sphere {
  double radius = 0.0;
};

/// Hollow cylinder with its axis parallel to the gripper axis.
struct Annulus {
  double outer_radius = 0.0;
  double inner_radius = 0.0;
  double height = 0.0;
};

struct ObjectModel {
  std::string name;
  std::variant<Sphere, Annulus> shape = Sphere{};
  double mass = 0.0;  // kg
  Vec3 center;
  double surface_mu = 0.5;
  PairMask pairs = PairMask::Both;  // which pairs can touch it
};

std::vector<std::string> violations(const ObjectModel& object);

/// Negative inside the object.
double signed_distance(const ObjectModel& object, const Vec3& point);

/// Largest distance of the object's surface from the gripper axis.
double radial_extent(const ObjectModel& object);

bool interacts(const ObjectModel& object, std::size_t finger);

/// Fingertip pad surface point in the gripper frame, held on the axis once
/// the pad would cross it.
Vec3 contact_point(const GripperConfig& cfg, std::size_t finger, const ArcConfig& pose);

/// Tip-to-tip distance of two opposed fingers, floored at 0.
double aperture(const GripperConfig& cfg, const ArcConfig& first, const ArcConfig& second);

/// Pair aperture at the clear inner face of both pads.
inline double clear_radius(const GripperConfig& cfg, double pair_aperture) {
  return pair_aperture / 2.0 - cfg.fingertip_depth;
}

/// Aperture an object needs before it can be brought between the fingers.
double required_aperture(const GripperConfig& cfg, const ObjectModel& object, double margin);

enum class ApertureMode { Neutral, Outward, Inward };

double pair_aperture(const GripperConfig& cfg, const ExtensionLaw& law, PairId pair,
                     double pressure, ApertureMode mode, double engagement);

/// Largest sphere radius the fingers can close on from the given opening.
double grip_radius(const GripperConfig& cfg, const ExtensionLaw& law, ApertureMode mode,
                   double pressure, double engagement);

struct FingerState {
  ArcConfig pose;
  Actuation actuation;
  std::optional<double> contact_pressure;  // kPa at first touch
};

enum class GripStatus { Gripped, NoContact, OutOfRange, Slipped };

struct GripOutcome {
  GripStatus status = GripStatus::NoContact;
  std::vector<std::size_t> fingers;  // one entry per contact
  std::vector<Vec3> contacts;
  std::vector<double> normal_force;  // N
  double payload_margin = 0.0;       // holdable mass / object mass
};

/// Pad normal force from the pressure residual after contact.
double normal_force(const GripperConfig& cfg, double pressure_residual, double inner_engagement);

GripOutcome grip_check(const GripperConfig& cfg, const ExtensionLaw& law,
                       std::span<const FingerState, kFingers> fingers,
                       const ObjectModel& object);

const char* to_string(GripStatus status);

}  // namespace mash
