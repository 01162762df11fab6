#include "mash/gripper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mash/errors.hpp"

namespace mash {

PairId pair_of(std::size_t finger) { return finger < 2 ? PairId::A : PairId::B; }

double azimuth(std::size_t finger) {
  static constexpr std::array<double, kFingers> kAzimuth = {
      0.0, std::numbers::pi, std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 2.0};
  return kAzimuth.at(finger);
}

std::array<std::size_t, 2> fingers_of(PairId pair) {
  return pair == PairId::A ? std::array<std::size_t, 2>{0, 1} : std::array<std::size_t, 2>{2, 3};
}

const ActuatorGeometry& GripperConfig::actuator(std::size_t finger) const {
  return pair_of(finger) == PairId::A ? pair_a.at(finger) : pair_b.at(finger - 2);
}

std::vector<std::string> violations(const GripperConfig& cfg) {
  std::vector<std::string> out;
  if (!(cfg.mount_separation > 0)) out.emplace_back("mount_separation must be > 0");
  if (!(cfg.fingertip_mu > 0)) out.emplace_back("fingertip_mu must be > 0");
  if (!(cfg.fingertip_area > 0)) out.emplace_back("fingertip_area must be > 0");
  if (!(cfg.fingertip_depth >= 0 && cfg.fingertip_depth < cfg.mount_separation / 2)) {
    out.emplace_back("fingertip_depth must be in [0, mount_separation / 2)");
  }
  if (!(cfg.grip_force_gain > 0)) out.emplace_back("grip_force_gain must be > 0");
  if (!(cfg.contact_tolerance > 0)) out.emplace_back("contact_tolerance must be > 0");
  for (std::size_t f = 0; f < kFingers; ++f) {
    for (auto& v : violations(cfg.actuator(f))) {
      out.push_back("actuator[" + std::to_string(f) + "]." + v);
    }
  }
  return out;
}

std::vector<std::string> violations(const ObjectModel& object) {
  std::vector<std::string> out;
  const std::string prefix = "object '" + object.name + "': ";
  if (const auto* s = std::get_if<Sphere>(&object.shape)) {
    if (!(s->radius > 0)) out.push_back(prefix + "radius must be > 0");
  } else {
    const auto& a = std::get<Annulus>(object.shape);
    if (!(a.outer_radius > 0)) out.push_back(prefix + "outer_radius must be > 0");
    if (!(a.inner_radius >= 0 && a.inner_radius < a.outer_radius)) {
      out.push_back(prefix + "inner_radius must be in [0, outer_radius)");
    }
    if (!(a.height > 0)) out.push_back(prefix + "height must be > 0");
  }
  if (!(object.mass >= 0)) out.push_back(prefix + "mass must be >= 0");
  if (!(object.surface_mu > 0)) out.push_back(prefix + "surface_mu must be > 0");
  return out;
}

double signed_distance(const ObjectModel& object, const Vec3& p) {
  const double dx = p.x - object.center.x;
  const double dy = p.y - object.center.y;
  const double dz = p.z - object.center.z;
  if (const auto* s = std::get_if<Sphere>(&object.shape)) {
    return std::sqrt(dx * dx + dy * dy + dz * dz) - s->radius;
  }
  // Rectangle [inner, outer] x [-h/2, h/2] in the (radius, axial) half plane.
  const auto& a = std::get<Annulus>(object.shape);
  const double r = std::hypot(dx, dy);
  const double mid = 0.5 * (a.inner_radius + a.outer_radius);
  const double qr = std::abs(r - mid) - 0.5 * (a.outer_radius - a.inner_radius);
  const double qz = std::abs(dz) - 0.5 * a.height;
  const double outside = std::hypot(std::max(qr, 0.0), std::max(qz, 0.0));
  return outside + std::min(std::max(qr, qz), 0.0);
}

double radial_extent(const ObjectModel& object) {
  const double offset = std::hypot(object.center.x, object.center.y);
  if (const auto* s = std::get_if<Sphere>(&object.shape)) return offset + s->radius;
  return offset + std::get<Annulus>(object.shape).outer_radius;
}

bool interacts(const ObjectModel& object, std::size_t finger) {
  const unsigned bit = pair_of(finger) == PairId::A ? 1u : 2u;
  return (static_cast<unsigned>(object.pairs) & bit) != 0;
}

Vec3 contact_point(const GripperConfig& cfg, std::size_t finger, const ArcConfig& pose) {
  // Opposed pads meet on the axis; a pad never crosses it.
  const double rho = std::max(0.0, cfg.mount_separation / 2.0 - pose.tip_x - cfg.fingertip_depth);
  const double phi = azimuth(finger);
  return {rho * std::cos(phi), rho * std::sin(phi), pose.tip_y};
}

double aperture(const GripperConfig& cfg, const ArcConfig& first, const ArcConfig& second) {
  return std::max(0.0, cfg.mount_separation - (first.tip_x + second.tip_x));
}

double required_aperture(const GripperConfig& cfg, const ObjectModel& object, double margin) {
  return 2.0 * (radial_extent(object) + cfg.fingertip_depth + margin);
}

double pair_aperture(const GripperConfig& cfg, const ExtensionLaw& law, PairId pair,
                     double pressure, ApertureMode mode, double engagement) {
  const auto [f0, f1] = fingers_of(pair);
  if (mode == ApertureMode::Neutral) {
    free_extension(cfg.actuator(f0), law, pressure);  // range check only
    free_extension(cfg.actuator(f1), law, pressure);
    return cfg.mount_separation;
  }
  const BrakeSide side = mode == ApertureMode::Outward ? BrakeSide::Outer : BrakeSide::Inner;
  return aperture(cfg, bend_config(cfg.actuator(f0), law, pressure, side, engagement),
                  bend_config(cfg.actuator(f1), law, pressure, side, engagement));
}

double grip_radius(const GripperConfig& cfg, const ExtensionLaw& law, ApertureMode mode,
                   double pressure, double engagement) {
  const double a = pair_aperture(cfg, law, PairId::A, pressure, mode, engagement);
  const double b = pair_aperture(cfg, law, PairId::B, pressure, mode, engagement);
  return std::max(0.0, clear_radius(cfg, std::min(a, b)));
}

double normal_force(const GripperConfig& cfg, double pressure_residual, double inner_engagement) {
  return cfg.grip_force_gain * std::max(0.0, pressure_residual) * inner_engagement;
}

namespace {

// Whether closing from the current actuation (engage the inner layer, then
// ramp to full pressure) ever brings the pad within tolerance of the object.
bool sweep_reaches(const GripperConfig& cfg, const ExtensionLaw& law, std::size_t finger,
                   const Actuation& start, const ObjectModel& object) {
  constexpr int kSamples = 200;
  const auto& geom = cfg.actuator(finger);
  const double p_top = std::min(geom.p_max, law.max_pressure());
  const double p_start = std::clamp(start.pressure, 0.0, p_top);
  auto touches = [&](const Actuation& a) {
    const auto pose = actuator_pose(geom, law, a);
    return signed_distance(object, contact_point(cfg, finger, pose)) <= cfg.contact_tolerance;
  };
  for (int i = 0; i <= kSamples; ++i) {
    const double s = static_cast<double>(i) / kSamples;
    if (touches({p_start, start.inner + s * (1.0 - start.inner), start.outer * (1.0 - s)})) {
      return true;
    }
  }
  for (int i = 0; i <= kSamples; ++i) {
    const double s = static_cast<double>(i) / kSamples;
    if (touches({p_start + s * (p_top - p_start), 1.0, 0.0})) return true;
  }
  return false;
}

}  // namespace

GripOutcome grip_check(const GripperConfig& cfg, const ExtensionLaw& law,
                       std::span<const FingerState, kFingers> fingers,
                       const ObjectModel& object) {
  GripOutcome out;
  bool anything_commanded = false;
  bool penetrated = false;
  std::array<bool, kFingers> touching{};

  for (std::size_t f = 0; f < kFingers; ++f) {
    if (!interacts(object, f)) continue;
    const auto& fs = fingers[f];
    if (fs.actuation.pressure > 0.0) anything_commanded = true;
    const Vec3 p = contact_point(cfg, f, fs.pose);
    const double d = signed_distance(object, p);
    if (d < -cfg.contact_tolerance) penetrated = true;
    if (d <= cfg.contact_tolerance) {
      touching[f] = true;
      const double residual = fs.actuation.pressure - fs.contact_pressure.value_or(fs.actuation.pressure);
      out.fingers.push_back(f);
      out.contacts.push_back(p);
      out.normal_force.push_back(normal_force(cfg, residual, fs.actuation.inner));
    }
  }

  if (out.contacts.empty() && !anything_commanded) {
    out.status = GripStatus::NoContact;
    return out;
  }
  if (penetrated) {
    out = GripOutcome{};
    out.status = GripStatus::OutOfRange;
    return out;
  }
  if (out.contacts.empty()) {
    bool reachable = false;
    for (std::size_t f = 0; f < kFingers && !reachable; ++f) {
      if (interacts(object, f)) reachable = sweep_reaches(cfg, law, f, fingers[f].actuation, object);
    }
    out.status = reachable ? GripStatus::NoContact : GripStatus::OutOfRange;
    return out;
  }

  const bool opposed = (touching[0] && touching[1]) || (touching[2] && touching[3]);
  double total_normal = 0.0;
  for (double n : out.normal_force) total_normal += n;
  const double mu = std::min(cfg.fingertip_mu, object.surface_mu);
  const double holdable = opposed ? total_normal * mu / kGravity : 0.0;  // kg

  if (object.mass > 0.0) {
    out.payload_margin = holdable / object.mass;
  } else {
    out.payload_margin = opposed ? std::numeric_limits<double>::infinity() : 0.0;
  }
  out.status = opposed && holdable >= object.mass ? GripStatus::Gripped : GripStatus::Slipped;
  return out;
}

const char* to_string(GripStatus status) {
  switch (status) {
    case GripStatus::Gripped: return "Gripped";
    case GripStatus::NoContact: return "NoContact";
    case GripStatus::OutOfRange: return "OutOfRange";
    case GripStatus::Slipped: return "Slipped";
  }
  return "?";
}

}  // namespace mash
