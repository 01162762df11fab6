#include "mash/harness/plant.hpp"

#include <algorithm>
#include <limits>

namespace mash {

namespace {

constexpr int kPathSamples = 48;
constexpr int kBisections = 60;
constexpr double kLockEngagement = 0.5;

Actuation lerp(const Actuation& a, const Actuation& b, double s) {
  return {a.pressure + s * (b.pressure - a.pressure), a.inner + s * (b.inner - a.inner),
          a.outer + s * (b.outer - a.outer)};
}

}  // namespace

Plant::Plant(ModelConfig model, std::vector<ObjectModel> objects, double clearance_margin)
    : model_(std::move(model)),
      objects_(std::move(objects)),
      clearance_margin_(clearance_margin),
      presented_(objects_.size(), false) {
  for (std::size_t f = 0; f < kFingers; ++f) {
    fingers_[f].pose = actuator_pose(model_.gripper.actuator(f), model_.law, {});
  }
  present_objects();
  evaluate_grips();
}

double Plant::clearance_to_objects(std::size_t finger, const ArcConfig& pose) const {
  double nearest = std::numeric_limits<double>::infinity();
  const Vec3 p = contact_point(model_.gripper, finger, pose);
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!presented_[i] || !interacts(objects_[i], finger)) continue;
    nearest = std::min(nearest, signed_distance(objects_[i], p));
  }
  return nearest;
}

void Plant::advance(std::size_t f, const Actuation& target) {
  auto& finger = fingers_[f];
  const auto& geom = model_.gripper.actuator(f);
  finger.drive = target;

  // Both layers holding: the actuator is locked at its current shape.
  finger.locked = target.inner >= kLockEngagement && target.outer >= kLockEngagement;
  if (finger.locked) return;

  auto penetrates = [&](double s) {
    return clearance_to_objects(f, actuator_pose(geom, model_.law, lerp(finger.kinematic, target, s))) < 0.0;
  };

  double hit = -1.0;
  for (int i = 1; i <= kPathSamples; ++i) {
    const double s = static_cast<double>(i) / kPathSamples;
    if (penetrates(s)) {
      hit = s;
      break;
    }
  }

  if (hit < 0.0) {
    finger.kinematic = target;
    finger.pose = actuator_pose(geom, model_.law, target);
    if (clearance_to_objects(f, finger.pose) > model_.gripper.contact_tolerance) {
      finger.contact_pressure.reset();
    } else if (!finger.contact_pressure) {
      finger.contact_pressure = target.pressure;
    }
    return;
  }

  double lo = hit - 1.0 / kPathSamples;
  double hi = hit;
  for (int i = 0; i < kBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    (penetrates(mid) ? hi : lo) = mid;
  }
  const Actuation stop = lerp(finger.kinematic, target, lo);
  finger.kinematic = stop;
  finger.pose = actuator_pose(geom, model_.law, stop);
  if (!finger.contact_pressure) finger.contact_pressure = stop.pressure;
}

void Plant::present_objects() {
  const auto& cfg = model_.gripper;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (presented_[i]) continue;
    const auto& object = objects_[i];
    const double needed = radial_extent(object) + cfg.contact_tolerance;
    bool fits = true;
    for (PairId pair : {PairId::A, PairId::B}) {
      const auto [f0, f1] = fingers_of(pair);
      if (!interacts(object, f0)) continue;
      const double opening = aperture(cfg, fingers_[f0].pose, fingers_[f1].pose);
      if (clear_radius(cfg, opening) < needed) fits = false;
      for (std::size_t f : {f0, f1}) {
        if (signed_distance(object, contact_point(cfg, f, fingers_[f].pose)) <= cfg.contact_tolerance) {
          fits = false;
        }
      }
    }
    presented_[i] = fits;
  }
}

std::array<FingerState, kFingers> Plant::finger_states() const {
  std::array<FingerState, kFingers> out;
  for (std::size_t f = 0; f < kFingers; ++f) {
    out[f] = {fingers_[f].pose, fingers_[f].drive, fingers_[f].contact_pressure};
  }
  return out;
}

void Plant::evaluate_grips() {
  const auto states = finger_states();
  grips_.clear();
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!presented_[i]) {
      grips_.push_back({GripStatus::OutOfRange, {}, {}, {}, 0.0});
      continue;
    }
    grips_.push_back(grip_check(model_.gripper, model_.law, states, objects_[i]));
  }
}

void Plant::apply(const Command& command, double dt) {
  for (std::size_t f = 0; f < kFingers; ++f) {
    const auto& geom = model_.gripper.actuator(f);
    auto& [inner, outer] = brakes_[f];
    inner = engagement_step(inner, command.voltages[f].inner, dt, geom.inner_brake);
    outer = engagement_step(outer, command.voltages[f].outer, dt, geom.outer_brake);
  }
  for (std::size_t f = 0; f < kFingers; ++f) {
    const double pressure = command.pressure(pair_of(f));
    free_extension(model_.gripper.actuator(f), model_.law, pressure);  // range check
    advance(f, {pressure, brakes_[f][0].engagement, brakes_[f][1].engagement});
  }
  present_objects();
  evaluate_grips();
}

Observation Plant::observe() const {
  const auto& cfg = model_.gripper;
  Observation obs;
  for (std::size_t f = 0; f < kFingers; ++f) {
    obs.tips[f] = fingers_[f].pose;
    obs.engagements[f] = {brakes_[f][0].engagement, brakes_[f][1].engagement};
    obs.contacts[f] = clearance_to_objects(f, fingers_[f].pose) <= cfg.contact_tolerance;
  }
  obs.apertures = {aperture(cfg, fingers_[0].pose, fingers_[1].pose),
                   aperture(cfg, fingers_[2].pose, fingers_[3].pose)};
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const auto& object = objects_[i];
    ObjectView view;
    view.in_range = presented_[i];
    view.required_aperture = required_aperture(cfg, object, clearance_margin_);
    view.level = object.center.z;
    view.grip = grips_[i].status;
    view.contacts = static_cast<int>(grips_[i].contacts.size());
    for (std::size_t f = 0; f < kFingers; ++f) view.fingers += interacts(object, f) ? 1 : 0;
    obs.objects.push_back(view);
  }
  return obs;
}

}  // namespace mash
