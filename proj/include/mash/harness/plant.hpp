#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mash/controller.hpp"
#include "mash/harness/config.hpp"

namespace mash {

/// Quasi-static gripper state advanced by commands.
///
/// Each step relaxes the eight brake layers, sets the pair
/// pressures, and moves every finger toward its new equilibrium pose. A
/// finger whose pad would enter an object stops at the first touching pose
/// along the way and remembers the drive pressure at that moment.
///
/// Objects stay outside the workspace until they fit inside the open
/// fingertip envelope of every pair that can touch them; from then on they
/// take part in contact.
class Plant {
 public:
  Plant(ModelConfig model, std::vector<ObjectModel> objects, double clearance_margin);

  void apply(const Command& command, double dt);

  Observation observe() const;

  using LayerStates = std::array<BrakeState, 2>;  // inner, outer
  const std::array<LayerStates, kFingers>& brakes() const { return brakes_; }
  const std::vector<GripOutcome>& grips() const { return grips_; }
  const std::vector<bool>& presented() const { return presented_; }
  std::array<FingerState, kFingers> finger_states() const;
  const ModelConfig& model() const { return model_; }

 private:
  struct Finger {
    Actuation drive;      // applied pressure and engagements
    Actuation kinematic;  // actuation the current pose corresponds to
    ArcConfig pose;
    std::optional<double> contact_pressure;
    bool locked = false;
  };

  double clearance_to_objects(std::size_t finger, const ArcConfig& pose) const;
  void advance(std::size_t finger, const Actuation& target);
  void present_objects();
  void evaluate_grips();

  ModelConfig model_;
  std::vector<ObjectModel> objects_;
  double clearance_margin_;
  std::array<LayerStates, kFingers> brakes_{};
  std::array<Finger, kFingers> fingers_{};
  std::vector<bool> presented_;
  std::vector<GripOutcome> grips_;
};

}  // namespace mash
