#pragma once

#include <array>
#include <string>
#include <vector>

#include "mash/gripper.hpp"

namespace mash {

enum class Strategy { SmallSingle, LargeSingle, MultiObject };

// MultiObject phases follow the eight steps of the multi-object demo:
// expand pair A, grip object 1, extend pair B, grip object 2, lift,
// release object 2, release object 1, vent.
enum class Phase {
  Idle,
  ArmInnerBrakes,
  Pressurize,
  Gripped,
  Hold,
  ArmOuterBrakes,
  ExpandOutward,
  ReleaseOuter,
  CloseInward,
  ExpandFirstPair,
  GripFirstPair,
  ExtendSecondPair,
  GripSecondPair,
  Lift,
  ReleaseSecondPair,
  ReleaseFirstPair,
  Vent,
};

enum class RunStatus { Running, Completed, Timeout, Abort };
enum class EventKind { PhaseTransition, Timeout, Abort };

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::PhaseTransition;
  Phase from = Phase::Idle;
  Phase to = Phase::Idle;
  std::string detail;
};

/// Inner/outer value for one actuator (voltages in V or engagements 0..1).
struct LayerPair {
  double inner = 0.0;
  double outer = 0.0;
};

struct Command {
  double pressure_a = 0.0;  // kPa, one regulator per pair
  double pressure_b = 0.0;
  std::array<LayerPair, kFingers> voltages{};

  double pressure(PairId pair) const { return pair == PairId::A ? pressure_a : pressure_b; }
};

/// What the controller knows about one target object (simulator ground truth).
struct ObjectView {
  bool in_range = false;
  double required_aperture = 0.0;  // mm
  double level = 0.0;              // axial position of the object center, mm
  GripStatus grip = GripStatus::NoContact;
  int contacts = 0;
  int fingers = 0;  // fingers able to touch it
};

struct Observation {
  std::array<ArcConfig, kFingers> tips{};
  std::array<double, 2> apertures{};
  std::array<bool, kFingers> contacts{};
  std::array<LayerPair, kFingers> engagements{};
  std::vector<ObjectView> objects;
  bool release_requested = false;
};

struct StrategyParams {
  double brake_voltage = 2000.0;
  double p_max = 100.0;
  double engage_threshold = 0.9;
  double release_threshold = 0.1;
  double ramp_rate = 20.0;      // kPa/s
  double phase_timeout = 10.0;  // s
  double hold_time = 0.5;       // s
  double clearance_margin = 2.0;  // mm added around an object before it is presented
};

std::vector<std::string> violations(const StrategyParams& params);

struct StrategyState {
  Strategy strategy = Strategy::SmallSingle;
  Phase phase = Phase::Idle;
  double phase_entry_time = 0.0;
  double last_time = 0.0;
  Command command;
  std::vector<Event> events;  // append-only
  RunStatus status = RunStatus::Running;
};

struct StepResult {
  Command command;
  StrategyState state;
};

StepResult step_small_single(const StrategyState& state, const Observation& obs, double t,
                             const StrategyParams& params);
StepResult step_large_single(const StrategyState& state, const Observation& obs, double t,
                             const StrategyParams& params);
StepResult step_multi_object(const StrategyState& state, const Observation& obs, double t,
                             const StrategyParams& params);

/// Dispatches on state.strategy.
StepResult step(const StrategyState& state, const Observation& obs, double t,
                const StrategyParams& params);

/// Phases entered, in order, by a run that completes. LargeSingle with an
/// object already in range follows the SmallSingle chain (expanded = false).
std::vector<Phase> declared_phase_order(Strategy strategy, bool expanded = true);

const char* to_string(Strategy strategy);
const char* to_string(Phase phase);
const char* to_string(RunStatus status);
const char* to_string(EventKind kind);
Strategy strategy_from_string(const std::string& name);

}  // namespace mash
