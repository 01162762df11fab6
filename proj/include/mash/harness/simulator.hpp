#pragma once

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mash/harness/plant.hpp"
#include "mash/harness/scenario.hpp"

namespace mash {

struct StepRecord {
  double t = 0.0;
  Command command;          // applied during the step ending at t
  Observation observation;  // state at t, seen by the next controller step
  std::array<Plant::LayerStates, kFingers> brakes{};
  std::vector<GripOutcome> grips;
};

struct SimLog {
  std::string scenario;
  Strategy strategy = Strategy::SmallSingle;
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::vector<StepRecord> records;  // strictly increasing t
  std::vector<Event> events;
  RunStatus terminal = RunStatus::Timeout;
};

/// Fixed-step loop: controller -> brakes -> kinematics -> contact -> log.
/// Stops when the strategy finishes or at t_max (Timeout).
SimLog run_scenario(const Scenario& scenario);

/// Final grip status of each object.
std::vector<GripStatus> final_grip_status(const SimLog& log);

nlohmann::ordered_json to_json(const SimLog& log);
std::string serialize(const SimLog& log);

nlohmann::ordered_json to_json(const GripOutcome& grip);
nlohmann::ordered_json to_json(const Command& command);
nlohmann::ordered_json to_json(const Observation& observation);
nlohmann::ordered_json to_json(const Event& event);

}  // namespace mash
