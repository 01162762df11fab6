#include "mash/controller.hpp"

#include <algorithm>

#include "mash/errors.hpp"

namespace mash {

std::vector<std::string> violations(const StrategyParams& p) {
  std::vector<std::string> out;
  if (!(p.brake_voltage > 0)) out.emplace_back("brake_voltage must be > 0");
  if (!(p.p_max > 0)) out.emplace_back("p_max must be > 0");
  if (!(p.engage_threshold > 0 && p.engage_threshold <= 1)) {
    out.emplace_back("engage_threshold must be in (0, 1]");
  }
  if (!(p.release_threshold >= 0 && p.release_threshold < p.engage_threshold)) {
    out.emplace_back("release_threshold must be in [0, engage_threshold)");
  }
  if (!(p.ramp_rate > 0)) out.emplace_back("ramp_rate must be > 0");
  if (!(p.phase_timeout > 0)) out.emplace_back("phase_timeout must be > 0");
  if (!(p.hold_time >= 0)) out.emplace_back("hold_time must be >= 0");
  if (!(p.clearance_margin >= 0)) out.emplace_back("clearance_margin must be >= 0");
  return out;
}

namespace {

constexpr std::array<std::size_t, 4> kAllFingers = {0, 1, 2, 3};

class Stepper {
 public:
  Stepper(const StrategyState& state, const Observation& obs, double t, const StrategyParams& p)
      : s_(state), obs_(obs), t_(t), p_(p), dt_(std::max(0.0, t - state.last_time)) {}

  StepResult finish() {
    s_.last_time = t_;
    return {s_.command, s_};
  }

  bool terminal() const { return s_.status != RunStatus::Running; }

  // Phases with their own duration never time out.
  bool check_timeout() {
    if (s_.phase == Phase::Hold || s_.phase == Phase::Lift) return false;
    if (t_ - s_.phase_entry_time <= p_.phase_timeout) return false;
    s_.events.push_back({t_, EventKind::Timeout, s_.phase, s_.phase, "guard stalled"});
    s_.status = RunStatus::Timeout;
    return true;
  }

  void go(Phase to) {
    s_.events.push_back({t_, EventKind::PhaseTransition, s_.phase, to, {}});
    s_.phase = to;
    s_.phase_entry_time = t_;
  }

  void abort(std::string detail) {
    s_.events.push_back({t_, EventKind::Abort, s_.phase, s_.phase, std::move(detail)});
    s_.status = RunStatus::Abort;
  }

  void complete() { s_.status = RunStatus::Completed; }

  // Never leaves both layers of one actuator on.
  template <typename Fingers>
  void brakes(const Fingers& fingers, BrakeSide side) {
    for (std::size_t f : fingers) {
      s_.command.voltages[f] = side == BrakeSide::Inner ? LayerPair{p_.brake_voltage, 0.0}
                                                        : LayerPair{0.0, p_.brake_voltage};
    }
  }

  template <typename Fingers>
  void brakes_off(const Fingers& fingers) {
    for (std::size_t f : fingers) s_.command.voltages[f] = {};
  }

  void ramp(PairId pair) {
    double& p = pair == PairId::A ? s_.command.pressure_a : s_.command.pressure_b;
    p = std::min(p + p_.ramp_rate * dt_, p_.p_max);
  }

  void vent() {
    s_.command.pressure_a = 0.0;
    s_.command.pressure_b = 0.0;
    brakes_off(kAllFingers);
  }

  template <typename Fingers>
  bool engaged(const Fingers& fingers, BrakeSide side) const {
    return std::all_of(fingers.begin(), fingers.end(), [&](std::size_t f) {
      const auto& e = obs_.engagements[f];
      return (side == BrakeSide::Inner ? e.inner : e.outer) >= p_.engage_threshold;
    });
  }

  template <typename Fingers>
  bool released(const Fingers& fingers, BrakeSide side) const {
    return std::all_of(fingers.begin(), fingers.end(), [&](std::size_t f) {
      const auto& e = obs_.engagements[f];
      return (side == BrakeSide::Inner ? e.inner : e.outer) <= p_.release_threshold;
    });
  }

  bool holding(std::size_t object) const {
    if (object >= obs_.objects.size()) return false;
    const auto& o = obs_.objects[object];
    return o.grip == GripStatus::Gripped && o.contacts == o.fingers;
  }

  bool expanded() const {
    return std::any_of(s_.events.begin(), s_.events.end(),
                       [](const Event& e) { return e.to == Phase::ReleaseOuter; });
  }

  StrategyState& state() { return s_; }
  const Observation& obs() const { return obs_; }
  const StrategyParams& params() const { return p_; }
  double t() const { return t_; }

 private:
  StrategyState s_;
  const Observation& obs_;
  double t_;
  const StrategyParams& p_;
  double dt_;
};

// Shared tail of both single-object strategies: brakes armed -> pressurize
// until the object is held -> hold.
void close_and_hold(Stepper& st) {
  auto& s = st.state();
  switch (s.phase) {
    case Phase::ArmInnerBrakes:
      st.brakes(kAllFingers, BrakeSide::Inner);
      if (st.engaged(kAllFingers, BrakeSide::Inner)) {
        st.go(st.expanded() ? Phase::CloseInward : Phase::Pressurize);
      }
      break;
    case Phase::Pressurize:
    case Phase::CloseInward:
      if (st.holding(0)) {
        st.go(Phase::Gripped);
      } else {
        st.ramp(PairId::A);
        st.ramp(PairId::B);
      }
      break;
    case Phase::Gripped:
      st.go(Phase::Hold);
      break;
    case Phase::Hold:
      if (!st.holding(0)) {
        st.abort("Slipped");
      } else if (st.t() - s.phase_entry_time >= st.params().hold_time) {
        st.complete();
      }
      break;
    default:
      break;
  }
}

}  // namespace

StepResult step_small_single(const StrategyState& state, const Observation& obs, double t,
                             const StrategyParams& params) {
  Stepper st(state, obs, t, params);
  if (st.terminal() || st.check_timeout()) return st.finish();
  if (st.state().phase == Phase::Idle) {
    if (!obs.objects.empty()) {
      if (!obs.objects.front().in_range) {
        st.abort("OutOfRange");
      } else {
        st.brakes(kAllFingers, BrakeSide::Inner);
        st.go(Phase::ArmInnerBrakes);
      }
    }
    return st.finish();
  }
  close_and_hold(st);
  return st.finish();
}

StepResult step_large_single(const StrategyState& state, const Observation& obs, double t,
                             const StrategyParams& params) {
  Stepper st(state, obs, t, params);
  if (st.terminal() || st.check_timeout()) return st.finish();
  auto& s = st.state();
  switch (s.phase) {
    case Phase::Idle:
      if (obs.objects.empty()) break;
      if (obs.objects.front().in_range) {
        st.brakes(kAllFingers, BrakeSide::Inner);
        st.go(Phase::ArmInnerBrakes);
      } else {
        st.brakes(kAllFingers, BrakeSide::Outer);
        st.go(Phase::ArmOuterBrakes);
      }
      break;
    case Phase::ArmOuterBrakes:
      st.brakes(kAllFingers, BrakeSide::Outer);
      if (st.engaged(kAllFingers, BrakeSide::Outer)) st.go(Phase::ExpandOutward);
      break;
    case Phase::ExpandOutward: {
      const auto& target = obs.objects.front();
      const double opening = std::min(obs.apertures[0], obs.apertures[1]);
      if (target.in_range && opening >= target.required_aperture) {
        st.brakes_off(kAllFingers);
        st.go(Phase::ReleaseOuter);
      } else {
        st.ramp(PairId::A);
        st.ramp(PairId::B);
      }
      break;
    }
    case Phase::ReleaseOuter:
      st.brakes_off(kAllFingers);
      if (st.released(kAllFingers, BrakeSide::Outer)) {
        st.brakes(kAllFingers, BrakeSide::Inner);
        st.go(Phase::ArmInnerBrakes);
      }
      break;
    default:
      close_and_hold(st);
      break;
  }
  return st.finish();
}

StepResult step_multi_object(const StrategyState& state, const Observation& obs, double t,
                             const StrategyParams& params) {
  Stepper st(state, obs, t, params);
  if (st.terminal() || st.check_timeout()) return st.finish();
  auto& s = st.state();
  const auto pair_a = fingers_of(PairId::A);
  const auto pair_b = fingers_of(PairId::B);

  switch (s.phase) {
    case Phase::Idle:
      if (obs.objects.empty()) break;
      if (obs.objects.size() != 2) {
        st.abort("MultiObject needs exactly two objects");
        break;
      }
      st.brakes(pair_a, BrakeSide::Outer);
      st.go(Phase::ExpandFirstPair);
      break;

    case Phase::ExpandFirstPair: {  // (i)
      st.brakes(pair_a, BrakeSide::Outer);
      if (!st.engaged(pair_a, BrakeSide::Outer)) break;
      const auto& first = obs.objects[0];
      if (first.in_range && obs.apertures[0] >= first.required_aperture) {
        st.brakes(pair_a, BrakeSide::Inner);
        st.go(Phase::GripFirstPair);
      } else {
        st.ramp(PairId::A);
      }
      break;
    }

    case Phase::GripFirstPair:  // (ii)
      st.brakes(pair_a, BrakeSide::Inner);
      if (!st.engaged(pair_a, BrakeSide::Inner) || !st.released(pair_a, BrakeSide::Outer)) break;
      if (st.holding(0)) {
        st.brakes_off(pair_b);
        st.go(Phase::ExtendSecondPair);
      } else {
        st.ramp(PairId::A);
      }
      break;

    case Phase::ExtendSecondPair: {  // (iii)
      st.brakes_off(pair_b);
      const auto& second = obs.objects[1];
      const double reach = std::min(obs.tips[pair_b[0]].tip_y, obs.tips[pair_b[1]].tip_y);
      if (reach >= second.level) {
        if (second.in_range) {
          st.brakes(pair_b, BrakeSide::Inner);
          st.go(Phase::GripSecondPair);
        } else {
          st.abort("object 2 out of range");
        }
      } else if (s.command.pressure_b >= params.p_max) {
        st.abort("object 2 unreachable");
      } else {
        st.ramp(PairId::B);
      }
      break;
    }

    case Phase::GripSecondPair:  // (iv)
      st.brakes(pair_b, BrakeSide::Inner);
      if (!st.engaged(pair_b, BrakeSide::Inner)) break;
      if (st.holding(1)) {
        st.go(Phase::Lift);
      } else {
        st.ramp(PairId::B);
      }
      break;

    case Phase::Lift:  // (v)
      if (!st.holding(0) || !st.holding(1)) {
        st.abort("Slipped");
      } else if (obs.release_requested || t - s.phase_entry_time >= params.hold_time) {
        st.brakes_off(pair_b);
        st.go(Phase::ReleaseSecondPair);
      }
      break;

    case Phase::ReleaseSecondPair:  // (vi)
      st.brakes_off(pair_b);
      if (st.released(pair_b, BrakeSide::Inner)) {
        st.brakes_off(pair_a);
        st.go(Phase::ReleaseFirstPair);
      }
      break;

    case Phase::ReleaseFirstPair:  // (vii)
      st.brakes_off(pair_a);
      if (st.released(pair_a, BrakeSide::Inner) && st.released(pair_a, BrakeSide::Outer)) {
        st.vent();
        st.go(Phase::Vent);
        st.complete();
      }
      break;

    default:  // (viii) is terminal
      st.vent();
      break;
  }
  return st.finish();
}

StepResult step(const StrategyState& state, const Observation& obs, double t,
                const StrategyParams& params) {
  switch (state.strategy) {
    case Strategy::SmallSingle: return step_small_single(state, obs, t, params);
    case Strategy::LargeSingle: return step_large_single(state, obs, t, params);
    case Strategy::MultiObject: return step_multi_object(state, obs, t, params);
  }
  throw DomainError("unknown strategy");
}

std::vector<Phase> declared_phase_order(Strategy strategy, bool expanded) {
  using enum Phase;
  switch (strategy) {
    case Strategy::SmallSingle:
      return {ArmInnerBrakes, Pressurize, Gripped, Hold};
    case Strategy::LargeSingle:
      if (!expanded) return {ArmInnerBrakes, Pressurize, Gripped, Hold};
      return {ArmOuterBrakes, ExpandOutward, ReleaseOuter, ArmInnerBrakes, CloseInward, Gripped, Hold};
    case Strategy::MultiObject:
      return {ExpandFirstPair, GripFirstPair, ExtendSecondPair, GripSecondPair,
              Lift, ReleaseSecondPair, ReleaseFirstPair, Vent};
  }
  return {};
}

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::SmallSingle: return "SmallSingle";
    case Strategy::LargeSingle: return "LargeSingle";
    case Strategy::MultiObject: return "MultiObject";
  }
  return "?";
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::Idle: return "Idle";
    case Phase::ArmInnerBrakes: return "ArmInnerBrakes";
    case Phase::Pressurize: return "Pressurize";
    case Phase::Gripped: return "Gripped";
    case Phase::Hold: return "Hold";
    case Phase::ArmOuterBrakes: return "ArmOuterBrakes";
    case Phase::ExpandOutward: return "ExpandOutward";
    case Phase::ReleaseOuter: return "ReleaseOuter";
    case Phase::CloseInward: return "CloseInward";
    case Phase::ExpandFirstPair: return "ExpandFirstPair";
    case Phase::GripFirstPair: return "GripFirstPair";
    case Phase::ExtendSecondPair: return "ExtendSecondPair";
    case Phase::GripSecondPair: return "GripSecondPair";
    case Phase::Lift: return "Lift";
    case Phase::ReleaseSecondPair: return "ReleaseSecondPair";
    case Phase::ReleaseFirstPair: return "ReleaseFirstPair";
    case Phase::Vent: return "Vent";
  }
  return "?";
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Running: return "Running";
    case RunStatus::Completed: return "Completed";
    case RunStatus::Timeout: return "Timeout";
    case RunStatus::Abort: return "Abort";
  }
  return "?";
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::PhaseTransition: return "PhaseTransition";
    case EventKind::Timeout: return "Timeout";
    case EventKind::Abort: return "Abort";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "SmallSingle") return Strategy::SmallSingle;
  if (name == "LargeSingle") return Strategy::LargeSingle;
  if (name == "MultiObject") return Strategy::MultiObject;
  throw ValidationError({"unknown strategy '" + name + "' (SmallSingle | LargeSingle | MultiObject)"});
}

}  // namespace mash
