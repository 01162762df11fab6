#pragma once

// Properties every SimLog must satisfy, phrased as predicates that return
// an empty string on success and a description of the first violation
// otherwise.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mash/harness/simulator.hpp"

namespace mash::checks {

inline std::vector<Phase> phase_sequence(const SimLog& log) {
  std::vector<Phase> out;
  for (const auto& e : log.events) {
    if (e.kind == EventKind::PhaseTransition) out.push_back(e.to);
  }
  return out;
}

inline std::string strictly_increasing_time(const SimLog& log) {
  for (std::size_t k = 1; k < log.records.size(); ++k) {
    if (!(log.records[k].t > log.records[k - 1].t)) {
      return "record " + std::to_string(k) + " does not advance time";
    }
  }
  return {};
}

inline std::string mutual_exclusion(const SimLog& log) {
  for (const auto& r : log.records) {
    for (std::size_t f = 0; f < kFingers; ++f) {
      if (r.command.voltages[f].inner > 0 && r.command.voltages[f].outer > 0) {
        std::ostringstream s;
        s << "finger " << f << " has both layers on at t=" << r.t;
        return s.str();
      }
    }
  }
  return {};
}

/// Brake layer a phase must hold on `pair` while raising its pressure;
/// nullopt when the phase extends the pair unbraked.
inline std::optional<BrakeSide> required_side(Phase phase, PairId pair) {
  switch (phase) {
    case Phase::Pressurize:
    case Phase::CloseInward:
      return BrakeSide::Inner;
    case Phase::ExpandOutward:
      return BrakeSide::Outer;
    case Phase::ExpandFirstPair:
      if (pair == PairId::A) return BrakeSide::Outer;
      break;
    case Phase::GripFirstPair:
      if (pair == PairId::A) return BrakeSide::Inner;
      break;
    case Phase::GripSecondPair:
      if (pair == PairId::B) return BrakeSide::Inner;
      break;
    case Phase::ExtendSecondPair:
      if (pair == PairId::B) return std::nullopt;
      break;
    default:
      break;
  }
  return std::nullopt;
}

inline bool raises_unbraked(Phase phase, PairId pair) {
  return phase == Phase::ExtendSecondPair && pair == PairId::B;
}

/// Pressure only rises on a pair once the layer its phase needs was
/// commanded on and observed at or above the engage threshold.
inline std::string latency_respected(const SimLog& log, double threshold) {
  Phase phase = Phase::Idle;
  std::size_t next_event = 0;
  for (std::size_t k = 1; k < log.records.size(); ++k) {
    const auto& before = log.records[k - 1];
    const auto& now = log.records[k];
    // The command in record k was issued by the controller at before.t.
    while (next_event < log.events.size() && log.events[next_event].t <= before.t) {
      if (log.events[next_event].kind == EventKind::PhaseTransition) phase = log.events[next_event].to;
      ++next_event;
    }
    for (PairId pair : {PairId::A, PairId::B}) {
      if (!(now.command.pressure(pair) > before.command.pressure(pair))) continue;
      if (raises_unbraked(phase, pair)) continue;
      std::ostringstream s;
      s << "pair " << (pair == PairId::A ? 'A' : 'B') << " pressure rises at t=" << now.t << " in "
        << to_string(phase);
      const auto side = required_side(phase, pair);
      if (!side) return s.str() + " which does not raise pressure";
      for (std::size_t f : fingers_of(pair)) {
        const auto& v = now.command.voltages[f];
        const auto& e = before.observation.engagements[f];
        const bool inner = *side == BrakeSide::Inner;
        if (!((inner ? v.inner : v.outer) > 0)) return s.str() + " without its brake commanded";
        if (!((inner ? e.inner : e.outer) >= threshold)) return s.str() + " before its brake engaged";
      }
    }
  }
  return {};
}

/// Completed runs visit exactly the declared phases, in order.
inline std::string phase_order_matches(const SimLog& log) {
  if (log.terminal != RunStatus::Completed) return {};
  const auto seq = phase_sequence(log);
  const bool expanded = std::find(seq.begin(), seq.end(), Phase::ReleaseOuter) != seq.end();
  const auto declared = declared_phase_order(log.strategy, expanded);
  if (seq == declared) return {};
  std::ostringstream s;
  s << "phases";
  for (auto p : seq) s << ' ' << to_string(p);
  s << " differ from declared";
  for (auto p : declared) s << ' ' << to_string(p);
  return s.str();
}

inline std::string transitions_logged_once(const SimLog& log) {
  const auto seq = phase_sequence(log);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (std::count(seq.begin(), seq.end(), seq[i]) > 1) {
      return std::string("phase ") + to_string(seq[i]) + " entered twice";
    }
  }
  for (std::size_t i = 1; i < log.events.size(); ++i) {
    const auto& a = log.events[i - 1];
    const auto& b = log.events[i];
    if (b.kind == EventKind::PhaseTransition && a.kind == EventKind::PhaseTransition && b.from != a.to) {
      return "transition chain broken at t=" + std::to_string(b.t);
    }
  }
  return {};
}

/// First record time, at or after the Lift phase began, where the object is
/// no longer gripped.
inline std::optional<double> release_time(const SimLog& log, std::size_t object) {
  std::optional<double> lift;
  for (const auto& e : log.events) {
    if (e.kind == EventKind::PhaseTransition && e.to == Phase::Lift) lift = e.t;
  }
  if (!lift) return std::nullopt;
  for (const auto& r : log.records) {
    if (r.t < *lift || object >= r.grips.size()) continue;
    if (r.grips[object].status != GripStatus::Gripped) return r.t;
  }
  return std::nullopt;
}

inline std::string second_object_released_first(const SimLog& log) {
  const auto seq = phase_sequence(log);
  const auto second = std::find(seq.begin(), seq.end(), Phase::ReleaseSecondPair);
  const auto first = std::find(seq.begin(), seq.end(), Phase::ReleaseFirstPair);
  if (second == seq.end() || first == seq.end()) return "release phases missing";
  if (!(second < first)) return "first pair released before the second";
  const auto t2 = release_time(log, 1);
  const auto t1 = release_time(log, 0);
  if (!t1 || !t2) return "an object was never released after lifting";
  if (!(*t2 < *t1)) return "object 1 let go no later than object 2";
  return {};
}

inline std::string all_log_properties(const SimLog& log, const StrategyParams& params) {
  for (const auto& msg : {strictly_increasing_time(log), mutual_exclusion(log),
                          latency_respected(log, params.engage_threshold), phase_order_matches(log),
                          transitions_logged_once(log)}) {
    if (!msg.empty()) return msg;
  }
  return {};
}

}  // namespace mash::checks
