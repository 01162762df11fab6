#include "mash/harness/simulator.hpp"

#include <cmath>

namespace mash {

using nlohmann::ordered_json;

SimLog run_scenario(const Scenario& scenario) {
  SimLog log;
  log.scenario = scenario.name;
  log.strategy = scenario.strategy;
  log.seed = scenario.seed;
  log.dt = scenario.dt;

  Plant plant(scenario.model, scenario.objects, scenario.params.clearance_margin);
  StrategyState state;
  state.strategy = scenario.strategy;

  auto record = [&](double t, const Command& command) {
    log.records.push_back({t, command, plant.observe(), plant.brakes(), plant.grips()});
  };
  record(0.0, Command{});

  const auto max_steps = static_cast<std::uint64_t>(std::ceil(scenario.t_max / scenario.dt - 1e-9));
  double t = 0.0;
  for (std::uint64_t k = 1;; ++k) {
    auto result = step(state, log.records.back().observation, t, scenario.params);
    state = std::move(result.state);
    plant.apply(result.command, scenario.dt);
    t = static_cast<double>(k) * scenario.dt;
    record(t, result.command);
    if (state.status != RunStatus::Running) break;
    if (k >= max_steps) {
      state.events.push_back({t, EventKind::Timeout, state.phase, state.phase, "t_max reached"});
      state.status = RunStatus::Timeout;
      break;
    }
  }
  log.events = state.events;
  log.terminal = state.status;
  return log;
}

std::vector<GripStatus> final_grip_status(const SimLog& log) {
  std::vector<GripStatus> out;
  if (log.records.empty()) return out;
  for (const auto& g : log.records.back().grips) out.push_back(g.status);
  return out;
}

namespace {

ordered_json vec(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json layers(const LayerPair& l) { return ordered_json::array({l.inner, l.outer}); }

}  // namespace

ordered_json to_json(const GripOutcome& g) {
  ordered_json contacts = ordered_json::array();
  for (const auto& c : g.contacts) contacts.push_back(vec(c));
  ordered_json j;
  j["status"] = to_string(g.status);
  j["fingers"] = g.fingers;
  j["contacts"] = std::move(contacts);
  j["normal_force"] = g.normal_force;
  // Unbounded for massless objects; JSON has no infinity.
  j["payload_margin"] = std::isfinite(g.payload_margin) ? ordered_json(g.payload_margin) : ordered_json(nullptr);
  return j;
}

ordered_json to_json(const Command& c) {
  ordered_json voltages = ordered_json::array();
  for (const auto& v : c.voltages) voltages.push_back(layers(v));
  ordered_json j;
  j["pressure_a"] = c.pressure_a;
  j["pressure_b"] = c.pressure_b;
  j["voltages"] = std::move(voltages);
  return j;
}

ordered_json to_json(const Observation& o) {
  ordered_json tips = ordered_json::array();
  for (const auto& a : o.tips) {
    tips.push_back({{"theta", a.theta},
                    {"arc_length", a.arc_length},
                    {"curvature", a.curvature},
                    {"tip", {a.tip_x, a.tip_y}},
                    {"tip_tangent", a.tip_tangent}});
  }
  ordered_json engagements = ordered_json::array();
  for (const auto& e : o.engagements) engagements.push_back(layers(e));
  ordered_json objects = ordered_json::array();
  for (const auto& v : o.objects) {
    objects.push_back({{"in_range", v.in_range},
                       {"required_aperture", v.required_aperture},
                       {"level", v.level},
                       {"grip", to_string(v.grip)},
                       {"contacts", v.contacts}});
  }
  ordered_json j;
  j["tips"] = std::move(tips);
  j["apertures"] = {o.apertures[0], o.apertures[1]};
  j["contacts"] = o.contacts;
  j["engagements"] = std::move(engagements);
  j["objects"] = std::move(objects);
  return j;
}

ordered_json to_json(const Event& e) {
  ordered_json j;
  j["t"] = e.t;
  j["kind"] = to_string(e.kind);
  j["from"] = to_string(e.from);
  j["to"] = to_string(e.to);
  if (!e.detail.empty()) j["detail"] = e.detail;
  return j;
}

ordered_json to_json(const SimLog& log) {
  ordered_json records = ordered_json::array();
  for (const auto& r : log.records) {
    ordered_json brakes = ordered_json::array();
    for (const auto& [inner, outer] : r.brakes) {
      brakes.push_back({{{"voltage", inner.voltage}, {"engagement", inner.engagement}},
                        {{"voltage", outer.voltage}, {"engagement", outer.engagement}}});
    }
    ordered_json grips = ordered_json::array();
    for (const auto& g : r.grips) grips.push_back(to_json(g));
    ordered_json rec;
    rec["t"] = r.t;
    rec["command"] = to_json(r.command);
    rec["observation"] = to_json(r.observation);
    rec["brakes"] = std::move(brakes);
    rec["grips"] = std::move(grips);
    records.push_back(std::move(rec));
  }
  ordered_json events = ordered_json::array();
  for (const auto& e : log.events) events.push_back(to_json(e));

  ordered_json final_status = ordered_json::array();
  for (auto s : final_grip_status(log)) final_status.push_back(to_string(s));

  ordered_json j;
  j["scenario"] = log.scenario;
  j["strategy"] = to_string(log.strategy);
  j["seed"] = log.seed;
  j["dt"] = log.dt;
  j["terminal"] = to_string(log.terminal);
  j["final_grip_status"] = std::move(final_status);
  j["events"] = std::move(events);
  j["records"] = std::move(records);
  return j;
}

std::string serialize(const SimLog& log) { return to_json(log).dump(1) + "\n"; }

}  // namespace mash
