#include "mash/harness/scenario.hpp"

#include <algorithm>

#include "fields.hpp"
#include "mash/errors.hpp"

namespace mash {

using detail::FieldReader;
using nlohmann::json;

namespace {

ObjectModel read_object(const json& j, const std::string& path, std::vector<std::string>& errors) {
  ObjectModel o;
  FieldReader r(j, path, errors);
  if (!r.ok()) return o;
  r.text("name", o.name);
  std::string shape = "sphere";
  r.text("shape", shape);
  if (shape == "sphere") {
    Sphere s;
    r.number("radius", s.radius);
    if (!r.has("radius")) r.error("radius", "required for a sphere");
    o.shape = s;
  } else if (shape == "annulus") {
    Annulus a;
    r.number("outer_radius", a.outer_radius);
    r.number("inner_radius", a.inner_radius);
    r.number("height", a.height);
    for (const char* key : {"outer_radius", "height"}) {
      if (!r.has(key)) r.error(key, "required for an annulus");
    }
    o.shape = a;
  } else {
    r.error("shape", "expected 'sphere' or 'annulus'");
  }
  r.number("mass", o.mass);
  r.number("surface_mu", o.surface_mu);
  std::vector<double> center;
  r.numbers("center", center);
  if (!center.empty()) {
    if (center.size() != 3) {
      r.error("center", "expected [x, y, z]");
    } else {
      o.center = {center[0], center[1], center[2]};
    }
  }
  std::string pairs = "both";
  r.text("pairs", pairs);
  if (pairs == "A") {
    o.pairs = PairMask::A;
  } else if (pairs == "B") {
    o.pairs = PairMask::B;
  } else if (pairs == "both") {
    o.pairs = PairMask::Both;
  } else {
    r.error("pairs", "expected 'A', 'B' or 'both'");
  }
  return o;
}

}  // namespace

std::vector<std::string> violations(const Scenario& s) {
  std::vector<std::string> out;
  if (!(s.dt > 0)) out.emplace_back("dt must be > 0");
  if (!(s.t_max >= s.dt)) out.emplace_back("t_max must be >= dt");
  for (auto& v : violations(s.params)) out.push_back("strategy." + v);
  for (const auto& o : s.objects) {
    for (auto& v : violations(o)) out.push_back("objects: " + v);
  }
  for (std::size_t f = 0; f < kFingers; ++f) {
    const auto& g = s.model.gripper.actuator(f);
    if (s.params.p_max > g.p_max) {
      out.push_back("strategy.p_max exceeds actuator[" + std::to_string(f) + "].p_max");
    }
    for (const auto* b : {&g.inner_brake, &g.outer_brake}) {
      if (s.params.brake_voltage > b->u_max) {
        out.push_back("strategy.brake_voltage exceeds actuator[" + std::to_string(f) + "] brake u_max");
        break;
      }
    }
  }
  if (s.strategy == Strategy::MultiObject && !s.objects.empty() && s.objects.size() != 2) {
    out.emplace_back("objects: MultiObject needs exactly two objects");
  }
  return out;
}

Scenario parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  std::vector<std::string> errors;
  Scenario s;
  {
    FieldReader r(j, "", errors);
    if (!r.ok()) throw ValidationError(std::move(errors));
    for (const auto& key : model_config_keys()) r.child(key.c_str());
    s.model = parse_model_config(j, base_dir, errors);

    r.text("name", s.name);
    r.number("dt", s.dt);
    r.number("t_max", s.t_max);
    r.integer("seed", s.seed);

    if (const auto* objects = r.child("objects")) {
      if (!objects->is_array()) {
        r.error("objects", "expected an array");
      } else {
        for (std::size_t i = 0; i < objects->size(); ++i) {
          s.objects.push_back(read_object((*objects)[i], "objects[" + std::to_string(i) + "]", errors));
        }
      }
    }

    const auto* strategy = r.child("strategy");
    if (!strategy) {
      r.error("strategy", "required");
    } else {
      FieldReader sr(*strategy, "strategy", errors);
      std::string kind;
      sr.text("kind", kind);
      try {
        s.strategy = strategy_from_string(kind);
      } catch (const ValidationError&) {
        sr.error("kind", "expected SmallSingle | LargeSingle | MultiObject");
      }
      auto& p = s.params;
      sr.number("brake_voltage", p.brake_voltage);
      sr.number("p_max", p.p_max);
      sr.number("engage_threshold", p.engage_threshold);
      sr.number("release_threshold", p.release_threshold);
      sr.number("ramp_rate", p.ramp_rate);
      sr.number("phase_timeout", p.phase_timeout);
      sr.number("hold_time", p.hold_time);
      sr.number("clearance_margin", p.clearance_margin);
    }
  }
  for (auto& v : violations(s)) errors.push_back(std::move(v));
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_json_file(path), path.parent_path());
}

}  // namespace mash
