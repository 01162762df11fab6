#include "mash/harness/config.hpp"

#include <fstream>

#include "fields.hpp"
#include "mash/errors.hpp"

namespace mash {

using detail::FieldReader;
using nlohmann::json;

namespace {

void read_brake(const json& j, const std::string& path, BrakeParams& b,
                std::vector<std::string>& errors) {
  FieldReader r(j, path, errors);
  r.number("eps_r", b.eps_r);
  r.number("eps_0", b.eps_0);
  r.number("area", b.area);
  r.number("gap", b.gap);
  r.number("mu", b.mu);
  r.number("u_max", b.u_max);
  r.number("tau", b.tau);
}

void read_geometry(FieldReader& r, ActuatorGeometry& g) {
  r.number("rest_length", g.rest_length);
  r.number("layer_gap", g.layer_gap);
  r.number("p_max", g.p_max);
}

void read_law(const json& j, const std::filesystem::path& base_dir, ModelConfig& m,
              std::vector<std::string>& errors) {
  FieldReader r(j, "extension_law", errors);
  std::string interp;
  r.text("interpolation", interp);
  const auto* anchors_json = r.child("anchors");
  std::string csv;
  r.text("csv", csv);
  if (anchors_json && !csv.empty()) {
    r.error("anchors", "give either anchors or csv, not both");
    return;
  }
  std::vector<Anchor> anchors;
  if (anchors_json) {
    if (!anchors_json->is_array()) {
      r.error("anchors", "expected [[pressure_kPa, length_mm], ...]");
      return;
    }
    for (const auto& row : *anchors_json) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
        r.error("anchors", "expected [[pressure_kPa, length_mm], ...]");
        return;
      }
      anchors.push_back({row[0].get<double>(), row[1].get<double>()});
    }
  } else if (!csv.empty()) {
    const auto path = base_dir / csv;
    if (!std::filesystem::exists(path)) {
      r.error("csv", "file not found: " + path.string());
      return;
    }
    try {
      anchors = read_anchors_csv(path);
    } catch (const ValidationError& e) {
      for (const auto& v : e.violations()) r.error("csv", v);
      return;
    }
  } else {
    anchors = m.law.anchors();
  }
  if (auto v = anchor_violations(anchors); !v.empty()) {
    for (const auto& msg : v) r.error("anchors", msg);
    return;
  }
  try {
    m.law = interp.empty() ? ExtensionLaw::with_default_interpolation(anchors)
                           : ExtensionLaw(anchors, interpolation_from_string(interp));
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) r.error("interpolation", v);
  }
}

}  // namespace

const std::vector<std::string>& model_config_keys() {
  static const std::vector<std::string> keys = {"brake",   "actuator",  "actuators", "extension_law",
                                                "gripper", "stiffness", "yeoh",      "filter"};
  return keys;
}

ModelConfig parse_model_config(const json& j, const std::filesystem::path& base_dir,
                               std::vector<std::string>& errors) {
  ModelConfig m;
  if (!j.is_object()) {
    errors.emplace_back("<root>: expected an object");
    return m;
  }

  BrakeParams brake;
  if (auto it = j.find("brake"); it != j.end()) read_brake(*it, "brake", brake, errors);

  ActuatorGeometry geom;
  geom.inner_brake = brake;
  geom.outer_brake = brake;
  if (auto it = j.find("actuator"); it != j.end()) {
    FieldReader r(*it, "actuator", errors);
    read_geometry(r, geom);
  }
  std::array<ActuatorGeometry, kFingers> per_finger;
  per_finger.fill(geom);
  if (auto it = j.find("actuators"); it != j.end()) {
    if (!it->is_array() || it->size() != kFingers) {
      errors.emplace_back("actuators: expected an array of four actuator objects");
    } else {
      for (std::size_t f = 0; f < kFingers; ++f) {
        const std::string path = "actuators[" + std::to_string(f) + "]";
        FieldReader r((*it)[f], path, errors);
        read_geometry(r, per_finger[f]);
        if (const auto* b = r.child("inner_brake")) read_brake(*b, path + ".inner_brake", per_finger[f].inner_brake, errors);
        if (const auto* b = r.child("outer_brake")) read_brake(*b, path + ".outer_brake", per_finger[f].outer_brake, errors);
      }
    }
  }
  m.gripper.pair_a = {per_finger[0], per_finger[1]};
  m.gripper.pair_b = {per_finger[2], per_finger[3]};

  if (auto it = j.find("extension_law"); it != j.end()) read_law(*it, base_dir, m, errors);

  if (auto it = j.find("gripper"); it != j.end()) {
    FieldReader r(*it, "gripper", errors);
    r.number("mount_separation", m.gripper.mount_separation);
    r.number("fingertip_mu", m.gripper.fingertip_mu);
    r.number("fingertip_area", m.gripper.fingertip_area);
    r.number("fingertip_depth", m.gripper.fingertip_depth);
    r.number("grip_force_gain", m.gripper.grip_force_gain);
    r.number("contact_tolerance", m.gripper.contact_tolerance);
  }
  if (auto it = j.find("stiffness"); it != j.end()) {
    FieldReader r(*it, "stiffness", errors);
    r.number("ei_free", m.stiffness.ei_free);
    r.number("ei_engaged", m.stiffness.ei_engaged);
    r.number("slip_lever", m.stiffness.slip_lever);
  }
  if (auto it = j.find("yeoh"); it != j.end()) {
    FieldReader r(*it, "yeoh", errors);
    r.number("c10", m.yeoh.c10);
    r.number("c20", m.yeoh.c20);
    r.number("c30", m.yeoh.c30);
    r.text("unit", m.yeoh.unit);
  }
  if (auto it = j.find("filter"); it != j.end()) {
    FieldReader r(*it, "filter", errors);
    r.number("alpha", m.filter.alpha);
    r.number("max_step", m.filter.max_step);
  }
  for (auto& v : violations(m)) errors.push_back(std::move(v));
  return m;
}

std::vector<std::string> violations(const ModelConfig& m) {
  std::vector<std::string> out;
  for (auto& v : violations(m.gripper)) out.push_back("gripper." + v);
  for (auto& v : violations(m.stiffness)) out.push_back("stiffness." + v);
  if (!(m.yeoh.c10 > 0)) out.emplace_back("yeoh.c10 must be > 0");
  if (!(m.filter.alpha > 0 && m.filter.alpha <= 1)) out.emplace_back("filter.alpha must be in (0, 1]");
  if (!(m.filter.max_step > 0)) out.emplace_back("filter.max_step must be > 0");
  for (std::size_t f = 0; f < kFingers; ++f) {
    const auto& g = m.gripper.actuator(f);
    if (g.p_max > m.law.max_pressure()) {
      out.push_back("actuator[" + std::to_string(f) + "].p_max exceeds the extension law range");
    }
    if (g.rest_length != m.law.anchors().front().length) {
      out.push_back("actuator[" + std::to_string(f) +
                    "].rest_length differs from the extension law length at 0 kPa");
    }
  }
  return out;
}

void set_layer_gap(GripperConfig& gripper, double layer_gap) {
  for (auto& g : gripper.pair_a) g.layer_gap = layer_gap;
  for (auto& g : gripper.pair_b) g.layer_gap = layer_gap;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"cannot open " + path.string()});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError({path.string() + ": " + e.what()});
  }
}

}  // namespace mash
