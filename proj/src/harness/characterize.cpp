#include "mash/harness/characterize.hpp"

#include <charconv>
#include <numbers>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fields.hpp"
#include "mash/errors.hpp"

namespace mash {

namespace {

Table brake_force_sweep(const CharacterizeConfig& c) {
  const auto& brake = c.model.gripper.actuator(0).inner_brake;
  Table t{{"voltage_V", "force_N"}, {}};
  const auto steps = static_cast<long>(std::floor(brake.u_max / c.sweep.voltage_step + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    const double u = static_cast<double>(i) * c.sweep.voltage_step;
    t.rows.push_back({u, braking_force(brake, u)});
  }
  if (steps * c.sweep.voltage_step < brake.u_max) {
    t.rows.push_back({brake.u_max, braking_force(brake, brake.u_max)});
  }
  return t;
}

Table brake_response_sweep(const CharacterizeConfig& c) {
  const auto& brake = c.model.gripper.actuator(0).inner_brake;
  const auto& s = c.sweep;
  Table t{{"time_s", "voltage_V", "engagement", "raw_force_N", "filtered_force_N"}, {}};
  std::mt19937_64 rng(s.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double full = braking_force(brake, s.voltage);

  BrakeState state;
  FilterState filter = c.model.filter;
  const auto steps = static_cast<long>(std::llround(s.duration / s.dt));
  for (long k = 0; k <= steps; ++k) {
    const double time = static_cast<double>(k) * s.dt;
    if (k > 0) {
      const double u = time - s.dt >= s.t_on - 1e-12 ? s.voltage : 0.0;
      state = engagement_step(state, u, s.dt, brake);
    }
    const double raw = state.engagement * full + (s.noise > 0.0 ? s.noise * noise(rng) : 0.0);
    const auto f = limited_recursive_average(filter, raw);
    filter = f.state;
    const double u_now = time >= s.t_on - 1e-12 ? s.voltage : 0.0;
    t.rows.push_back({time, u_now, state.engagement, raw, f.filtered});
  }
  return t;
}

Table extension_sweep(const CharacterizeConfig& c) {
  Table t{{"pressure_kPa", "length_mm"}, {}};
  for (double p : c.sweep.extension_pressures) t.rows.push_back({p, c.model.law.length(p)});
  return t;
}

Table aperture_sweep(const CharacterizeConfig& c) {
  Table t{{"pressure_kPa", "angle_rad", "angle_deg", "tip_distance_mm"}, {}};
  const auto& cfg = c.model.gripper;
  const auto fingers = fingers_of(PairId::A);
  for (double p : c.sweep.aperture_pressures) {
    const auto& geom = cfg.actuator(fingers[0]);
    const auto pose = bend_config(geom, c.model.law, p, BrakeSide::Outer, 1.0);
    const double d = pair_aperture(cfg, c.model.law, PairId::A, p, ApertureMode::Outward, 1.0);
    const double angle = std::abs(pose.theta);
    t.rows.push_back({p, angle, angle * 180.0 / std::numbers::pi, d});
  }
  return t;
}

Table stiffness_sweep(const CharacterizeConfig& c) {
  Table t{{"voltage_V", "load_g", "deflection_rad", "slipped"}, {}};
  const auto& geom = c.model.gripper.actuator(0);
  for (double u : c.sweep.voltages) {
    for (double g : c.sweep.loads) {
      const double mass = g / 1000.0;
      const double moment = mass * kGravity * geom.rest_length;
      const bool slipped = moment > slip_threshold(c.model.stiffness, geom.inner_brake, u);
      t.rows.push_back({u, g, tip_deflection_under_load(geom, c.model.stiffness, geom.inner_brake, u, mass),
                        slipped ? 1.0 : 0.0});
    }
  }
  return t;
}

std::vector<std::string> sweep_violations(const SweepParams& s) {
  std::vector<std::string> out;
  if (!(s.voltage_step > 0)) out.emplace_back("sweep.voltage_step must be > 0");
  if (!(s.dt > 0)) out.emplace_back("sweep.dt must be > 0");
  if (!(s.duration >= s.dt)) out.emplace_back("sweep.duration must be >= sweep.dt");
  if (!(s.t_on >= 0)) out.emplace_back("sweep.t_on must be >= 0");
  if (!(s.noise >= 0)) out.emplace_back("sweep.noise must be >= 0");
  for (double g : s.loads) {
    if (!(g >= 0)) out.emplace_back("sweep.loads must be >= 0 g");
  }
  return out;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

Table characterize(CharacterizeKind kind, const CharacterizeConfig& config) {
  if (auto v = sweep_violations(config.sweep); !v.empty()) throw ValidationError(std::move(v));
  switch (kind) {
    case CharacterizeKind::BrakeForce: return brake_force_sweep(config);
    case CharacterizeKind::BrakeResponse: return brake_response_sweep(config);
    case CharacterizeKind::Extension: return extension_sweep(config);
    case CharacterizeKind::Aperture: return aperture_sweep(config);
    case CharacterizeKind::Stiffness: return stiffness_sweep(config);
  }
  throw UsageError("unknown characterization kind");
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto r = std::to_chars(buf, buf + sizeof buf, row[i]);
      if (i) out << ',';
      out.write(buf, r.ptr - buf);
    }
    out << '\n';
  }
}

double rise_time(const Table& table, const std::string& time_column, const std::string& value_column,
                 double final_value) {
  const auto ti = table.column(time_column);
  const auto vi = table.column(value_column);
  auto crossing = [&](double level) {
    for (std::size_t k = 1; k < table.rows.size(); ++k) {
      const double a = table.rows[k - 1][vi];
      const double b = table.rows[k][vi];
      if (a < level && b >= level) {
        const double t0 = table.rows[k - 1][ti];
        const double t1 = table.rows[k][ti];
        return t0 + (t1 - t0) * (level - a) / (b - a);
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  return crossing(0.9 * final_value) - crossing(0.1 * final_value);
}

CharacterizeConfig parse_characterize_config(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  std::vector<std::string> errors;
  CharacterizeConfig c;
  {
    detail::FieldReader r(j, "", errors);
    if (!r.ok()) throw ValidationError(std::move(errors));
    for (const auto& key : model_config_keys()) r.child(key.c_str());
    c.model = parse_model_config(j, base_dir, errors);
    if (const auto* sweep = r.child("sweep")) {
      detail::FieldReader s(*sweep, "sweep", errors);
      s.number("voltage_step", c.sweep.voltage_step);
      s.number("dt", c.sweep.dt);
      s.number("duration", c.sweep.duration);
      s.number("t_on", c.sweep.t_on);
      s.number("voltage", c.sweep.voltage);
      s.number("noise", c.sweep.noise);
      s.integer("seed", c.sweep.seed);
      s.numbers("extension_pressures", c.sweep.extension_pressures);
      s.numbers("aperture_pressures", c.sweep.aperture_pressures);
      s.numbers("loads", c.sweep.loads);
      s.numbers("voltages", c.sweep.voltages);
    }
  }
  if (errors.empty()) {
    for (auto& v : violations(c.model)) errors.push_back(std::move(v));
    for (auto& v : sweep_violations(c.sweep)) errors.push_back(std::move(v));
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return c;
}

const char* to_string(CharacterizeKind kind) {
  switch (kind) {
    case CharacterizeKind::BrakeForce: return "brake_force";
    case CharacterizeKind::BrakeResponse: return "brake_response";
    case CharacterizeKind::Extension: return "extension";
    case CharacterizeKind::Aperture: return "aperture";
    case CharacterizeKind::Stiffness: return "stiffness";
  }
  return "?";
}

CharacterizeKind characterize_kind_from_string(const std::string& name) {
  for (auto k : {CharacterizeKind::BrakeForce, CharacterizeKind::BrakeResponse, CharacterizeKind::Extension,
                 CharacterizeKind::Aperture, CharacterizeKind::Stiffness}) {
    if (name == to_string(k)) return k;
  }
  throw UsageError("unknown characterization kind '" + name +
                   "' (brake_force | brake_response | extension | aperture | stiffness)");
}

}  // namespace mash
