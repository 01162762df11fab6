#include "mash/harness/calibration.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

#include "fields.hpp"
#include "mash/errors.hpp"

namespace mash {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::size_t row_width(CalibrationModel m) { return m == CalibrationModel::Stiffness ? 3 : 2; }

std::vector<double> knot_pressures(const CalibrationProblem& p) {
  if (!p.knots.empty()) return p.knots;
  std::set<double> unique;
  for (const auto& row : p.data) unique.insert(row.at(0));
  return {unique.begin(), unique.end()};
}

ExtensionLaw law_from_knots(const std::vector<double>& pressures, std::span<const double> lengths) {
  std::vector<Anchor> anchors;
  for (std::size_t i = 0; i < pressures.size(); ++i) anchors.push_back({pressures[i], lengths[i]});
  return ExtensionLaw::with_default_interpolation(std::move(anchors));
}

}  // namespace

std::size_t parameter_count(const CalibrationProblem& p) {
  switch (p.model) {
    case CalibrationModel::ExtensionLaw: return knot_pressures(p).size();
    case CalibrationModel::Stiffness: return 3;
    case CalibrationModel::Filter: return 2;
    default: return 1;
  }
}

std::vector<std::string> parameter_names(const CalibrationProblem& p) {
  switch (p.model) {
    case CalibrationModel::ExtensionLaw: {
      std::vector<std::string> names;
      for (double k : knot_pressures(p)) {
        std::ostringstream s;
        s << "length_at_" << k << "_kPa";
        names.push_back(s.str());
      }
      return names;
    }
    case CalibrationModel::LayerGap: return {"layer_gap"};
    case CalibrationModel::Stiffness: return {"ei_free", "ei_engaged", "slip_lever"};
    case CalibrationModel::BrakeTau: return {"tau"};
    case CalibrationModel::Filter: return {"alpha", "max_step"};
    case CalibrationModel::GripForceGain: return {"grip_force_gain"};
  }
  return {};
}

std::vector<std::string> violations(const CalibrationProblem& p) {
  std::vector<std::string> out;
  const std::size_t n = parameter_count(p);
  if (p.data.size() < n) {
    out.push_back("data: need at least " + std::to_string(n) + " rows for " + std::to_string(n) +
                  " parameters");
  }
  for (std::size_t i = 0; i < p.data.size(); ++i) {
    if (p.data[i].size() != row_width(p.model)) {
      out.push_back("data[" + std::to_string(i) + "]: expected " + std::to_string(row_width(p.model)) +
                    " columns");
    }
  }
  if (p.bounds.size() != n) {
    out.push_back("bounds: expected " + std::to_string(n) + " [lo, hi] pairs");
  }
  for (std::size_t i = 0; i < p.bounds.size(); ++i) {
    const auto& b = p.bounds[i];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
      out.push_back("bounds[" + std::to_string(i) + "]: must be finite with lo < hi");
    }
  }
  if (!p.initial.empty()) {
    if (p.initial.size() != n) {
      out.push_back("initial: expected " + std::to_string(n) + " values");
    } else {
      for (std::size_t i = 0; i < n && i < p.bounds.size(); ++i) {
        if (!(p.initial[i] >= p.bounds[i].lo && p.initial[i] <= p.bounds[i].hi)) {
          out.push_back("initial[" + std::to_string(i) + "]: outside bounds");
        }
      }
    }
  }
  if (!(p.tolerance > 0)) out.emplace_back("tolerance must be > 0");
  if (p.model == CalibrationModel::ExtensionLaw) {
    const auto knots = knot_pressures(p);
    if (knots.empty() || knots.front() != 0.0) out.emplace_back("knots: must start at 0 kPa");
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i] > knots[i - 1])) out.emplace_back("knots: must be strictly increasing");
    }
  }
  return out;
}

std::vector<double> predict(const CalibrationProblem& p, std::span<const double> x) {
  std::vector<double> out;
  out.reserve(p.data.size());
  switch (p.model) {
    case CalibrationModel::ExtensionLaw: {
      const auto law = law_from_knots(knot_pressures(p), x);
      for (const auto& row : p.data) out.push_back(law.length(row[0]));
      break;
    }
    case CalibrationModel::LayerGap: {
      GripperConfig cfg = p.base.gripper;
      set_layer_gap(cfg, x[0]);
      for (const auto& row : p.data) {
        out.push_back(pair_aperture(cfg, p.base.law, PairId::A, row[0], ApertureMode::Outward, 1.0));
      }
      break;
    }
    case CalibrationModel::Stiffness: {
      const StiffnessParams sp{x[0], x[1], x[2]};
      const auto& geom = p.base.gripper.actuator(0);
      for (const auto& row : p.data) {
        out.push_back(tip_deflection_under_load(geom, sp, geom.inner_brake, row[0], row[1]));
      }
      break;
    }
    case CalibrationModel::BrakeTau: {
      BrakeParams brake = p.base.gripper.actuator(0).inner_brake;
      brake.tau = x[0];
      for (const auto& row : p.data) {
        out.push_back(engagement_step({}, brake.u_max, row[0], brake).engagement);
      }
      break;
    }
    case CalibrationModel::Filter: {
      FilterState f{p.filter_initial, x[0], x[1]};
      for (const auto& row : p.data) {
        auto r = limited_recursive_average(f, row[0]);
        f = r.state;
        out.push_back(r.filtered);
      }
      break;
    }
    case CalibrationModel::GripForceGain: {
      GripperConfig cfg = p.base.gripper;
      cfg.grip_force_gain = x[0];
      for (const auto& row : p.data) out.push_back(normal_force(cfg, row[0], 1.0));
      break;
    }
  }
  return out;
}

double sum_squared_residuals(const CalibrationProblem& p, std::span<const double> x) {
  const auto predicted = predict(p, x);
  double sse = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double r = predicted[i] - p.data[i].back();
    if (!std::isfinite(r)) {
      throw NumericError("non-finite residual in data row " + std::to_string(i), i);
    }
    sse += r * r;
  }
  return sse;
}

namespace {

// Objective for the optimizer: invalid candidates (a non-monotone law, an
// out-of-range pressure) count as infinitely bad instead of aborting.
double penalized_sse(const CalibrationProblem& p, std::span<const double> x) {
  try {
    return sum_squared_residuals(p, x);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

struct Best {
  std::vector<double> x;
  double sse = std::numeric_limits<double>::infinity();
  void offer(std::span<const double> candidate, double value) {
    if (value < sse) {
      sse = value;
      x.assign(candidate.begin(), candidate.end());
    }
  }
};

struct ScalarContext {
  const CalibrationProblem* problem;
  Best* best;
};

double scalar_objective(double x, void* data) {
  auto* ctx = static_cast<ScalarContext*>(data);
  const double v = penalized_sse(*ctx->problem, std::span<const double>(&x, 1));
  ctx->best->offer(std::span<const double>(&x, 1), v);
  return std::isfinite(v) ? v : std::numeric_limits<double>::max();
}

// Grid scan to bracket the minimum, then Brent inside the bracket. A
// minimum on the boundary or a flat bracket falls back to zooming the grid.
int minimize_scalar(const CalibrationProblem& p, Best& best, bool& converged) {
  constexpr int kGrid = 100;
  constexpr int kMaxIter = 500;
  ScalarContext ctx{&p, &best};
  double lo = p.bounds[0].lo;
  double hi = p.bounds[0].hi;
  int iterations = 0;

  for (int zoom = 0; zoom < 8; ++zoom) {
    std::vector<double> xs(kGrid + 1), fs(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) {
      xs[i] = lo + (hi - lo) * i / kGrid;
      fs[i] = scalar_objective(xs[i], &ctx);
    }
    ++iterations;
    const auto k = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    if (fs[k] == 0.0) {
      converged = true;
      return iterations;
    }
    if (k > 0 && k < kGrid && fs[k] < fs[k - 1] && fs[k] < fs[k + 1]) {
      gsl_function fn{&scalar_objective, &ctx};
      std::unique_ptr<gsl_min_fminimizer, decltype(&gsl_min_fminimizer_free)> solver(
          gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent), &gsl_min_fminimizer_free);
      gsl_min_fminimizer_set_with_values(solver.get(), &fn, xs[k], fs[k], xs[k - 1], fs[k - 1],
                                         xs[k + 1], fs[k + 1]);
      double previous = fs[k];
      for (int it = 0; it < kMaxIter; ++it) {
        ++iterations;
        if (gsl_min_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
        const double f = gsl_min_fminimizer_f_minimum(solver.get());
        const double a = gsl_min_fminimizer_x_lower(solver.get());
        const double b = gsl_min_fminimizer_x_upper(solver.get());
        const bool small_gain = previous - f <= p.tolerance * std::max(f, 1e-300);
        previous = f;
        if (f == 0.0 || gsl_min_test_interval(a, b, 1e-14, 1e-12) == GSL_SUCCESS ||
            (small_gain && it > 4)) {
          converged = true;
          break;
        }
      }
      return iterations;
    }
    const double step = (hi - lo) / kGrid;
    lo = std::max(p.bounds[0].lo, xs[k] - step);
    hi = std::min(p.bounds[0].hi, xs[k] + step);
    if (hi - lo < 1e-14 * std::max(1.0, std::abs(xs[k]))) {
      converged = true;
      return iterations;
    }
  }
  converged = true;
  return iterations;
}

struct VectorContext {
  const CalibrationProblem* problem;
  Best* best;
  std::vector<double> scratch;
};

// Box constraints through x = lo + (hi - lo) (1 + sin u) / 2.
double to_box(const Bound& b, double u) { return b.lo + (b.hi - b.lo) * 0.5 * (1.0 + std::sin(u)); }
double from_box(const Bound& b, double x) {
  const double s = std::clamp(2.0 * (x - b.lo) / (b.hi - b.lo) - 1.0, -1.0, 1.0);
  return std::asin(s);
}

double vector_objective(const gsl_vector* u, void* data) {
  auto* ctx = static_cast<VectorContext*>(data);
  const auto& bounds = ctx->problem->bounds;
  for (std::size_t i = 0; i < bounds.size(); ++i) ctx->scratch[i] = to_box(bounds[i], gsl_vector_get(u, i));
  const double v = penalized_sse(*ctx->problem, ctx->scratch);
  ctx->best->offer(ctx->scratch, v);
  return std::isfinite(v) ? v : std::numeric_limits<double>::max();
}

int minimize_simplex(const CalibrationProblem& p, Best& best, bool& converged) {
  constexpr int kMaxIter = 20000;
  constexpr int kRestarts = 6;
  const std::size_t n = p.bounds.size();
  VectorContext ctx{&p, &best, std::vector<double>(n)};
  gsl_multimin_function fn{&vector_objective, n, &ctx};

  using VecPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
  VecPtr start(gsl_vector_alloc(n), &gsl_vector_free);
  VecPtr step(gsl_vector_alloc(n), &gsl_vector_free);
  int iterations = 0;
  double last_restart_sse = best.sse;

  for (int restart = 0; restart < kRestarts; ++restart) {
    for (std::size_t i = 0; i < n; ++i) gsl_vector_set(start.get(), i, from_box(p.bounds[i], best.x[i]));
    gsl_vector_set_all(step.get(), 0.4);
    std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n),
        &gsl_multimin_fminimizer_free);
    gsl_multimin_fminimizer_set(solver.get(), &fn, start.get(), step.get());
    for (int it = 0; it < kMaxIter; ++it) {
      ++iterations;
      if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
      if (solver->fval == 0.0) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver.get()), 1e-12) == GSL_SUCCESS) break;
    }
    const double gain = last_restart_sse - best.sse;
    if (best.sse == 0.0 || gain <= p.tolerance * std::max(best.sse, 1e-300)) {
      converged = true;
      break;
    }
    last_restart_sse = best.sse;
  }
  return iterations;
}

}  // namespace

CalibrationResult calibrate(const CalibrationProblem& problem) {
  if (auto v = violations(problem); !v.empty()) throw ValidationError(std::move(v));
  for (std::size_t i = 0; i < problem.data.size(); ++i) {
    for (double value : problem.data[i]) {
      if (!std::isfinite(value)) {
        throw NumericError("data row " + std::to_string(i) + " is not finite", i);
      }
    }
  }

  const std::size_t n = parameter_count(problem);
  std::vector<double> initial = problem.initial;
  if (initial.empty()) {
    // A law needs increasing lengths, so its knots start on a ramp.
    const bool ramp = problem.model == CalibrationModel::ExtensionLaw;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& b = problem.bounds[i];
      const double f = ramp ? static_cast<double>(i + 1) / static_cast<double>(n + 1) : 0.5;
      initial.push_back(b.lo + f * (b.hi - b.lo));
    }
  }

  CalibrationResult result;
  result.names = parameter_names(problem);
  result.initial_sse = sum_squared_residuals(problem, initial);

  Best best;
  best.offer(initial, result.initial_sse);

  // An interpolating law through every data point is exact.
  const bool interpolating = problem.model == CalibrationModel::ExtensionLaw && problem.knots.empty() &&
                             knot_pressures(problem).size() == problem.data.size();
  if (interpolating) {
    std::vector<Anchor> sorted;
    for (const auto& row : problem.data) sorted.push_back({row[0], row[1]});
    std::sort(sorted.begin(), sorted.end(), [](const Anchor& a, const Anchor& b) { return a.pressure < b.pressure; });
    std::vector<double> x;
    for (const auto& a : sorted) x.push_back(a.length);
    best.offer(x, penalized_sse(problem, x));
    result.converged = true;
  } else if (n == 1) {
    result.iterations = minimize_scalar(problem, best, result.converged);
  } else {
    result.iterations = minimize_simplex(problem, best, result.converged);
  }

  result.parameters = best.x;
  result.sse = best.sse;
  return result;
}

CalibrationProblem parse_calibration_problem(const json& j, const std::filesystem::path& base_dir) {
  std::vector<std::string> errors;
  CalibrationProblem p;
  {
    detail::FieldReader r(j, "", errors);
    if (!r.ok()) throw ValidationError(std::move(errors));
    for (const auto& key : model_config_keys()) r.child(key.c_str());
    p.base = parse_model_config(j, base_dir, errors);

    std::string model;
    r.text("model", model);
    try {
      p.model = calibration_model_from_string(model);
    } catch (const UsageError& e) {
      r.error("model", e.what());
    }

    if (const auto* data = r.child("data")) {
      if (!data->is_array()) r.error("data", "expected an array of rows");
      for (std::size_t i = 0; data->is_array() && i < data->size(); ++i) {
        const auto& row = (*data)[i];
        std::vector<double> values;
        bool ok = row.is_array();
        for (std::size_t c = 0; ok && c < row.size(); ++c) {
          ok = row[c].is_number();
          if (ok) values.push_back(row[c].get<double>());
        }
        if (!ok) {
          r.error("data", "row " + std::to_string(i) + " is not an array of numbers");
          continue;
        }
        p.data.push_back(std::move(values));
      }
    } else {
      r.error("data", "required");
    }

    if (const auto* bounds = r.child("bounds")) {
      for (std::size_t i = 0; bounds->is_array() && i < bounds->size(); ++i) {
        const auto& b = (*bounds)[i];
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
          r.error("bounds", "entry " + std::to_string(i) + " must be [lo, hi]");
          continue;
        }
        p.bounds.push_back({b[0].get<double>(), b[1].get<double>()});
      }
    } else {
      r.error("bounds", "required");
    }
    r.numbers("initial", p.initial);
    r.number("tolerance", p.tolerance);
    r.numbers("knots", p.knots);
    r.number("filter_initial", p.filter_initial);
  }
  if (errors.empty()) {
    for (auto& v : violations(p)) errors.push_back(std::move(v));
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return p;
}

ordered_json to_json(const CalibrationResult& r, const CalibrationProblem& p) {
  ordered_json params;
  for (std::size_t i = 0; i < r.names.size() && i < r.parameters.size(); ++i) {
    params[r.names[i]] = r.parameters[i];
  }
  ordered_json j;
  j["model"] = to_string(p.model);
  j["parameters"] = std::move(params);
  j["sse"] = r.sse;
  j["initial_sse"] = r.initial_sse;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  return j;
}

const char* to_string(CalibrationModel m) {
  switch (m) {
    case CalibrationModel::ExtensionLaw: return "extension_law";
    case CalibrationModel::LayerGap: return "layer_gap";
    case CalibrationModel::Stiffness: return "stiffness";
    case CalibrationModel::BrakeTau: return "brake_tau";
    case CalibrationModel::Filter: return "filter";
    case CalibrationModel::GripForceGain: return "grip_force_gain";
  }
  return "?";
}

CalibrationModel calibration_model_from_string(const std::string& name) {
  for (auto m : {CalibrationModel::ExtensionLaw, CalibrationModel::LayerGap, CalibrationModel::Stiffness,
                 CalibrationModel::BrakeTau, CalibrationModel::Filter, CalibrationModel::GripForceGain}) {
    if (name == to_string(m)) return m;
  }
  throw UsageError("unknown calibration model '" + name +
                   "' (extension_law | layer_gap | stiffness | brake_tau | filter | grip_force_gain)");
}

}  // namespace mash
