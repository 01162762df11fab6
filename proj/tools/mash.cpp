// Command-line front end: simulate, characterize, calibrate, validate.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "mash/errors.hpp"
#include "mash/harness/calibration.hpp"
#include "mash/harness/characterize.hpp"
#include "mash/harness/scenario.hpp"
#include "mash/harness/simulator.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumeric = 2, kTerminal = 3 };

template <class Writer>
void emit(const std::string& out_path, Writer&& write) {
  if (out_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw mash::UsageError("cannot open '" + out_path + "' for writing");
  write(out);
}

std::filesystem::path parent_of(const std::string& path) {
  return std::filesystem::absolute(path).parent_path();
}

int simulate(const std::string& scenario_path, const std::string& out_path) {
  const auto log = mash::run_scenario(mash::load_scenario(scenario_path));
  emit(out_path, [&](std::ostream& o) { o << mash::serialize(log); });
  std::cerr << "terminal: " << mash::to_string(log.terminal) << '\n';
  return log.terminal == mash::RunStatus::Completed ? kOk : kTerminal;
}

int characterize(const std::string& kind_name, const std::string& config_path, const std::string& out_path) {
  const auto kind = mash::characterize_kind_from_string(kind_name);
  mash::CharacterizeConfig config;
  if (!config_path.empty()) {
    config = mash::parse_characterize_config(mash::read_json_file(config_path), parent_of(config_path));
  }
  const auto table = mash::characterize(kind, config);
  emit(out_path, [&](std::ostream& o) { mash::write_csv(o, table); });
  return kOk;
}

int calibrate(const std::string& problem_path, const std::string& out_path) {
  const auto problem =
      mash::parse_calibration_problem(mash::read_json_file(problem_path), parent_of(problem_path));
  const auto result = mash::calibrate(problem);
  emit(out_path, [&](std::ostream& o) { o << mash::to_json(result, problem).dump(1) << '\n'; });
  return kOk;
}

int validate(const std::string& scenario_path) {
  const auto scenario = mash::load_scenario(scenario_path);
  std::cout << "ok: " << scenario.name << " (" << mash::to_string(scenario.strategy) << ", "
            << scenario.objects.size() << " objects)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MASH soft-gripper simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, kind, config_path, problem_path;

  auto* sim = app.add_subcommand("simulate", "Run a scenario and write its JSON log");
  sim->add_option("scenario", scenario_path)->required();
  sim->add_option("--out", out_path, "Log file (default stdout)");

  auto* chr = app.add_subcommand("characterize", "Emit a characterization sweep as CSV");
  chr->add_option("kind", kind, "brake_force | brake_response | extension | aperture | stiffness")->required();
  chr->add_option("--config", config_path, "Model and sweep overrides (JSON)");
  chr->add_option("--out", out_path, "CSV file (default stdout)");

  auto* cal = app.add_subcommand("calibrate", "Fit model parameters to a dataset");
  cal->add_option("problem", problem_path)->required();
  cal->add_option("--out", out_path, "Result file (default stdout)");

  auto* val = app.add_subcommand("validate", "Check a scenario file");
  val->add_option("scenario", scenario_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*sim) return simulate(scenario_path, out_path);
    if (*chr) return characterize(kind, config_path, out_path);
    if (*cal) return calibrate(problem_path, out_path);
    if (*val) return validate(scenario_path);
  } catch (const mash::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kValidation;
  } catch (const mash::UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kValidation;
  } catch (const mash::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::range_error& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return kNumeric;
  } catch (const mash::NoSolutionError& e) {
    std::cerr << "no solution: " << e.what() << '\n';
    return kNumeric;
  }
  return kValidation;
}
