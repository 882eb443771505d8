#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcorr/errors.hpp"
#include "qcorr/measures.hpp"
#include "qcorr_app/config.hpp"
#include "qcorr_app/state_file.hpp"
#include "qcorr_app/sweeps.hpp"
#include "qcorr_app/verify.hpp"

namespace {

using qcorr::app::Json;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kParseError = 2, kInvalidState = 3 };

constexpr const char* kFooter = R"(CSV columns:
  dephasing-sweep  t,gamma_t,lqu,d_t,conc
  radiative-sweep  tau,a,b,c,lqu,d_t,conc
Numbers use the shortest decimal form that round-trips.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 invalid state or scenario.)";

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string twelve_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

int cmd_measures(const std::string& state_path, const std::string& json_path) {
  const auto file = qcorr::app::KeyValueFile::load(state_path);
  const qcorr::XState x = qcorr::app::read_state(file);
  const qcorr::MeasureSet m = qcorr::measure_set(x);
  std::cout << "lqu = " << twelve_digits(m.lqu) << '\n'
            << "d_t = " << twelve_digits(m.trace_discord) << '\n'
            << "conc = " << twelve_digits(m.concurrence) << '\n';
  if (!json_path.empty()) {
    const Json report = {{"scenario", {{"command", "measures"}, {"state", state_path}}},
                         {"events", Json::array()},
                         {"warnings", Json::array()},
                         {"measures",
                          {{"lqu", m.lqu}, {"d_t", m.trace_discord}, {"conc", m.concurrence}}}};
    write_file(json_path, report.dump(2) + "\n");
  }
  return kOk;
}

int cmd_dephasing(const std::string& config_path, const std::string& prefix) {
  const auto config =
      qcorr::app::read_dephasing_config(qcorr::app::KeyValueFile::load(config_path));
  const auto sweep = qcorr::app::run_dephasing_sweep(config);
  write_file(prefix + ".csv", qcorr::app::to_csv(sweep));
  write_file(prefix + ".json", qcorr::app::to_json(sweep).dump(2) + "\n");
  for (const auto& w : sweep.warnings) std::cerr << "warning: " << w << '\n';
  return kOk;
}

int cmd_radiative(const std::string& config_path, const std::string& prefix) {
  const auto config =
      qcorr::app::read_radiative_config(qcorr::app::KeyValueFile::load(config_path));
  const auto sweep = qcorr::app::run_radiative_sweep(config);
  write_file(prefix + ".csv", qcorr::app::to_csv(sweep));
  write_file(prefix + ".json", qcorr::app::to_json(sweep).dump(2) + "\n");
  for (const auto& w : sweep.warnings) std::cerr << "warning: " << w << '\n';
  return kOk;
}

int cmd_verify(const qcorr::app::VerifyOptions& options, const std::string& json_path) {
  const auto checks = qcorr::app::run_verify(options);
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("%-45s %s  max_dev=%.3g tol=%.3g\n", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                c.max_deviation, c.tolerance);
    ok = ok && c.passed;
  }
  if (!json_path.empty())
    write_file(json_path, qcorr::app::verify_report(options, checks).dump(2) + "\n");
  if (!ok) {
    for (const auto& c : checks)
      if (!c.passed) std::cerr << "verification failed: " << c.name << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum correlation measures for two-qubit X states"};
  app.footer(kFooter);
  app.require_subcommand(1);

  std::string state_path, json_path, config_path, prefix;
  auto* measures = app.add_subcommand("measures", "LQU, trace discord and concurrence of one state");
  measures->add_option("--state", state_path, "key = value state file")->required();
  measures->add_option("--json", json_path, "also write a JSON report");

  auto* dephasing = app.add_subcommand("dephasing-sweep", "Time sweep of the dephasing model");
  dephasing->add_option("--config", config_path, "scenario file")->required();
  dephasing->add_option("--out", prefix, "output prefix for .csv and .json")->required();

  auto* radiative = app.add_subcommand("radiative-sweep", "Time sweep of the radiative model");
  radiative->add_option("--config", config_path, "scenario file")->required();
  radiative->add_option("--out", prefix, "output prefix for .csv and .json")->required();

  qcorr::app::VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Closed forms against reference computations");
  verify->add_option("--seed", verify_options.seed, "random seed")->capture_default_str();
  verify->add_option("--restarts", verify_options.restarts, "trace-discord search restarts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--battery", verify_options.battery, "base battery size")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--json", json_path, "write the verdicts as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    if (*measures) return cmd_measures(state_path, json_path);
    if (*dephasing) return cmd_dephasing(config_path, prefix);
    if (*radiative) return cmd_radiative(config_path, prefix);
    if (*verify) return cmd_verify(verify_options, json_path);
  } catch (const qcorr::app::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const qcorr::InvalidStateError& e) {
    std::cerr << "invalid state: violated invariant '" << e.invariant() << "': " << e.what() << '\n';
    return kInvalidState;
  } catch (const qcorr::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kInvalidState;
  } catch (const qcorr::ModelInconsistencyError& e) {
    std::cerr << "invalid state: " << e.what() << '\n';
    return kInvalidState;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kOk;
}
