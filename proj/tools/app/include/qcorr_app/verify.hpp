#pragma once

// Closed-form versus reference batteries behind the `verify` command.

#include <cstdint>
#include <string>
#include <vector>

#include "qcorr_app/json.hpp"

namespace qcorr::app {

struct Check {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  Json detail = Json::object();
};

Json to_json(const Check& c);

/// Random X states: |lqu - lqu_bruteforce| < 1e-6.
Check check_lqu_battery(int states, std::uint64_t seed);
/// Random X states: closed <= brute force + 1e-9 and brute force - closed < 1e-3.
Check check_trace_discord_battery(int states, int restarts, std::uint64_t seed);
/// Three regimes x two temperatures x `points` times in (0, 20/Omega]:
/// relative deviation of the closed forms from quadrature <= 1e-6. Also
/// reports how the rejected (1-(Omega t)^2) sub-Ohmic factor fares on the same grid.
Check check_gamma_grid(int points = 50);
/// a, b, c against RK4 on tau in [0, 5] for six collective ratios, both
/// denominator conventions; the adopted one must agree within 1e-6.
Check check_radiative_master_equation(double dtau = 1e-3);
/// Random Bell-diagonal triples: trace_discord equals half the median |c|.
Check check_bell_diagonal(int states, std::uint64_t seed);
/// Random pure X states: |lqu - concurrence^2| < 1e-10.
Check check_pure_states(int states, std::uint64_t seed);
/// Random X states: spin-flip concurrence equals the X-state formula.
Check check_concurrence_reduction(int states, std::uint64_t seed);

struct VerifyOptions {
  std::uint64_t seed = 1;
  int restarts = 50;
  /// Base battery size; the trace-discord battery uses a tenth of it and the
  /// Bell-diagonal battery ten times it.
  int battery = 200;
};

std::vector<Check> run_verify(const VerifyOptions& options);

/// {scenario, events, warnings, checks} report for a verify run.
Json verify_report(const VerifyOptions& options, const std::vector<Check>& checks);

}  // namespace qcorr::app
