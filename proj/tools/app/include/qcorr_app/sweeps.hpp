#pragma once

// Time sweeps of the two decoherence models with CSV and JSON output.

#include <optional>
#include <string>
#include <vector>

#include "qcorr/analysis.hpp"
#include "qcorr/dephasing.hpp"
#include "qcorr/radiative.hpp"
#include "qcorr_app/config.hpp"
#include "qcorr_app/json.hpp"

namespace qcorr::app {

inline constexpr int kDefaultSweepPoints = 400;
inline constexpr double kDefaultDephasingSpan = 10.0;  // in units of 1/Omega
inline constexpr double kDefaultRadiativeSpan = 5.0;

struct FeatureOptions {
  double eps_zero = analysis::kDefaultEpsZero;
  /// Freezing tolerance as a fraction of each trace's maximum.
  double eps_flat_relative = analysis::kDefaultEpsFlatRelative;
};

struct DephasingSweepConfig {
  dephasing::DephasingScenario scenario;
  double t_max = kDefaultDephasingSpan;
  int n_steps = kDefaultSweepPoints;
  FeatureOptions features;
};

struct RadiativeSweepConfig {
  double gamma_ratio = 0.0;
  std::optional<radiative::AtomPairGeometry> geometry;
  double tau_max = kDefaultRadiativeSpan;
  int n_steps = kDefaultSweepPoints;
  FeatureOptions features;
};

/// Throws ParseError for grammar or key problems and ValidationError /
/// InvalidStateError for out-of-range values.
DephasingSweepConfig read_dephasing_config(const KeyValueFile& file);
RadiativeSweepConfig read_radiative_config(const KeyValueFile& file);

/// Evenly spaced grid with n points on [0, span]; n = 1 gives {0}.
std::vector<double> time_grid(double span, int n);

/// Freezing, sudden-change and birth/death/revival events for all three
/// measures, time-sorted. Plateaus must sit above eps_zero. Detectors whose preconditions fail on a trace
/// are skipped for that trace.
std::vector<analysis::Event> detect_features(const analysis::TimeTrace& trace,
                                             const FeatureOptions& options);

struct DephasingSweep {
  DephasingSweepConfig config;
  std::vector<double> gamma;
  analysis::TimeTrace trace;
  std::vector<std::string> warnings;
};

struct RadiativeSweep {
  RadiativeSweepConfig config;
  std::vector<radiative::RadiativeState> states;
  analysis::TimeTrace trace;
  std::vector<std::string> warnings;
};

DephasingSweep run_dephasing_sweep(const DephasingSweepConfig& config);
RadiativeSweep run_radiative_sweep(const RadiativeSweepConfig& config);

/// Header `t,gamma_t,lqu,d_t,conc`.
std::string to_csv(const DephasingSweep& sweep);
/// Header `tau,a,b,c,lqu,d_t,conc`.
std::string to_csv(const RadiativeSweep& sweep);

Json to_json(const analysis::Event& e);
Json to_json(const DephasingSweep& sweep);
Json to_json(const RadiativeSweep& sweep);

/// Shortest decimal that round-trips; negative zero prints as 0.
std::string format_number(double v);

}  // namespace qcorr::app
