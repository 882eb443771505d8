#include "qcorr_app/sweeps.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string_view>

#include "qcorr/errors.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr::app {

namespace {

constexpr std::array<analysis::Measure, 3> kMeasures = {
    analysis::Measure::kLqu, analysis::Measure::kTraceDiscord, analysis::Measure::kConcurrence};

FeatureOptions read_feature_options(const KeyValueFile& f) {
  FeatureOptions o;
  o.eps_zero = f.optional_number("eps_zero").value_or(o.eps_zero);
  o.eps_flat_relative = f.optional_number("eps_flat").value_or(o.eps_flat_relative);
  if (!(o.eps_zero > 0.0)) throw ValidationError("eps_zero must be positive");
  if (!(o.eps_flat_relative > 0.0)) throw ValidationError("eps_flat must be positive");
  return o;
}

int read_steps(const KeyValueFile& f) {
  const long n = f.optional_count("n_steps").value_or(kDefaultSweepPoints);
  if (n < 1 || n > 10'000'000) throw ValidationError("n_steps must lie in [1, 1e7]");
  return int(n);
}

double read_span(const KeyValueFile& f, std::string_view key, double fallback) {
  const double v = f.optional_number(key).value_or(fallback);
  if (!(v >= 0.0)) throw ValidationError(std::string(key) + " must be non-negative");
  return v;
}

Json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json optional_time(std::optional<double> t) { return t ? Json(*t) : Json(nullptr); }

Json events_json(const std::vector<analysis::Event>& events) {
  Json out = Json::array();
  for (const auto& e : events) out.push_back(to_json(e));
  return out;
}

Json feature_options_json(const FeatureOptions& o) {
  return {{"eps_zero", o.eps_zero}, {"eps_flat_relative", o.eps_flat_relative}};
}

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

DephasingSweepConfig read_dephasing_config(const KeyValueFile& f) {
  static constexpr std::array<std::string_view, 13> kKeys = {
      "c1", "c2", "c3", "v1", "v2", "s", "lambda", "omega", "beta", "t_max", "n_steps",
      "eps_zero", "eps_flat"};
  f.require_known(kKeys);

  DephasingSweepConfig c;
  auto& sc = c.scenario;
  sc.c1 = f.number("c1");
  sc.c2 = f.number("c2");
  sc.c3 = f.number("c3");
  sc.reservoir.s = f.number("s");
  sc.reservoir.lam = f.number("lambda");
  sc.reservoir.omega = f.optional_number("omega").value_or(1.0);
  sc.reservoir.beta =
      f.optional_number("beta", true).value_or(std::numeric_limits<double>::infinity());
  sc.v1 = f.optional_number("v1").value_or(sc.reservoir.omega);
  sc.v2 = f.optional_number("v2").value_or(sc.reservoir.omega);
  c.n_steps = read_steps(f);
  c.features = read_feature_options(f);

  dephasing::validate(sc.reservoir);
  validate(from_bell_diagonal(sc.c1, sc.c2, sc.c3));
  c.t_max = read_span(f, "t_max", kDefaultDephasingSpan / sc.reservoir.omega);
  return c;
}

RadiativeSweepConfig read_radiative_config(const KeyValueFile& f) {
  static constexpr std::array<std::string_view, 7> kKeys = {
      "gamma_ratio", "k0r", "mu_dot_rhat", "tau_max", "n_steps", "eps_zero", "eps_flat"};
  f.require_known(kKeys);

  RadiativeSweepConfig c;
  const Entry* ratio = f.find("gamma_ratio");
  const Entry* geometry_key = f.find("k0r");
  if (!geometry_key) geometry_key = f.find("mu_dot_rhat");
  if (ratio && geometry_key) {
    const Entry& later = ratio->line > geometry_key->line ? *ratio : *geometry_key;
    f.fail_at(later, false, "gamma_ratio and (k0r, mu_dot_rhat) are mutually exclusive");
  }
  if (geometry_key) {
    radiative::AtomPairGeometry g;
    g.k0r = f.number("k0r");
    g.mu_dot_rhat = f.optional_number("mu_dot_rhat").value_or(0.0);
    if (!(g.k0r > 0.0)) throw ValidationError("k0r must be positive");
    if (!(std::abs(g.mu_dot_rhat) <= 1.0)) throw ValidationError("mu_dot_rhat must lie in [-1, 1]");
    c.geometry = g;
    c.gamma_ratio = radiative::coupling_gamma12(g);
  } else {
    c.gamma_ratio = f.number("gamma_ratio");
  }
  if (!(std::abs(c.gamma_ratio) <= 1.0)) throw ValidationError("gamma_ratio must lie in [-1, 1]");
  c.tau_max = read_span(f, "tau_max", kDefaultRadiativeSpan);
  c.n_steps = read_steps(f);
  c.features = read_feature_options(f);
  return c;
}

std::vector<double> time_grid(double span, int n) {
  std::vector<double> t(std::size_t(std::max(n, 1)), 0.0);
  for (int i = 1; i < n; ++i) t[std::size_t(i)] = span * double(i) / double(n - 1);
  if (n > 1) t.back() = span;
  return t;
}

std::vector<analysis::Event> detect_features(const analysis::TimeTrace& trace,
                                             const FeatureOptions& options) {
  std::vector<analysis::Event> events;
  const std::size_t n = trace.times.size();
  auto append = [&](std::vector<analysis::Event> more) {
    events.insert(events.end(), more.begin(), more.end());
  };
  for (const auto m : kMeasures) {
    const auto values = trace.values(m);
    if (values.empty()) continue;
    const double peak = *std::max_element(values.begin(), values.end());
    if (n >= 10 && peak > 0.0)
      append(analysis::detect_freezing(trace.times, values, m, options.eps_flat_relative * peak, 5,
                                       options.eps_zero));
    if (n >= 11) append(analysis::detect_sudden_change(trace.times, values, m));
    if (values.front() < options.eps_zero)
      append(analysis::detect_birth_death_revival(trace.times, values, m, options.eps_zero));
  }
  analysis::sort_events(events);
  return events;
}

DephasingSweep run_dephasing_sweep(const DephasingSweepConfig& config) {
  DephasingSweep out;
  out.config = config;
  const auto& sc = config.scenario;
  const std::vector<double> times = time_grid(config.t_max, config.n_steps);

  struct Row {
    dephasing::GammaValue gamma;
    MeasureSet m;
  };
  const auto rows = parallel_map(times.size(), [&](std::size_t i) {
    Row r;
    r.gamma = dephasing::gamma_closed_checked(sc.reservoir, times[i]);
    r.m = measure_set(dephasing::evolve_with_gamma(sc, times[i], r.gamma.value));
    return r;
  });

  out.trace.times = times;
  int unconverged = 0;
  double first_unconverged = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.gamma.push_back(rows[i].gamma.value);
    out.trace.lqu.push_back(rows[i].m.lqu);
    out.trace.d_t.push_back(rows[i].m.trace_discord);
    out.trace.conc.push_back(rows[i].m.concurrence);
    if (!rows[i].gamma.series_converged && unconverged++ == 0) first_unconverged = times[i];
  }
  if (unconverged > 0) {
    std::ostringstream os;
    os << "thermal series truncated at " << unconverged << " grid points (first at t="
       << format_number(first_unconverged) << ")";
    out.warnings.push_back(os.str());
  }
  out.trace.check();
  out.trace.features = detect_features(out.trace, config.features);
  return out;
}

RadiativeSweep run_radiative_sweep(const RadiativeSweepConfig& config) {
  RadiativeSweep out;
  out.config = config;
  const std::vector<double> times = time_grid(config.tau_max, config.n_steps);

  struct Row {
    radiative::RadiativeState state;
    MeasureSet m;
  };
  const auto rows = parallel_map(times.size(), [&](std::size_t i) {
    Row r;
    r.state = radiative::abc(times[i], config.gamma_ratio);
    r.m = measure_set(radiative::to_xstate(r.state));
    return r;
  });

  out.trace.times = times;
  for (const Row& r : rows) {
    out.states.push_back(r.state);
    out.trace.lqu.push_back(r.m.lqu);
    out.trace.d_t.push_back(r.m.trace_discord);
    out.trace.conc.push_back(r.m.concurrence);
  }
  out.trace.check();
  out.trace.features = detect_features(out.trace, config.features);
  return out;
}

std::string to_csv(const DephasingSweep& sweep) {
  std::string out = "t,gamma_t,lqu,d_t,conc\n";
  const auto& tr = sweep.trace;
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    append_row(out, {tr.times[i], sweep.gamma[i], tr.lqu[i], tr.d_t[i], tr.conc[i]});
  return out;
}

std::string to_csv(const RadiativeSweep& sweep) {
  std::string out = "tau,a,b,c,lqu,d_t,conc\n";
  const auto& tr = sweep.trace;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto& s = sweep.states[i];
    append_row(out, {tr.times[i], s.a, s.b, s.c, tr.lqu[i], tr.d_t[i], tr.conc[i]});
  }
  return out;
}

Json to_json(const analysis::Event& e) {
  return {{"kind", std::string(analysis::to_string(e.kind))},
          {"time", e.time},
          {"measure", std::string(analysis::to_string(e.measure))},
          {"value", e.value}};
}

Json to_json(const DephasingSweep& sweep) {
  const auto& c = sweep.config;
  const auto& sc = c.scenario;
  const auto& r = sc.reservoir;

  // The frozen plateau of the trace discord starts and ends where the damped
  // coherence correlators cross |c3|.
  const double hi = std::max(std::abs(sc.c1), std::abs(sc.c2));
  const double lo = std::min(std::abs(sc.c1), std::abs(sc.c2));
  Json switches = Json::array();
  for (double corr : {lo, hi})
    if (auto t = analysis::crossing_time(corr, sc.c3, r)) switches.push_back(*t);

  Json scenario = {{"model", "dephasing"},
                   {"c1", sc.c1},
                   {"c2", sc.c2},
                   {"c3", sc.c3},
                   {"v1", sc.v1},
                   {"v2", sc.v2},
                   {"s", r.s},
                   {"lambda", r.lam},
                   {"omega", r.omega},
                   {"beta", number_or_inf(r.beta)},
                   {"regime", std::string(dephasing::to_string(r.regime()))},
                   {"t_max", c.t_max},
                   {"n_steps", c.n_steps},
                   {"features", feature_options_json(c.features)},
                   {"discord_branch_switch_times", switches}};
  return {{"scenario", scenario},
          {"events", events_json(sweep.trace.features)},
          {"warnings", sweep.warnings}};
}

Json to_json(const RadiativeSweep& sweep) {
  const auto& c = sweep.config;
  Json scenario = {{"model", "radiative"}, {"gamma_ratio", c.gamma_ratio}};
  if (c.geometry) {
    scenario["k0r"] = c.geometry->k0r;
    scenario["mu_dot_rhat"] = c.geometry->mu_dot_rhat;
    scenario["omega12"] = radiative::coupling_omega12(*c.geometry);
  }
  scenario["tau_max"] = c.tau_max;
  scenario["n_steps"] = c.n_steps;
  scenario["features"] = feature_options_json(c.features);

  using analysis::EventKind;
  using analysis::Measure;
  const auto& ev = sweep.trace.features;
  const auto lqu_birth = analysis::first_event_time(ev, EventKind::kBirth, Measure::kLqu);
  const auto dt_birth = analysis::first_event_time(ev, EventKind::kBirth, Measure::kTraceDiscord);
  const auto conc_birth = analysis::first_event_time(ev, EventKind::kBirth, Measure::kConcurrence);
  const bool delayed = lqu_birth && dt_birth &&
                       (!conc_birth || (*conc_birth > *lqu_birth && *conc_birth > *dt_birth));

  Json check = {{"name", "concurrence_birth_delayed"},
                {"passed", delayed},
                {"lqu_birth", optional_time(lqu_birth)},
                {"d_t_birth", optional_time(dt_birth)},
                {"conc_birth", optional_time(conc_birth)}};
  return {{"scenario", scenario},
          {"events", events_json(ev)},
          {"warnings", sweep.warnings},
          {"checks", Json::array({check})}};
}

}  // namespace qcorr::app
