// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/analysis.hpp"
#include "qcorr/dephasing.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/oracles.hpp"
#include "qcorr/radiative.hpp"
#include "qcorr_app/sweeps.hpp"
#include "qcorr_app/verify.hpp"

namespace fs = std::filesystem;
using namespace qcorr;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Paths {
  fs::path qcorr;
  fs::path scenarios;
  fs::path golden;
  fs::path work;
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

Outcome from_check(const app::Check& c, std::string extra = {}) {
  std::string detail = c.name + ": max deviation " + fmt(c.max_deviation) + " (tolerance " +
                       fmt(c.tolerance) + ")";
  if (!extra.empty()) detail += "; " + extra;
  return {c.passed, detail};
}

// 1
Outcome lqu_battery() {
  const auto start = std::chrono::steady_clock::now();
  const app::Check c = app::check_lqu_battery(1000, 1);
  const double elapsed = seconds_since(start);
  Outcome o = from_check(c, "1000 states in " + fmt(elapsed) + " s (target 60 s)");
  o.passed = o.passed && elapsed < 60.0;
  return o;
}

// 2
Outcome trace_discord_battery() {
  const auto start = std::chrono::steady_clock::now();
  const app::Check c = app::check_trace_discord_battery(100, 50, 1);
  const double elapsed = seconds_since(start);
  Outcome o = from_check(c, "closed-form excess " + fmt(c.detail["max_closed_excess"].get<double>()) +
                                " (tolerance 1e-9); 100 states in " + fmt(elapsed) + " s (target 300 s)");
  o.passed = o.passed && elapsed < 300.0;
  return o;
}

// 3
Outcome gamma_grid() {
  const app::Check c = app::check_gamma_grid(50);
  const auto& variants = c.detail["sub_ohmic_variants"];
  std::string extra;
  for (const auto& v : variants)
    extra += v["factor"].get<std::string>() + (v["passed"].get<bool>() ? " passes" : " fails") + ", ";
  extra += std::to_string(variants[1]["non_finite_points"].get<int>()) +
           " non-finite points for the (1-(Omega t)^2) variant";
  Outcome o = from_check(c, extra);
  o.passed = o.passed && c.detail["unconverged_series"].get<int>() == 0;
  return o;
}

// 4
Outcome radiative_rk4() {
  const app::Check c = app::check_radiative_master_equation(1e-3);
  const bool rejected = c.detail["rejected_passes"].get<bool>();
  return from_check(c, std::string("(1-gamma^2) adopted; (1-gamma) ") + (rejected ? "also passes" : "fails"));
}

// 5
Outcome special_values() {
  const XState bell = from_bell_diagonal(1.0, -1.0, 1.0);
  const double bell_lqu = lqu(bell);
  const double bell_td = trace_discord(bell);
  const double bell_td_search = oracles::trace_discord_bruteforce(bell, 50, 1).value;
  const double bell_conc = concurrence(bell);

  double worst_zero = 0.0;
  std::vector<XState> zeros = {XState::maximally_mixed()};
  for (double p : {0.0, 0.3, 0.5, 1.0})
    for (double q : {0.0, 0.25, 0.9}) zeros.push_back(XState::product(p, q));
  for (const XState& x : zeros) {
    const MeasureSet m = measure_set(x);
    worst_zero = std::max({worst_zero, m.lqu, m.trace_discord, m.concurrence});
  }

  const bool ok = std::abs(bell_lqu - 1.0) <= 1e-12 && std::abs(bell_td - 0.5) <= 1e-9 &&
                  std::abs(bell_td_search - 0.5) <= 1e-9 && std::abs(bell_conc - 1.0) <= 1e-12 &&
                  worst_zero <= 1e-12;
  return {ok, "Bell state lqu " + fmt(bell_lqu, 15) + ", d_t " + fmt(bell_td, 15) + " (search " +
                  fmt(bell_td_search, 12) + "), conc " + fmt(bell_conc, 15) + "; largest value on " +
                  std::to_string(zeros.size()) + " uncorrelated states " + fmt(worst_zero)};
}

// 6
Outcome freezing() {
  struct Case {
    const char* label;
    dephasing::ReservoirSpec reservoir;
  };
  const Case cases[] = {
      {"sub-ohmic", {0.5, 0.1, 1.0, 1.0}},
      {"ohmic", {1.0, 0.1, 1.0, 1.0}},
      {"super-ohmic", {1.5, 0.2, 1.0, std::numeric_limits<double>::infinity()}},
  };
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    const dephasing::DephasingScenario sc{0.6, -0.3, 0.4, 1.0, 1.0, c.reservoir};
    const auto switch_time = analysis::crossing_time(0.6, 0.4, c.reservoir);
    if (!switch_time) {
      ok = false;
      detail += std::string(c.label) + ": no switch time; ";
      continue;
    }
    const double span = std::max(10.0, 2.0 * *switch_time);
    double frozen_dev = 0.0, decay_dev = 0.0;
    double lqu_lo = 1.0, lqu_hi = 0.0;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
      const double t = span * i / (n - 1);
      const double g = dephasing::gamma_closed(c.reservoir, t);
      const XState x = dephasing::evolve_with_gamma(sc, t, g);
      const double d = trace_discord(x);
      if (t < *switch_time) {
        frozen_dev = std::max(frozen_dev, std::abs(d - 0.2));
        const double u = lqu(x);
        lqu_lo = std::min(lqu_lo, u);
        lqu_hi = std::max(lqu_hi, u);
      } else {
        decay_dev = std::max(decay_dev, std::abs(d - 0.3 * std::exp(-g)));
      }
    }
    const bool case_ok = frozen_dev <= 1e-9 && decay_dev <= 1e-9 && lqu_hi - lqu_lo > 1e-3;
    ok = ok && case_ok;
    detail += std::string(c.label) + " t*=" + fmt(*switch_time, 5) + " frozen dev " + fmt(frozen_dev) +
              ", decay dev " + fmt(decay_dev) + ", lqu range " + fmt(lqu_hi - lqu_lo) + "; ";
  }
  return {ok, detail};
}

// 7
Outcome radiative_features() {
  using analysis::EventKind;
  using analysis::Measure;
  bool ok = true;
  bool lqu_revival = false, d_t_revival = false;
  std::string detail;

  for (double g : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    app::RadiativeSweepConfig cfg;
    cfg.gamma_ratio = g;
    const auto sweep = app::run_radiative_sweep(cfg);
    const auto& events = sweep.trace.features;
    lqu_revival = lqu_revival || analysis::first_event_time(events, EventKind::kRevival, Measure::kLqu);
    d_t_revival = d_t_revival || analysis::first_event_time(events, EventKind::kRevival, Measure::kTraceDiscord);

    auto births = [](const std::vector<analysis::Event>& ev) {
      return std::array{analysis::first_event_time(ev, EventKind::kBirth, Measure::kLqu),
                        analysis::first_event_time(ev, EventKind::kBirth, Measure::kTraceDiscord),
                        analysis::first_event_time(ev, EventKind::kBirth, Measure::kConcurrence)};
    };
    auto b = births(events);
    std::string note;
    if (!b[2]) {
      // Entanglement this weak needs a finer threshold and a longer window
      // before it registers at all.
      app::RadiativeSweepConfig fine = cfg;
      fine.tau_max = 20.0;
      fine.n_steps = 4000;
      fine.features.eps_zero = 1e-7;
      b = births(app::run_radiative_sweep(fine).trace.features);
      note = " (eps_zero 1e-7, tau<=20)";
    }
    const bool delayed = b[0] && b[1] && b[2] && *b[2] > *b[0] && *b[2] > *b[1];
    ok = ok && delayed;
    auto show = [](const std::optional<double>& t) { return t ? fmt(*t, 4) : std::string("none"); };
    detail += "g=" + fmt(g, 2) + " births lqu " + show(b[0]) + ", d_t " + show(b[1]) + ", conc " +
              show(b[2]) + note + "; ";
  }

  app::RadiativeSweepConfig full;
  full.gamma_ratio = 1.0;
  const auto sweep = app::run_radiative_sweep(full);
  const auto& tr = sweep.trace;
  const double conc_max = *std::max_element(tr.conc.begin(), tr.conc.end());
  const auto peak = std::max_element(tr.d_t.begin(), tr.d_t.end()) - tr.d_t.begin();
  const double step = tr.times[1] - tr.times[0];
  const double peak_time = tr.times[peak];

  // Golden-section refinement of the grid maximum.
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = std::max(0.0, peak_time - step), hi = peak_time + step;
  auto f = [](double tau) { return trace_discord(radiative::evolve(tau, 1.0)); };
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double peak_value = f(0.5 * (lo + hi));
  const double target = 0.5 * std::exp(-1.0);
  const bool full_ok = conc_max == 0.0 && std::abs(peak_value - target) <= 1e-9 &&
                       std::abs(peak_time - 0.5) <= step;
  ok = ok && full_ok && lqu_revival && d_t_revival;
  detail += "g=1 max conc " + fmt(conc_max) + ", d_t peak " + fmt(peak_value, 12) + " at tau " +
            fmt(peak_time, 4) + " (step " + fmt(step) + "); revivals lqu " + (lqu_revival ? "yes" : "no") +
            ", d_t " + (d_t_revival ? "yes" : "no");
  return {ok, detail};
}

// 8
Outcome pure_states() { return from_check(app::check_pure_states(200, 1)); }

// 9
Outcome bell_diagonal() { return from_check(app::check_bell_diagonal(10000, 1)); }

// 10
Outcome interface(const Paths& paths) {
  fs::create_directories(paths.work);
  bool ok = true;
  std::string detail;

  const int verify_status =
      run(quoted(paths.qcorr) + " verify --json " + quoted(paths.work / "verify.json") + " > " +
          quoted(paths.work / "verify.txt"));
  ok = ok && verify_status == 0;
  detail += "verify exit " + std::to_string(verify_status) + "; ";

  int repeat_mismatch = 0;
  for (const char* run_name : {"repeat_a.json", "repeat_b.json"})
    run(quoted(paths.qcorr) + " verify --battery 20 --restarts 10 --seed 7 --json " +
        quoted(paths.work / run_name) + " > " + quoted(paths.work / "repeat.txt"));
  if (read_file(paths.work / "repeat_a.json") != read_file(paths.work / "repeat_b.json") ||
      read_file(paths.work / "repeat_a.json").empty())
    repeat_mismatch = 1;
  ok = ok && repeat_mismatch == 0;
  detail += std::string("seeded verify ") + (repeat_mismatch ? "differs" : "repeats") + "; ";

  int golden_mismatch = 0;
  for (const char* name : {"dephasing_subohmic_a", "dephasing_subohmic_b", "dephasing_subohmic_c"}) {
    const fs::path prefix = paths.work / name;
    const int status = run(quoted(paths.qcorr) + " dephasing-sweep --config " +
                           quoted(paths.scenarios / (std::string(name) + ".cfg")) + " --out " +
                           quoted(prefix) + " > " + quoted(paths.work / "sweep.txt"));
    for (const char* ext : {".csv", ".json"}) {
      const std::string produced = read_file(prefix.string() + ext);
      const std::string golden = read_file(paths.golden / (std::string(name) + ext));
      if (status != 0 || produced.empty() || produced != golden) {
        ++golden_mismatch;
        detail += std::string(name) + ext + " differs; ";
      }
    }
  }
  ok = ok && golden_mismatch == 0;
  detail += std::to_string(6 - golden_mismatch) + "/6 golden files match";
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcorr acceptance criteria"};
  Paths paths;
  app.add_option("--qcorr", paths.qcorr, "qcorr executable")->required();
  app.add_option("--scenarios", paths.scenarios, "scenario directory")->required();
  app.add_option("--golden", paths.golden, "golden output directory")->required();
  app.add_option("--work", paths.work, "scratch directory")->required();
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"LQU closed form vs brute force", lqu_battery},
      {"trace discord closed form vs brute force", trace_discord_battery},
      {"dephasing exponent closed forms vs quadrature", gamma_grid},
      {"radiative closed forms vs master equation", radiative_rk4},
      {"exact special values", special_values},
      {"trace discord freezing", freezing},
      {"radiative birth, peak and revival", radiative_features},
      {"pure-state identity", pure_states},
      {"Bell-diagonal reduction", bell_diagonal},
      {"determinism and interface", [&] { return interface(paths); }},
  };

  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    passed += o.passed;
    std::printf("criterion %2zu %s  %s [%.1f s]: %s\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].name,
                seconds_since(start), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
  return passed == int(criteria.size()) ? 0 : 1;
}
