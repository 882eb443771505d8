#include <doctest.h>

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr_app/config.hpp"
#include "qcorr_app/state_file.hpp"
#include "qcorr_app/sweeps.hpp"
#include "qcorr_app/verify.hpp"

using namespace qcorr;
using namespace qcorr::app;

namespace {

struct Location {
  int line;
  int column;
};

template <class F>
Location parse_error_location(F f) {
  try {
    f();
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  FAIL("expected a ParseError");
  return {-1, -1};
}

Location location_of(const std::string& text) {
  return parse_error_location([&] { KeyValueFile::parse(text, "cfg"); });
}

}  // namespace

TEST_SUITE("config files") {
  TEST_CASE("entries, comments and blank lines") {
    const auto f = KeyValueFile::parse("# header\n\n  alpha = 1.5  # trailing\nbeta=inf\n", "cfg");
    REQUIRE(f.entries().size() == 2);
    CHECK(f.entries()[0].line == 3);
    CHECK(f.entries()[0].key_column == 3);
    CHECK(f.number("alpha") == 1.5);
    CHECK(f.number("beta", true) == std::numeric_limits<double>::infinity());
    CHECK_FALSE(f.optional_number("gamma").has_value());
    CHECK(f.contains("beta"));
  }

  TEST_CASE("syntax errors carry their location") {
    const Location missing_eq = location_of("a = 1\nb 2\n");
    CHECK(missing_eq.line == 2);
    CHECK(missing_eq.column == 1);
    CHECK(location_of("a = 1\n = 2\n").line == 2);
    const Location empty_value = location_of("a = 1\nbb =   \n");
    CHECK(empty_value.line == 2);
    const Location duplicate = location_of("a = 1\n\na = 2\n");
    CHECK(duplicate.line == 3);
    CHECK(duplicate.column == 1);
    CHECK(location_of("1x = 3\n").line == 1);
  }

  TEST_CASE("message format") {
    try {
      KeyValueFile::parse("a = 1\n  b\n", "demo.cfg");
      FAIL("expected a ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).rfind("demo.cfg:2:3: ", 0) == 0);
    }
  }

  TEST_CASE("value errors point at the value") {
    const auto f = KeyValueFile::parse("a =  x1\nb = inf\nn = 2.5\n", "cfg");
    const Location bad = parse_error_location([&] { f.number("a"); });
    CHECK(bad.line == 1);
    CHECK(bad.column == 6);
    CHECK(parse_error_location([&] { f.number("b"); }).line == 2);
    CHECK(parse_error_location([&] { f.optional_count("n"); }).line == 3);
    const Location missing = parse_error_location([&] { f.number("zzz"); });
    CHECK(missing.line == 4);
  }

  TEST_CASE("unknown keys") {
    const auto f = KeyValueFile::parse("a = 1\nbogus = 2\n", "cfg");
    const std::string_view allowed[] = {"a"};
    CHECK(parse_error_location([&] { f.require_known(allowed); }).line == 2);
  }

  TEST_CASE("unreadable file") {
    CHECK_THROWS_AS(KeyValueFile::load("/nonexistent/qcorr.cfg"), ParseError);
  }
}

TEST_SUITE("state files") {
  TEST_CASE("matrix keys") {
    const XState x = read_state(KeyValueFile::parse(
        "rho11 = 0.4\nrho22 = 0.15\nrho33 = 0.25\nrho44 = 0.2\nre14 = 0.1\nim14 = 0.15\nre23 = -0.12\nim23 = 0.05\n"));
    CHECK(x.rho14 == cplx(0.1, 0.15));
    CHECK(x.rho23 == cplx(-0.12, 0.05));
    CHECK(x.rho33 == 0.25);
  }

  TEST_CASE("Bell-diagonal keys") {
    const XState x = read_state(KeyValueFile::parse("c1 = 1\nc2 = -1\nc3 = 1\n"));
    CHECK(x.rho11 == doctest::Approx(0.5));
    CHECK(x.rho14 == cplx(0.5));
  }

  TEST_CASE("mixed, unknown and missing keys") {
    CHECK_THROWS_AS(read_state(KeyValueFile::parse("c1 = 0.1\nc2 = 0\nc3 = 0\nrho11 = 1\n")), ParseError);
    CHECK_THROWS_AS(read_state(KeyValueFile::parse("c1 = 0.1\nc2 = 0\nc4 = 0\n")), ParseError);
    CHECK_THROWS_AS(read_state(KeyValueFile::parse("rho11 = 1\n")), ParseError);
    CHECK_THROWS_AS(read_state(KeyValueFile::parse("")), ParseError);
  }

  TEST_CASE("unphysical states") {
    CHECK_THROWS_AS(read_state(KeyValueFile::parse("c1 = 1\nc2 = 1\nc3 = 1\n")), InvalidStateError);
    CHECK_THROWS_AS(read_state(KeyValueFile::parse("rho11 = 0.5\nrho22 = 0\nrho33 = 0\nrho44 = 0.4\n")),
                    InvalidStateError);
  }
}

TEST_SUITE("sweep configs") {
  TEST_CASE("dephasing defaults") {
    const auto c = read_dephasing_config(KeyValueFile::parse("c1 = 0.6\nc2 = -0.3\nc3 = 0.4\ns = 0.5\nlambda = 0.1\n"));
    CHECK(c.scenario.reservoir.omega == 1.0);
    CHECK(c.scenario.reservoir.zero_temperature());
    CHECK(c.scenario.v1 == 1.0);
    CHECK(c.t_max == kDefaultDephasingSpan);
    CHECK(c.n_steps == kDefaultSweepPoints);
  }

  TEST_CASE("dephasing range errors") {
    CHECK_THROWS_AS(read_dephasing_config(KeyValueFile::parse("c1 = 0.6\nc2 = -0.3\nc3 = 0.4\ns = -1\nlambda = 0.1\n")),
                    ValidationError);
    CHECK_THROWS_AS(read_dephasing_config(KeyValueFile::parse("c1 = 1\nc2 = 1\nc3 = 1\ns = 1\nlambda = 0.1\n")),
                    InvalidStateError);
  }

  TEST_CASE("radiative collective ratio or geometry") {
    const auto direct = read_radiative_config(KeyValueFile::parse("gamma_ratio = 0.5\n"));
    CHECK(direct.gamma_ratio == 0.5);
    CHECK_FALSE(direct.geometry.has_value());
    const auto geo = read_radiative_config(KeyValueFile::parse("k0r = 1\n"));
    REQUIRE(geo.geometry.has_value());
    CHECK(geo.gamma_ratio == doctest::Approx(radiative::coupling_gamma12({1.0, 0.0})));
    CHECK_THROWS_AS(read_radiative_config(KeyValueFile::parse("gamma_ratio = 0.5\nk0r = 1\n")), ParseError);
    CHECK_THROWS_AS(read_radiative_config(KeyValueFile::parse("gamma_ratio = 1.5\n")), ValidationError);
  }
}

TEST_SUITE("sweeps") {
  TEST_CASE("time grid") {
    CHECK(time_grid(5.0, 1) == std::vector<double>{0.0});
    const auto g = time_grid(2.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.back() == 2.0);
    CHECK(g[1] == 0.5);
  }

  TEST_CASE("single-row dephasing sweep") {
    DephasingSweepConfig c;
    c.scenario = {0.6, -0.3, 0.4, 1.0, 1.0, {1.0, 0.1}};
    c.n_steps = 1;
    const DephasingSweep s = run_dephasing_sweep(c);
    REQUIRE(s.trace.times.size() == 1);
    CHECK(to_csv(s) == "t,gamma_t,lqu,d_t,conc\n0,0," + format_number(s.trace.lqu[0]) + ",0.2," + format_number(s.trace.conc[0]) + "\n");
    CHECK(s.trace.features.empty());
  }

  TEST_CASE("zero-span radiative sweep") {
    RadiativeSweepConfig c;
    c.gamma_ratio = 0.5;
    c.tau_max = 0.0;
    c.n_steps = 1;
    const RadiativeSweep s = run_radiative_sweep(c);
    CHECK(to_csv(s) == "tau,a,b,c,lqu,d_t,conc\n0,1,0,0,0,0,0\n");
  }

  TEST_CASE("dephasing features") {
    DephasingSweepConfig c;
    c.scenario = {0.6, -0.3, 0.4, 1.0, 1.0, {0.5, 0.1, 1.0, 1.0}};
    const DephasingSweep s = run_dephasing_sweep(c);
    const auto freeze_end = analysis::first_event_time(s.trace.features, analysis::EventKind::kFreezeEnd,
                                                       analysis::Measure::kTraceDiscord);
    REQUIRE(freeze_end.has_value());
    CHECK(*freeze_end == doctest::Approx(1.0821).epsilon(0.03));
    const Json j = to_json(s);
    CHECK(j["scenario"]["regime"] == "sub-ohmic");
    CHECK(j["events"].is_array());
  }

  TEST_CASE("radiative features and delayed entanglement") {
    RadiativeSweepConfig c;
    c.gamma_ratio = 0.5;
    const RadiativeSweep s = run_radiative_sweep(c);
    const Json j = to_json(s);
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["name"] == "concurrence_birth_delayed");
    CHECK(j["checks"][0]["passed"] == true);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(std::stod(format_number(std::exp(-1.0))) == std::exp(-1.0));
  }
}

TEST_SUITE("verify checks") {
  TEST_CASE("fast checks pass") {
    CHECK(check_pure_states(50, 1).passed);
    CHECK(check_concurrence_reduction(50, 1).passed);
    CHECK(check_bell_diagonal(200, 1).passed);
    const Check c = check_lqu_battery(5, 2);
    CHECK(c.passed);
    CHECK(c.max_deviation < c.tolerance);
    const Json j = to_json(c);
    CHECK(j["name"] == c.name);
  }
}
