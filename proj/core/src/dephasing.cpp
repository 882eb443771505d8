#include "qcorr/dephasing.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "qcorr/errors.hpp"
#include "qcorr/numerics.hpp"
#include "qcorr/special_functions.hpp"

namespace qcorr::dephasing {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kSubOhmic: return "sub-ohmic";
    case Regime::kOhmic: return "ohmic";
    case Regime::kSuperOhmic: return "super-ohmic";
  }
  return "unknown";
}

Regime ReservoirSpec::regime() const {
  if (s < 1.0) return Regime::kSubOhmic;
  if (s > 1.0) return Regime::kSuperOhmic;
  return Regime::kOhmic;
}

void validate(const ReservoirSpec& r) {
  std::ostringstream os;
  if (!(r.s > 0.0) || !std::isfinite(r.s)) os << "s must be positive (got " << r.s << ")";
  else if (!(r.lam >= 0.0) || !std::isfinite(r.lam)) os << "lambda must be non-negative (got " << r.lam << ")";
  else if (!(r.omega > 0.0) || !std::isfinite(r.omega)) os << "omega must be positive (got " << r.omega << ")";
  else if (!(r.beta > 0.0)) os << "beta must be positive or inf (got " << r.beta << ")";
  else return;
  throw ValidationError(os.str());
}

double spectral_density(const ReservoirSpec& r, double w) {
  if (w <= 0.0) return 0.0;
  return r.lam * std::pow(r.omega, 1.0 - r.s) * std::pow(w, r.s) * std::exp(-w / r.omega);
}

double gamma_integral(const ReservoirSpec& r, double t, double rel_tol) {
  validate(r);
  if (t == 0.0 || r.lam == 0.0) return 0.0;
  const double x = r.omega * t;
  const double b = r.omega * r.beta;
  const bool cold = r.zero_temperature();

  // In v = w / Omega the integrand is 4 lam e^{-v} (sin(x v / 2) / v)^2 P(v)
  // with P = v^s coth(b v / 2); the substitution v = u^2 tames the v^{s-1}
  // behaviour of the thermal factor at the origin.
  auto integrand = [=](double u) {
    const double v = u * u;
    if (v == 0.0) return 0.0;
    const double half = 0.5 * x * v;
    const double sinc = half < 1e-8 ? 0.5 * x : std::sin(half) / v;
    double p;
    if (cold) {
      p = std::pow(v, r.s);
    } else {
      const double h = 0.5 * b * v;
      const double h_coth = h < 1e-8 ? 1.0 : h / std::tanh(h);
      p = std::pow(v, r.s - 1.0) * (2.0 / b) * h_coth;
    }
    return 4.0 * r.lam * std::exp(-v) * sinc * sinc * p * 2.0 * u;
  };
  numerics::SemiInfiniteOptions opts;
  opts.rel_tol = rel_tol;
  opts.first_panel = std::sqrt(40.0 + r.s);
  // About 3.3 x oscillations fall inside the first panel.
  opts.max_intervals_per_panel = 4000 + int(std::min(50.0 * x, 1e6));
  return numerics::integrate_semiinfinite(integrand, rel_tol, opts).value;
}

namespace {

// 1 - Re (1 + i y)^{1-s}, evaluated without cancellation at small y.
double decay_kernel(double y, double s) {
  const double zr = (1.0 - s) * 0.5 * std::log1p(y * y);
  const double zi = (1.0 - s) * std::atan(y);
  const double half = std::sin(0.5 * zi);
  return -std::expm1(zr) * std::cos(zi) + 2.0 * half * half;
}

// Same with the rejected (1 - y^2) factor; NaN where that is complex.
double decay_kernel_rejected(double y, double s) {
  const double base = 1.0 - y * y;
  if (base < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 1.0 - std::pow(base, 0.5 * (1.0 - s)) * std::cos((s - 1.0) * std::atan(y));
}

// Thermal sums decay like m^{-1-s}.
numerics::SeriesResult thermal_sum(const std::function<double(double)>& term, double s) {
  return numerics::sum_series_algebraic(term, 1.0 + s);
}

}  // namespace

GammaValue gamma_closed_checked(const ReservoirSpec& r, double t, SubOhmicForm form) {
  validate(r);
  GammaValue out;
  if (t == 0.0 || r.lam == 0.0) return out;
  const double x = r.omega * t;
  const double b = r.omega * r.beta;
  const double s = r.s;

  if (r.regime() == Regime::kOhmic) {
    out.value = r.lam * std::log1p(x * x);
    if (!r.zero_temperature()) {
      const double shift = 1.0 + 1.0 / b;
      out.value += r.lam * (4.0 * std::lgamma(shift) - 2.0 * special::log_abs_gamma_sq(shift, x / b));
    }
    return out;
  }

  const double prefactor = 2.0 * r.lam * std::tgamma(s - 1.0);
  const bool rejected = form == SubOhmicForm::kOneMinusSquare && r.regime() == Regime::kSubOhmic;
  out.value = prefactor * (rejected ? decay_kernel_rejected(x, s) : decay_kernel(x, s));
  if (!r.zero_temperature()) {
    const auto sum = thermal_sum(
        [=](double m) {
          const double scale = 1.0 + m * b;
          return std::pow(scale, 1.0 - s) * decay_kernel(x / scale, s);
        },
        s);
    out.value += 2.0 * prefactor * sum.value;
    out.series_converged = sum.converged;
  }
  return out;
}

double gamma_closed(const ReservoirSpec& r, double t) { return gamma_closed_checked(r, t).value; }

double gamma_zero_temperature_limit(const ReservoirSpec& r) {
  validate(r);
  if (r.s <= 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * r.lam * std::tgamma(r.s - 1.0);
}

double gamma_rate(const ReservoirSpec& r, double t) {
  validate(r);
  if (t == 0.0 || r.lam == 0.0) return 0.0;
  const double x = r.omega * t;
  const double b = r.omega * r.beta;
  const double s = r.s;
  const double prefactor = 2.0 * r.lam * r.omega * std::tgamma(s);

  double rate = std::pow(1.0 + x * x, -0.5 * s) * std::sin(s * std::atan(x));
  if (!r.zero_temperature()) {
    const auto sum = thermal_sum(
        [=](double m) {
          const double scale = 1.0 + m * b;
          return std::pow(scale * scale + x * x, -0.5 * s) * std::sin(s * std::atan(x / scale));
        },
        s);
    rate += 2.0 * sum.value;
  }
  return prefactor * rate;
}

XState evolve_with_gamma(const DephasingScenario& sc, double t, double gamma_t) {
  XState x = from_bell_diagonal(sc.c1, sc.c2, sc.c3);
  const double damp = std::exp(-gamma_t);
  x.rho14 *= std::polar(damp, -(sc.v1 + sc.v2) * t);
  x.rho23 *= std::polar(damp, (sc.v2 - sc.v1) * t);
  return x;
}

XState evolve(const DephasingScenario& sc, double t) {
  return evolve_with_gamma(sc, t, gamma_closed(sc.reservoir, t));
}

std::string_view to_string(DiscordBranch b) {
  switch (b) {
    case DiscordBranch::kDecayingLeading: return "decaying_leading";
    case DiscordBranch::kFrozen: return "frozen";
    case DiscordBranch::kDecayingSubleading: return "decaying_subleading";
    case DiscordBranch::kVanishing: return "vanishing";
  }
  return "unknown";
}

DephasingDiscord trace_discord_dephasing_cases(double c1, double c2, double c3, double gamma_t) {
  validate(from_bell_diagonal(c1, c2, c3));
  const double damp = std::exp(-gamma_t);
  const double hi = std::max(std::abs(c1), std::abs(c2)) * damp;
  const double lo = std::min(std::abs(c1), std::abs(c2)) * damp;
  const double z = std::abs(c3);

  DephasingDiscord out;
  if (z >= hi) out = {0.5 * hi, DiscordBranch::kDecayingLeading};
  else if (z >= lo) out = {0.5 * z, DiscordBranch::kFrozen};
  else out = {0.5 * lo, DiscordBranch::kDecayingSubleading};
  if (out.value == 0.0) out.branch = DiscordBranch::kVanishing;
  return out;
}

}  // namespace qcorr::dephasing
