#pragma once

// Two qubits coupled to independent, identical bosonic dephasing reservoirs
// with spectral density J(w) = lambda Omega^{1-s} w^s exp(-w / Omega).
// Times are in the same units as 1/Omega; beta = +inf means zero temperature.

#include <limits>
#include <string_view>

#include "qcorr/states.hpp"

namespace qcorr::dephasing {

enum class Regime { kSubOhmic, kOhmic, kSuperOhmic };

std::string_view to_string(Regime r);

struct ReservoirSpec {
  double s = 1.0;
  double lam = 0.1;
  double omega = 1.0;
  double beta = std::numeric_limits<double>::infinity();

  Regime regime() const;
  bool zero_temperature() const { return beta == std::numeric_limits<double>::infinity(); }
};

/// Throws ValidationError unless s > 0, lam >= 0, omega > 0 and beta > 0.
void validate(const ReservoirSpec& r);

struct DephasingScenario {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double v1 = 1.0, v2 = 1.0;
  ReservoirSpec reservoir;
};

double spectral_density(const ReservoirSpec& r, double w);

/// Dephasing exponent by direct quadrature of its defining integral.
/// Throws QuadratureError (with the best estimate) on non-convergence.
double gamma_integral(const ReservoirSpec& r, double t, double rel_tol = 1e-8);

/// Which algebraic factor the leading sub-Ohmic term uses. kOneMinusSquare
/// is an algebraically wrong alternative kept only for comparison; it is NaN
/// once Omega t exceeds 1.
enum class SubOhmicForm { kOnePlusSquare, kOneMinusSquare };

struct GammaValue {
  double value = 0.0;
  bool series_converged = true;
};

/// Regime-specific closed form with thermal series.
GammaValue gamma_closed_checked(const ReservoirSpec& r, double t,
                                SubOhmicForm form = SubOhmicForm::kOnePlusSquare);
double gamma_closed(const ReservoirSpec& r, double t);

/// Long-time limit of gamma at zero temperature: finite only for s > 1.
double gamma_zero_temperature_limit(const ReservoirSpec& r);

/// d gamma / dt from the closed forms.
double gamma_rate(const ReservoirSpec& r, double t);

/// State at time t for a given value of gamma(t).
XState evolve_with_gamma(const DephasingScenario& sc, double t, double gamma_t);
/// State at time t with gamma(t) from the closed form.
XState evolve(const DephasingScenario& sc, double t);

enum class DiscordBranch { kDecayingLeading, kFrozen, kDecayingSubleading, kVanishing };

std::string_view to_string(DiscordBranch b);

struct DephasingDiscord {
  double value = 0.0;
  DiscordBranch branch = DiscordBranch::kVanishing;
};

/// Trace discord of the dephased Bell-diagonal state: half the median of
/// |c3| and the damped |c1|, |c2|, labelled by which one is active.
DephasingDiscord trace_discord_dephasing_cases(double c1, double c2, double c3, double gamma_t);

}  // namespace qcorr::dephasing
