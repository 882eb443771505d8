#include "qcorr/radiative.hpp"

#include <cmath>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr::radiative {

using numerics::CMatrix;

namespace {

// cos(x)/x^2 - sin(x)/x^3, by its Taylor series where the two terms cancel.
double near_field(double x) {
  if (x >= 0.1) return std::cos(x) / (x * x) - std::sin(x) / (x * x * x);
  const double x2 = x * x;
  double term_factor = 1.0;  // x^{2n-2} / (2n+1)!
  double fact = 6.0;         // (2n+1)! for n = 1
  double sum = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const double sign = (n % 2 == 1) ? -1.0 : 1.0;
    sum += sign * 2.0 * n * term_factor / fact;
    term_factor *= x2;
    fact *= double(2 * n + 2) * double(2 * n + 3);
  }
  return sum;
}

void require_positive_separation(const AtomPairGeometry& g) {
  if (!(g.k0r > 0.0)) throw ValidationError("k0r must be positive");
  if (!(std::abs(g.mu_dot_rhat) <= 1.0)) throw ValidationError("mu_dot_rhat must lie in [-1, 1]");
}

}  // namespace

double coupling_gamma12(const AtomPairGeometry& g) {
  require_positive_separation(g);
  const double x = g.k0r;
  const double m2 = g.mu_dot_rhat * g.mu_dot_rhat;
  const double sinc = x < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return 1.5 * ((1.0 - m2) * sinc + (1.0 - 3.0 * m2) * near_field(x));
}

double coupling_omega12(const AtomPairGeometry& g) {
  require_positive_separation(g);
  const double x = g.k0r;
  const double m2 = g.mu_dot_rhat * g.mu_dot_rhat;
  return 0.75 * (-(1.0 - m2) * std::cos(x) / x +
                 (1.0 - 3.0 * m2) * (std::sin(x) / (x * x) + std::cos(x) / (x * x * x)));
}

namespace {

// expm1(z) / z with its limit 1 at z = 0.
double expm1_ratio(double z) { return std::abs(z) < 1e-300 ? 1.0 : std::expm1(z) / z; }

}  // namespace

RadiativeState abc(double tau, double gamma_ratio, Denominator denominator) {
  if (!(tau >= 0.0)) throw ValidationError("tau must be non-negative");
  if (!(std::abs(gamma_ratio) <= 1.0)) throw ValidationError("gamma_ratio must lie in [-1, 1]");

  RadiativeState r;
  r.tau = tau;
  r.gamma_ratio = gamma_ratio;
  r.a = std::exp(-2.0 * tau);

  const double decay = tau * r.a;
  if (std::abs(1.0 - gamma_ratio * gamma_ratio) < kCollectiveLimit) {
    r.b = decay;
    r.c = gamma_ratio > 0.0 ? decay : -decay;
  } else {
    // Populations of the symmetric and antisymmetric one-excitation states,
    // written so that neither side of the limit loses precision.
    const double eps = 1.0 - gamma_ratio, del = 1.0 + gamma_ratio;
    const double symmetric = del * decay * expm1_ratio(eps * tau);
    const double antisymmetric = eps * decay * expm1_ratio(del * tau);
    r.b = 0.5 * (symmetric + antisymmetric);
    r.c = 0.5 * (symmetric - antisymmetric);
  }
  if (denominator == Denominator::kOneMinusGamma) {
    r.b *= 1.0 + gamma_ratio;
    r.c *= 1.0 + gamma_ratio;
  }
  return r;
}

XState to_xstate(const RadiativeState& r) {
  const double ground = 1.0 - r.a - 2.0 * r.b;
  if (ground < -1e-12 || r.b < std::abs(r.c) - 1e-12 || r.a < 0.0) {
    std::ostringstream os;
    os << "radiative state is not positive at tau = " << r.tau << " (a = " << r.a << ", b = " << r.b
       << ", c = " << r.c << ")";
    throw ModelInconsistencyError(os.str());
  }
  XState x;
  x.rho11 = r.a;
  x.rho22 = r.b;
  x.rho33 = r.b;
  x.rho44 = std::max(0.0, ground);
  x.rho14 = 0.0;
  x.rho23 = r.c;
  return x;
}

XState evolve(double tau, double gamma_ratio) { return to_xstate(abc(tau, gamma_ratio)); }

double discord_radiative(double tau, double gamma_ratio) {
  return std::abs(abc(tau, gamma_ratio).c);
}

WMatrix w_matrix_radiative(const RadiativeState& r) {
  const double ground = std::max(0.0, 1.0 - r.a - 2.0 * r.b);
  const double spread = std::sqrt(std::max(0.0, r.b * r.b - r.c * r.c));
  WMatrix w;
  w.w11 = (std::sqrt(std::max(0.0, r.b + r.c)) + std::sqrt(std::max(0.0, r.b - r.c))) *
          (std::sqrt(r.a) + std::sqrt(ground));
  w.w22 = w.w11;
  w.w33 = 1.0 - 2.0 * r.b + 2.0 * spread;
  return w;
}

namespace {

struct Operators {
  std::array<CMatrix, 2> lower;  // S_i^-
  std::array<CMatrix, 2> raise;  // S_i^+
  std::array<CMatrix, 2> z;      // S_i^z
};

const Operators& operators() {
  static const Operators ops = [] {
    const CMatrix id = CMatrix::identity(2);
    const CMatrix sigma_minus(2, {0.0, 0.0, 1.0, 0.0});  // |1><0|
    Operators o;
    o.lower = {numerics::kron(sigma_minus, id), numerics::kron(id, sigma_minus)};
    for (int i = 0; i < 2; ++i) {
      o.raise[i] = o.lower[i].adjoint();
    }
    o.z = {numerics::kron(numerics::pauli(3), id), numerics::kron(id, numerics::pauli(3))};
    return o;
  }();
  return ops;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

}  // namespace

CMatrix master_equation_rhs(const CMatrix& rho, const MasterEquationParams& p) {
  const Operators& ops = operators();
  CMatrix out(4);
  if (p.omega0 != 0.0) {
    for (int i = 0; i < 2; ++i) out -= commutator(ops.z[i], rho) * cplx(0.0, p.omega0);
  }
  if (p.omega12 != 0.0) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (i != j) out -= commutator(ops.raise[i] * ops.lower[j], rho) * cplx(0.0, p.omega12);
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double rate = i == j ? 1.0 : p.gamma_ratio;
      if (rate == 0.0) continue;
      const CMatrix hop = ops.raise[i] * ops.lower[j];
      CMatrix term = rho * hop + hop * rho - ops.lower[j] * rho * ops.raise[i] * cplx(2.0);
      out -= term * cplx(0.5 * rate);
    }
  }
  return out;
}

namespace {

numerics::OdeState flatten(const CMatrix& m) {
  numerics::OdeState y(32);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      y[2 * (4 * i + j)] = m(i, j).real();
      y[2 * (4 * i + j) + 1] = m(i, j).imag();
    }
  return y;
}

CMatrix unflatten(const numerics::OdeState& y) {
  CMatrix m(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cplx(y[2 * (4 * i + j)], y[2 * (4 * i + j) + 1]);
  return m;
}

}  // namespace

std::vector<DensitySample> integrate_master_equation(const CMatrix& rho0, const MasterEquationParams& p,
                                                     double tau_max, double dtau, int sample_every) {
  auto deriv = [&p](double, const numerics::OdeState& y) {
    return flatten(master_equation_rhs(unflatten(y), p));
  };
  const auto samples = numerics::ode_rk4(deriv, flatten(rho0), 0.0, tau_max, dtau, sample_every);
  std::vector<DensitySample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back({s.t, unflatten(s.y)});
  return out;
}

CMatrix both_excited() {
  CMatrix m(4);
  m(0, 0) = 1.0;
  return m;
}

}  // namespace qcorr::radiative
