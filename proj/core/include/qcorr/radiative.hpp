#pragma once

// Two two-level atoms decaying into a shared radiation field, starting from
// both atoms excited. Time is dimensionless, tau = Gamma t, with Gamma the
// single-atom decay rate; gamma_ratio is the collective damping Gamma12 / Gamma.
//
// Per-atom basis: |0> = excited, |1> = ground, so the two-atom state |e e>
// is |00> and the ground state is |11>.

#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/numerics.hpp"
#include "qcorr/states.hpp"

namespace qcorr::radiative {

struct AtomPairGeometry {
  double k0r = 1.0;          // wavenumber times separation
  double mu_dot_rhat = 0.0;  // cosine between dipole and separation axis
};

/// Gamma12 / Gamma.
double coupling_gamma12(const AtomPairGeometry& g);
/// Omega12 / Gamma (dipole-dipole shift).
double coupling_omega12(const AtomPairGeometry& g);

/// Below this |1 - gamma^2| the closed forms switch to their analytic limit.
inline constexpr double kCollectiveLimit = 1e-6;

/// Denominator used in b(tau), c(tau). kOneMinusGamma is kept only so tests
/// can show the master equation rejects it.
enum class Denominator { kOneMinusGammaSquared, kOneMinusGamma };

struct RadiativeState {
  double a = 1.0, b = 0.0, c = 0.0;
  double tau = 0.0;
  double gamma_ratio = 0.0;
};

RadiativeState abc(double tau, double gamma_ratio,
                   Denominator denominator = Denominator::kOneMinusGammaSquared);

/// diag(a, b, b, 1 - a - 2b) with rho23 = c. Throws ModelInconsistencyError
/// if the populations or the middle block are not positive.
XState to_xstate(const RadiativeState& r);
XState evolve(double tau, double gamma_ratio);

/// Trace discord of the evolved state, |c(tau)|.
double discord_radiative(double tau, double gamma_ratio);

/// W-matrix entries of the evolved state in terms of a, b, c.
WMatrix w_matrix_radiative(const RadiativeState& r);

struct MasterEquationParams {
  double gamma_ratio = 0.0;
  double omega12 = 0.0;  // in units of Gamma
  double omega0 = 0.0;   // in units of Gamma
};

/// d rho / d tau for the collective-decay master equation.
numerics::CMatrix master_equation_rhs(const numerics::CMatrix& rho, const MasterEquationParams& p);

struct DensitySample {
  double tau = 0.0;
  numerics::CMatrix rho;
};

/// RK4 integration of the master equation from rho0 on [0, tau_max].
std::vector<DensitySample> integrate_master_equation(const numerics::CMatrix& rho0,
                                                     const MasterEquationParams& p, double tau_max,
                                                     double dtau, int sample_every = 1);

/// |e e><e e|.
numerics::CMatrix both_excited();

}  // namespace qcorr::radiative
