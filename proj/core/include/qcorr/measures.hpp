#pragma once

// Correlation quantifiers for two-qubit X states: local quantum uncertainty,
// trace-distance discord and concurrence.

#include <array>

#include "qcorr/states.hpp"

namespace qcorr {

/// The symmetric 3x3 matrix whose largest eigenvalue gives LQU. For X states
/// only w11, w22, w33 and w12 = w21 can be nonzero.
struct WMatrix {
  double w11 = 0.0;
  double w22 = 0.0;
  double w33 = 0.0;
  double w12 = 0.0;

  /// Eigenvalues of the (1,2) block followed by w33, block values descending.
  std::array<double, 3> eigenvalues() const;
  double max_eigenvalue() const;
  /// 1 - n^T W n for a unit vector n.
  double quadratic_form(const std::array<double, 3>& n) const;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// W from the closed forms in the Fano-Bloch tensor and sqrt eigenvalues.
WMatrix w_matrix(const XState& x);

/// Full 3x3 W evaluated as Tr{sqrt(rho) s_i (x) I sqrt(rho) s_j (x) I}.
Matrix3 w_matrix_direct(const XState& x);

double lqu(const XState& x);

double trace_discord(const XState& x);

/// Half the median of |c1|, |c2|, |c3|. Throws InvalidStateError for an
/// unphysical triple.
double trace_discord_bell_diagonal(double c1, double c2, double c3);

/// Wootters concurrence from the singular values of sqrt(rho) sqrt(rho~).
double concurrence(const XState& x);

/// max{0, 2(|rho14| - sqrt(rho22 rho33)), 2(|rho23| - sqrt(rho11 rho44))}.
double concurrence_x(const XState& x);

struct MeasureSet {
  double lqu = 0.0;
  double trace_discord = 0.0;
  double concurrence = 0.0;
};

MeasureSet measure_set(const XState& x);

/// LQU of the dephased Bell-diagonal state with coherences damped by
/// e^{-gamma_t}. Requires |c2| <= |c1| (throws PreconditionError otherwise).
double lqu_dephasing_closed_form(double c1, double c2, double c3, double gamma_t);

}  // namespace qcorr
