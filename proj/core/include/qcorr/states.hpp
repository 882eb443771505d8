#pragma once

// Two-qubit X states.
//
// Conventions used everywhere in the library: Pauli labels (sigma_1,
// sigma_2, sigma_3) = (x, y, z), sigma_0 = I, and the computational basis
// ordering |00>, |01>, |10>, |11>, so rho14 couples |00> and |11> and rho23
// couples |01> and |10>. Qubit 1 is the left tensor factor.

#include <array>
#include <complex>

#include "qcorr/numerics.hpp"

namespace qcorr {

/// Trace tolerance when validating states.
inline constexpr double kTraceTolerance = 1e-9;
/// Block-positivity tolerance when validating states.
inline constexpr double kPositivityTolerance = 1e-9;
/// Populations within this distance below zero are clamped to zero.
inline constexpr double kClampTolerance = 1e-12;

struct XState {
  double rho11 = 0.25;
  double rho22 = 0.25;
  double rho33 = 0.25;
  double rho44 = 0.25;
  cplx rho14{};
  cplx rho23{};

  static XState maximally_mixed() { return {}; }
  /// diag(p, 1-p) (x) diag(q, 1-q).
  static XState product(double p, double q);
  /// |psi> = a|00> + d|11> with |a|^2 + |d|^2 = 1.
  static XState pure_00_11(cplx a, cplx d);
  /// |psi> = b|01> + c|10> with |b|^2 + |c|^2 = 1.
  static XState pure_01_10(cplx b, cplx c);

  double trace() const { return rho11 + rho22 + rho33 + rho44; }
};

/// Embed as a full 4x4 density matrix.
numerics::CMatrix to_matrix(const XState& x);
/// Read the X entries of a 4x4 matrix; other entries are ignored.
XState from_matrix(const numerics::CMatrix& m);

/// Checks trace and 2x2 block positivity, clamping sub-tolerance negatives.
/// Throws InvalidStateError naming the violated invariant.
XState validate(XState x);

/// Bell-diagonal state (I(x)I + sum_i c_i sigma_i(x)sigma_i)/4.
XState from_bell_diagonal(double c1, double c2, double c3);

/// Real Fano-Bloch tensor T[a][b] = Tr(rho sigma_a (x) sigma_b), T[0][0] = 1.
struct FanoBloch {
  std::array<std::array<double, 4>, 4> T{};
};

FanoBloch to_fano_bloch(const XState& x);
/// Inverse of to_fano_bloch. Throws ShapeError when an entry outside the X
/// pattern (T00, T03, T30, T33, T11, T22, T12, T21) exceeds 1e-12.
XState from_fano_bloch(const FanoBloch& t);
/// Fano-Bloch coefficients of an arbitrary 4x4 operator.
FanoBloch fano_bloch_of(const numerics::CMatrix& m);

/// Correlation coefficients of the phase-canonical state, obtained by the
/// local unitary that makes rho14 and rho23 real and non-negative.
struct TildeR {
  double R11 = 0.0;
  double R22 = 0.0;
  double R33 = 0.0;
  double R03 = 0.0;
  double R30 = 0.0;
};

TildeR canonicalize(const XState& x);

/// Block traces/determinants and eigenvalues of an X state. Eigenvalues are
/// indexed as lambda1..lambda4 with lambda1, lambda4 from the {11,44} block
/// and lambda2, lambda3 from the {22,33} block.
struct XEigensystem {
  double t1 = 0.0, d1 = 0.0, t2 = 0.0, d2 = 0.0;
  std::array<double, 4> lambda{};
  std::array<double, 4> sqrt_lambda{};

  /// sqrt(t1 + 2 sqrt(d1)) = sqrt(lambda1) + sqrt(lambda4).
  double outer_block_root() const { return sqrt_lambda[0] + sqrt_lambda[3]; }
  /// sqrt(t2 + 2 sqrt(d2)) = sqrt(lambda2) + sqrt(lambda3).
  double inner_block_root() const { return sqrt_lambda[1] + sqrt_lambda[2]; }
};

XEigensystem x_eigensystem(const XState& x);

/// Fano-Bloch coefficients of sqrt(rho), normalised as
/// sqrt(rho) = (1/4) sum R_cd sigma_c (x) sigma_d.
struct SqrtFanoBloch {
  double R00 = 0.0, R03 = 0.0, R30 = 0.0, R11 = 0.0;
  double R12 = 0.0, R21 = 0.0, R22 = 0.0, R33 = 0.0;
};

struct SqrtXState {
  /// sqrt(rho) stored in X-state layout (it is itself of X shape, but its
  /// trace is not 1).
  XState root;
  SqrtFanoBloch coefficients;
};

/// Closed-form block square root. A block whose t + 2 sqrt(d) falls below
/// kDegenerateBlock is treated as the zero block.
SqrtXState sqrt_xstate(const XState& x);

inline constexpr double kDegenerateBlock = 1e-14;

}  // namespace qcorr
