#include "qcorr/measures.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr {

using numerics::CMatrix;

std::array<double, 3> WMatrix::eigenvalues() const {
  const double mean = 0.5 * (w11 + w22);
  const double half_gap = std::hypot(0.5 * (w11 - w22), w12);
  return {mean + half_gap, mean - half_gap, w33};
}

double WMatrix::max_eigenvalue() const {
  const auto ev = eigenvalues();
  return std::max(ev[0], ev[2]);
}

double WMatrix::quadratic_form(const std::array<double, 3>& n) const {
  return 1.0 - (w11 * n[0] * n[0] + w22 * n[1] * n[1] + w33 * n[2] * n[2] +
                2.0 * w12 * n[0] * n[1]);
}

namespace {

double sq(double v) { return v * v; }

// Blocks whose root falls below this are the zero block; the fractions
// multiplying their inverse vanish in the limit.
constexpr double kDegenerateRoot = 1e-7;

}  // namespace

WMatrix w_matrix(const XState& x) {
  const XEigensystem e = x_eigensystem(x);
  const auto& T = to_fano_bloch(x).T;
  const double a = e.outer_block_root();
  const double b = e.inner_block_root();
  const bool outer_zero = a < kDegenerateRoot;
  const bool inner_zero = b < kDegenerateRoot;
  const double ab = a * b;
  const double inv_ab = (outer_zero || inner_zero) ? 0.0 : 1.0 / ab;

  const double transverse = (sq(T[1][1]) - sq(T[2][2])) + (sq(T[1][2]) - sq(T[2][1]));
  const double longitudinal = sq(T[0][3]) - sq(T[3][0]);
  WMatrix w;
  w.w11 = 0.25 * (4.0 * ab + (transverse + longitudinal) * inv_ab);
  w.w22 = 0.25 * (4.0 * ab + (longitudinal - transverse) * inv_ab);
  w.w12 = 0.5 * (T[1][1] * T[2][1] + T[2][2] * T[1][2]) * inv_ab;

  const double outer_num = sq(T[3][0] + T[0][3]) - sq(T[1][1] - T[2][2]) - sq(T[1][2] + T[2][1]);
  const double inner_num = sq(T[0][3] - T[3][0]) - sq(T[1][1] + T[2][2]) - sq(T[1][2] - T[2][1]);
  w.w33 = 0.5 * (a * a + b * b) + 0.125 * (outer_zero ? 0.0 : outer_num / (a * a)) +
          0.125 * (inner_zero ? 0.0 : inner_num / (b * b));
  return w;
}

Matrix3 w_matrix_direct(const XState& x) {
  const CMatrix root = to_matrix(sqrt_xstate(x).root);
  const CMatrix id = CMatrix::identity(2);
  std::array<CMatrix, 3> left;
  for (int i = 0; i < 3; ++i) left[i] = root * numerics::kron(numerics::pauli(i + 1), id);
  Matrix3 w{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w[i][j] = (left[i] * left[j]).trace().real();
  return w;
}

double lqu(const XState& x) {
  const WMatrix w = w_matrix(x);
#ifndef NDEBUG
  {
    const Matrix3 direct = w_matrix_direct(x);
    CMatrix m(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = direct[i][j];
    const auto e = numerics::eig_hermitian(m);
    assert(std::abs(e.eigenvalues[2] - w.max_eigenvalue()) < 1e-8);
  }
#endif
  return std::clamp(1.0 - w.max_eigenvalue(), 0.0, 1.0);
}

namespace {

// |a|^2 - |b|^2 as a product so that near-equal magnitudes do not cancel.
double diff_sq(double a, double b) {
  a = std::abs(a);
  b = std::abs(b);
  return (a - b) * (a + b);
}

}  // namespace

double trace_discord(const XState& x) {
  const TildeR r = canonicalize(x);
  const double r11 = r.R11, r22 = r.R22, r33 = r.R33, r30 = r.R30;

  // Every bracket below is non-negative by the choice of branch, so the
  // radicand is assembled from non-negative pieces.
  const bool max_is_r33 = sq(r33) >= sq(r22) + sq(r30);
  const bool min_is_r11 = sq(r11) <= sq(r33);
  const double max_sq = max_is_r33 ? sq(r33) : sq(r22) + sq(r30);
  const double min_sq = min_is_r11 ? sq(r11) : sq(r33);
  const double max_minus_r22 = max_is_r33 ? std::max(0.0, diff_sq(r33, r22)) : sq(r30);
  const double r11_minus_min = min_is_r11 ? 0.0 : std::max(0.0, diff_sq(r11, r33));
  const double r11_minus_r22 = std::max(0.0, diff_sq(r11, r22));
  double max_minus_min;
  if (max_is_r33)
    max_minus_min = min_is_r11 ? std::max(0.0, diff_sq(r33, r11)) : 0.0;
  else
    max_minus_min = min_is_r11 ? std::max(0.0, max_sq - min_sq) : std::max(0.0, sq(r30) + diff_sq(r22, r33));

  const double num = sq(r11) * max_minus_r22 + sq(r22) * r11_minus_min;
  const double den = max_minus_min + r11_minus_r22;
  if (den <= 0.0) return 0.5 * r11;
  return 0.5 * std::sqrt(std::max(0.0, num / den));
}

double trace_discord_bell_diagonal(double c1, double c2, double c3) {
  validate(from_bell_diagonal(c1, c2, c3));
  std::array<double, 3> a = {std::abs(c1), std::abs(c2), std::abs(c3)};
  std::sort(a.begin(), a.end());
  return 0.5 * a[1];
}

double concurrence(const XState& x) {
  const CMatrix root = to_matrix(sqrt_xstate(x).root);
  const CMatrix flip = numerics::kron(numerics::pauli(2), numerics::pauli(2));
  CMatrix root_conj(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) root_conj(i, j) = std::conj(root(i, j));
  const CMatrix root_tilde = flip * root_conj * flip;
  const auto sv = numerics::singular_values(root * root_tilde);
  return std::max(0.0, sv[0] - sv[1] - sv[2] - sv[3]);
}

double concurrence_x(const XState& x) {
  const double outer = std::abs(x.rho14) - std::sqrt(x.rho22 * x.rho33);
  const double inner = std::abs(x.rho23) - std::sqrt(x.rho11 * x.rho44);
  return std::max({0.0, 2.0 * outer, 2.0 * inner});
}

MeasureSet measure_set(const XState& x) {
  return {lqu(x), trace_discord(x), concurrence(x)};
}

double lqu_dephasing_closed_form(double c1, double c2, double c3, double gamma_t) {
  if (std::abs(c2) > std::abs(c1)) {
    throw PreconditionError("closed-form dephasing LQU needs |c2| <= |c1|; use lqu() instead");
  }
  validate(from_bell_diagonal(c1, c2, c3));

  const double damp = std::exp(-2.0 * gamma_t);
  const double cm = c1 - c2, cp = c1 + c2;
  const double c3p = 1.0 + c3, c3m = 1.0 - c3;
  const double s1 = std::sqrt(std::max(0.0, c3p * c3p - cm * cm * damp));
  const double s2 = std::sqrt(std::max(0.0, c3m * c3m - cp * cp * damp));
  const double f1 = c3p + s1, f2 = c3m + s2;
  const double p = f1 * f2;

  const double lambda1 = 0.5 * std::sqrt(p) + (p > 1e-28 ? cm * cp * damp / (2.0 * std::sqrt(p)) : 0.0);
  const double lambda3 = 0.25 * (2.0 + s1 + s2) - (f1 > 1e-14 ? cm * cm * damp / (4.0 * f1) : 0.0) -
                         (f2 > 1e-14 ? cp * cp * damp / (4.0 * f2) : 0.0);
  return std::clamp(1.0 - std::max(lambda1, lambda3), 0.0, 1.0);
}

}  // namespace qcorr
