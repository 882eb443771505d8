#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

using numerics::CMatrix;

XState XState::product(double p, double q) {
  XState x;
  x.rho11 = p * q;
  x.rho22 = p * (1.0 - q);
  x.rho33 = (1.0 - p) * q;
  x.rho44 = (1.0 - p) * (1.0 - q);
  return x;
}

XState XState::pure_00_11(cplx a, cplx d) {
  XState x;
  x.rho11 = std::norm(a);
  x.rho22 = 0.0;
  x.rho33 = 0.0;
  x.rho44 = std::norm(d);
  x.rho14 = a * std::conj(d);
  return x;
}

XState XState::pure_01_10(cplx b, cplx c) {
  XState x;
  x.rho11 = 0.0;
  x.rho22 = std::norm(b);
  x.rho33 = std::norm(c);
  x.rho44 = 0.0;
  x.rho23 = b * std::conj(c);
  return x;
}

CMatrix to_matrix(const XState& x) {
  CMatrix m(4);
  m(0, 0) = x.rho11;
  m(1, 1) = x.rho22;
  m(2, 2) = x.rho33;
  m(3, 3) = x.rho44;
  m(0, 3) = x.rho14;
  m(3, 0) = std::conj(x.rho14);
  m(1, 2) = x.rho23;
  m(2, 1) = std::conj(x.rho23);
  return m;
}

XState from_matrix(const CMatrix& m) {
  XState x;
  x.rho11 = m(0, 0).real();
  x.rho22 = m(1, 1).real();
  x.rho33 = m(2, 2).real();
  x.rho44 = m(3, 3).real();
  x.rho14 = m(0, 3);
  x.rho23 = m(1, 2);
  return x;
}

namespace {

[[noreturn]] void fail(const std::string& invariant, const std::string& detail) {
  throw InvalidStateError(invariant, detail);
}

void clamp_coherence(cplx& coherence, double pa, double pb, const char* name) {
  const double bound = pa * pb;
  const double excess = std::norm(coherence) - bound;
  if (excess > kPositivityTolerance) {
    std::ostringstream os;
    os << "|" << name << "|^2 = " << std::norm(coherence) << " exceeds the product of populations "
       << bound;
    fail(std::string("positivity") + (name + 3), os.str());
  }
  if (excess > 0.0) {
    const double r = std::abs(coherence);
    coherence = r > 0.0 ? coherence * (std::sqrt(bound) / r) : cplx{};
  }
}

}  // namespace

XState validate(XState x) {
  const double values[] = {x.rho11, x.rho22, x.rho33, x.rho44, x.rho14.real(), x.rho14.imag(),
                           x.rho23.real(), x.rho23.imag()};
  for (double v : values)
    if (!std::isfinite(v)) fail("finite", "state has a non-finite entry");

  double* pops[] = {&x.rho11, &x.rho22, &x.rho33, &x.rho44};
  for (int i = 0; i < 4; ++i) {
    if (*pops[i] < -kPositivityTolerance) {
      std::ostringstream os;
      os << "rho" << i + 1 << i + 1 << " = " << *pops[i] << " is negative";
      fail("population", os.str());
    }
    *pops[i] = std::max(0.0, *pops[i]);
  }
  const double tr = x.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "trace is " << tr << ", expected 1";
    fail("trace", os.str());
  }
  clamp_coherence(x.rho14, x.rho11, x.rho44, "rho14");
  clamp_coherence(x.rho23, x.rho22, x.rho33, "rho23");
  return x;
}

XState from_bell_diagonal(double c1, double c2, double c3) {
  XState x;
  x.rho11 = x.rho44 = (1.0 + c3) / 4.0;
  x.rho22 = x.rho33 = (1.0 - c3) / 4.0;
  x.rho14 = (c1 - c2) / 4.0;
  x.rho23 = (c1 + c2) / 4.0;
  return validate(x);
}

FanoBloch fano_bloch_of(const CMatrix& m) {
  FanoBloch out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out.T[a][b] = (m * numerics::kron(numerics::pauli(a), numerics::pauli(b))).trace().real();
  return out;
}

FanoBloch to_fano_bloch(const XState& x) {
  FanoBloch f = fano_bloch_of(to_matrix(x));
  f.T[0][0] = 1.0;
  return f;
}

XState from_fano_bloch(const FanoBloch& f) {
  static constexpr std::pair<int, int> kNonX[] = {{0, 1}, {0, 2}, {1, 0}, {2, 0},
                                                  {1, 3}, {3, 1}, {2, 3}, {3, 2}};
  for (auto [a, b] : kNonX) {
    if (std::abs(f.T[a][b]) > 1e-12) {
      std::ostringstream os;
      os << "T[" << a << "][" << b << "] = " << f.T[a][b] << " is not an X-state entry";
      throw ShapeError(os.str());
    }
  }
  if (std::abs(f.T[0][0] - 1.0) > 1e-12) throw ShapeError("T[0][0] must equal 1");

  CMatrix m(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (f.T[a][b] != 0.0)
        m += numerics::kron(numerics::pauli(a), numerics::pauli(b)) * cplx(f.T[a][b] / 4.0);
  return validate(from_matrix(m));
}

TildeR canonicalize(const XState& x) {
  const double a14 = std::abs(x.rho14);
  const double a23 = std::abs(x.rho23);
  TildeR r;
  r.R11 = 2.0 * (a23 + a14);
  r.R22 = 2.0 * (a23 - a14);
  r.R33 = 1.0 - 2.0 * (x.rho22 + x.rho33);
  r.R03 = 2.0 * (x.rho11 + x.rho33) - 1.0;
  r.R30 = 2.0 * (x.rho11 + x.rho22) - 1.0;
  return r;
}

namespace {

// Block determinant p*q - |c|^2. Results at the rounding level of the two
// products are indistinguishable from zero and are snapped there, so pure
// states keep an exactly singular block.
double block_determinant(double p, double q, cplx c) {
  const double prod = p * q;
  const double coh = std::norm(c);
  const double d = prod - coh;
  if (std::abs(d) <= 8.0 * std::numeric_limits<double>::epsilon() * (prod + coh)) return 0.0;
  if (d < 0.0 && d >= -kClampTolerance) return 0.0;
  return d;
}

struct BlockSpectrum {
  double large = 0.0, small = 0.0, sqrt_large = 0.0, sqrt_small = 0.0;
};

BlockSpectrum block_spectrum(double p, double q, cplx c, double t, double d) {
  BlockSpectrum b;
  const double diff = p - q;
  const double r = std::sqrt(diff * diff + 4.0 * std::norm(c));
  b.large = 0.5 * (t + r);
  b.small = b.large > 0.0 ? std::max(0.0, d / b.large) : 0.0;
  b.sqrt_large = std::sqrt(b.large);
  b.sqrt_small = std::sqrt(b.small);
  return b;
}

}  // namespace

XEigensystem x_eigensystem(const XState& x) {
  XEigensystem e;
  e.t1 = x.rho11 + x.rho44;
  e.d1 = block_determinant(x.rho11, x.rho44, x.rho14);
  e.t2 = x.rho22 + x.rho33;
  e.d2 = block_determinant(x.rho22, x.rho33, x.rho23);
  if (e.d1 < 0.0 || e.d2 < 0.0) {
    throw InvalidStateError("positivity", "X-state block has a negative eigenvalue");
  }
  const BlockSpectrum outer = block_spectrum(x.rho11, x.rho44, x.rho14, e.t1, e.d1);
  const BlockSpectrum inner = block_spectrum(x.rho22, x.rho33, x.rho23, e.t2, e.d2);
  e.lambda = {outer.large, inner.large, inner.small, outer.small};
  e.sqrt_lambda = {outer.sqrt_large, inner.sqrt_large, inner.sqrt_small, outer.sqrt_small};
  return e;
}

SqrtXState sqrt_xstate(const XState& x) {
  const XEigensystem e = x_eigensystem(x);
  const double a2 = e.outer_block_root() * e.outer_block_root();
  const double b2 = e.inner_block_root() * e.inner_block_root();
  const bool outer_zero = a2 < kDegenerateBlock;
  const bool inner_zero = b2 < kDegenerateBlock;
  const double inv_a = outer_zero ? 0.0 : 1.0 / std::sqrt(a2);
  const double inv_b = inner_zero ? 0.0 : 1.0 / std::sqrt(b2);

  SqrtXState out;
  XState& r = out.root;
  r.rho11 = (x.rho11 + (e.sqrt_lambda[0] * e.sqrt_lambda[3])) * inv_a;
  r.rho44 = (x.rho44 + (e.sqrt_lambda[0] * e.sqrt_lambda[3])) * inv_a;
  r.rho14 = x.rho14 * inv_a;
  r.rho22 = (x.rho22 + (e.sqrt_lambda[1] * e.sqrt_lambda[2])) * inv_b;
  r.rho33 = (x.rho33 + (e.sqrt_lambda[1] * e.sqrt_lambda[2])) * inv_b;
  r.rho23 = x.rho23 * inv_b;

  const FanoBloch f = to_fano_bloch(x);
  const auto& T = f.T;
  const double a = outer_zero ? 0.0 : std::sqrt(a2);
  const double b = inner_zero ? 0.0 : std::sqrt(b2);
  SqrtFanoBloch& R = out.coefficients;
  R.R00 = a + b;
  R.R03 = 0.5 * (T[3][0] + T[0][3]) * inv_a - 0.5 * (T[3][0] - T[0][3]) * inv_b;
  R.R30 = 0.5 * (T[3][0] + T[0][3]) * inv_a + 0.5 * (T[3][0] - T[0][3]) * inv_b;
  R.R11 = 0.5 * (T[1][1] + T[2][2]) * inv_b + 0.5 * (T[1][1] - T[2][2]) * inv_a;
  R.R12 = 0.5 * (T[1][2] - T[2][1]) * inv_b + 0.5 * (T[1][2] + T[2][1]) * inv_a;
  R.R21 = 0.5 * (T[1][2] + T[2][1]) * inv_a - 0.5 * (T[1][2] - T[2][1]) * inv_b;
  R.R22 = 0.5 * (T[1][1] + T[2][2]) * inv_b - 0.5 * (T[1][1] - T[2][2]) * inv_a;
  R.R33 = a - b;
  return out;
}

}  // namespace qcorr
