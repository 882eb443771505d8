#include "qcorr/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr::numerics {

CMatrix::CMatrix(int dim) : dim_(dim) {
  assert(dim >= 1 && dim <= kMaxDim);
}

CMatrix::CMatrix(int dim, std::initializer_list<cplx> row_major) : CMatrix(dim) {
  assert(int(row_major.size()) == dim * dim);
  int k = 0;
  for (const cplx& v : row_major) {
    (*this)(k / dim, k % dim) = v;
    ++k;
  }
}

CMatrix CMatrix::identity(int dim) {
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(int(values.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double CMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  assert(dim_ == o.dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) (*this)(i, j) += o(i, j);
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  assert(dim_ == o.dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) (*this)(i, j) -= o(i, j);
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) (*this)(i, j) *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  assert(a.dim() == b.dim());
  const int n = a.dim();
  CMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  assert(a.dim() == 2 && b.dim() == 2);
  CMatrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

const CMatrix& pauli(int k) {
  using namespace std::complex_literals;
  static const std::array<CMatrix, 4> sigma = {
      CMatrix(2, {1.0, 0.0, 0.0, 1.0}),
      CMatrix(2, {0.0, 1.0, 1.0, 0.0}),
      CMatrix(2, {0.0, -1i, 1i, 0.0}),
      CMatrix(2, {1.0, 0.0, 0.0, -1.0}),
  };
  assert(k >= 0 && k < 4);
  return sigma[k];
}

void require_hermitian(const CMatrix& m) {
  const double defect = m.hermiticity_defect();
  if (!(defect <= kHermitianTolerance)) {
    std::ostringstream os;
    os << "matrix is not Hermitian (max |m_ij - conj(m_ji)| = " << defect << ")";
    throw ValidationError(os.str());
  }
}

CMatrix EigenDecomposition::reconstruct() const {
  CMatrix out(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < dim; ++k)
        s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
      out(i, j) = s;
    }
  return out;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j) s += std::norm(a(i, j));
  return s;
}

}  // namespace

EigenDecomposition eig_hermitian(const CMatrix& m) {
  require_hermitian(m);
  const int n = m.dim();
  CMatrix a = m;
  // Symmetrize so rounding in the input cannot leak into the rotations.
  for (int i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  CMatrix v = CMatrix::identity(n);

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale += std::norm(a(i, j));
  const double threshold = std::max(scale, 1e-300) * 1e-34;

  for (int sweep = 0; sweep < 64 && off_diagonal_norm(a) > threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const cplx phase = a(p, q) / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U acts on columns p, q: U_pp = c, U_pq = s, U_qp = -s e^{-i phi}, U_qq = c e^{-i phi}.
        const cplx upp = c, upq = s, uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  EigenDecomposition out;
  out.dim = n;
  std::array<int, CMatrix::kMaxDim> order{};
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.begin() + n,
            [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
  out.eigenvectors = CMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

CMatrix sqrt_psd(const CMatrix& m) {
  EigenDecomposition e = eig_hermitian(m);
  if (e.eigenvalues[0] < -kPsdClampTolerance) {
    std::ostringstream os;
    os << "matrix is not positive semidefinite (min eigenvalue " << e.eigenvalues[0] << ")";
    throw NotPsdError(os.str(), e.eigenvalues[0]);
  }
  for (int k = 0; k < e.dim; ++k) e.eigenvalues[k] = std::sqrt(std::max(0.0, e.eigenvalues[k]));
  return e.reconstruct();
}

double trace_norm(const CMatrix& m) {
  const EigenDecomposition e = eig_hermitian(m);
  double s = 0.0;
  for (double lambda : e.values()) s += std::abs(lambda);
  return s;
}

std::array<double, CMatrix::kMaxDim> singular_values(const CMatrix& m) {
  const int n = m.dim();
  CMatrix a = m;
  auto column_dot = [&](int p, int q) {
    cplx s = 0.0;
    for (int k = 0; k < n; ++k) s += std::conj(a(k, p)) * a(k, q);
    return s;
  };
  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double alpha = column_dot(p, p).real();
        const double beta = column_dot(q, q).real();
        const cplx g = column_dot(p, q);
        const double ag = std::abs(g);
        if (ag == 0.0 || ag <= 1e-17 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase = std::conj(g) / ag;  // e^{-i phi}
        const double zeta = (beta - alpha) / (2.0 * ag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const cplx ap = a(k, p);
          const cplx bq = phase * a(k, q);
          a(k, p) = c * ap - s * bq;
          a(k, q) = s * ap + c * bq;
        }
      }
    }
    if (!rotated) break;
  }
  std::array<double, CMatrix::kMaxDim> sv{};
  for (int j = 0; j < n; ++j) sv[j] = std::sqrt(column_dot(j, j).real());
  std::sort(sv.begin(), sv.begin() + n, std::greater<>());
  return sv;
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (a == b) return {};
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, a, b);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  int intervals = 1;
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
    if (!std::isfinite(total)) {
      throw QuadratureError("non-finite integrand", total, error);
    }
    if (intervals >= options.max_intervals) {
      std::ostringstream os;
      os << "adaptive quadrature did not converge on [" << a << ", " << b << "] after "
         << intervals << " intervals";
      throw QuadratureError(os.str(), total, error);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval cannot be split further in floating point; accept what we have.
      heap.push({worst.a, worst.b, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    Segment left = gauss_kronrod(f, worst.a, mid);
    Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  double value = 0.0, err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err, intervals};
}

QuadratureResult integrate_semiinfinite(const std::function<double(double)>& f, double rel_tol,
                                        SemiInfiniteOptions options) {
  QuadratureOptions panel_opts;
  panel_opts.rel_tol = rel_tol;
  panel_opts.max_intervals = options.max_intervals_per_panel;

  QuadratureResult total;
  double lo = 0.0;
  double hi = options.first_panel;
  for (int panel = 0; panel < options.max_panels; ++panel) {
    if (panel > 0) panel_opts.abs_tol = 0.1 * rel_tol * std::abs(total.value);
    QuadratureResult piece;
    try {
      piece = integrate(f, lo, hi, panel_opts);
    } catch (const QuadratureError& e) {
      throw QuadratureError(e.what(), total.value + e.best_estimate(),
                            total.error_estimate + e.error_estimate());
    }
    total.value += piece.value;
    total.error_estimate += piece.error_estimate;
    total.intervals += piece.intervals;
    if (panel > 0 && std::abs(piece.value) <= 0.1 * rel_tol * std::abs(total.value)) return total;
    lo = hi;
    hi *= 2.0;
  }
  throw QuadratureError("semi-infinite quadrature tail did not decay", total.value,
                        total.error_estimate);
}

// ---------------------------------------------------------------------------
// ODE

namespace {

bool all_finite(const OdeState& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

void axpy(OdeState& out, const OdeState& y, double h, const OdeState& k) {
  out.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
}

}  // namespace

std::vector<OdeSample> ode_rk4(const OdeDerivative& deriv, OdeState y0, double t0, double t1,
                               double dt, int sample_every) {
  if (!(dt > 0.0)) throw PreconditionError("ode_rk4: dt must be positive");
  if (t1 < t0) throw PreconditionError("ode_rk4: t1 < t0");
  if (sample_every < 1) sample_every = 1;

  std::vector<OdeSample> samples;
  samples.push_back({t0, y0});
  if (!all_finite(y0)) throw IntegrationError("ode_rk4: non-finite initial state", t0);

  const long steps = std::max(0L, long(std::ceil((t1 - t0) / dt - 1e-9)));
  OdeState y = std::move(y0);
  OdeState tmp;
  double t = t0;
  for (long n = 1; n <= steps; ++n) {
    const double t_next = (n == steps) ? t1 : t0 + double(n) * dt;
    const double h = t_next - t;
    const OdeState k1 = deriv(t, y);
    axpy(tmp, y, 0.5 * h, k1);
    const OdeState k2 = deriv(t + 0.5 * h, tmp);
    axpy(tmp, y, 0.5 * h, k2);
    const OdeState k3 = deriv(t + 0.5 * h, tmp);
    axpy(tmp, y, h, k3);
    const OdeState k4 = deriv(t + h, tmp);
    for (std::size_t i = 0; i < y.size(); ++i)
      tmp[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!all_finite(tmp)) {
      std::ostringstream os;
      os << "ode_rk4: state became non-finite after t = " << t;
      throw IntegrationError(os.str(), t);
    }
    y.swap(tmp);
    t = t_next;
    if (n % sample_every == 0 || n == steps) samples.push_back({t, y});
  }
  return samples;
}

// ---------------------------------------------------------------------------
// Series

SeriesResult sum_series(const std::function<double(long)>& term, double rel_tol, long m_max) {
  SeriesResult r;
  for (long m = 1; m <= m_max; ++m) {
    const double v = term(m);
    r.value += v;
    r.terms = m;
    if (std::abs(v) <= rel_tol * std::abs(r.value)) {
      r.converged = true;
      return r;
    }
  }
  return r;
}

SeriesResult sum_series_algebraic(const std::function<double(double)>& f, double decay_power,
                                  long m_direct, double rel_tol) {
  assert(decay_power > 1.0 && m_direct >= 2);
  SeriesResult r;
  // Small terms first.
  double head = 0.0;
  for (long m = m_direct - 1; m >= 1; --m) head += f(double(m));

  const double big_m = double(m_direct);
  const double k = 2.0 / (decay_power - 1.0);
  // x = M u^{-k} maps [M, inf) onto (0, 1] and absorbs the algebraic decay.
  auto mapped = [&](double u) {
    const double x = big_m * std::pow(u, -k);
    const double v = f(x) * k * big_m * std::pow(u, -k - 1.0);
    return std::isfinite(v) ? v : 0.0;
  };
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = 1e-18 * (std::abs(head) + std::abs(f(big_m)));
  const double integral = integrate(mapped, 0.0, 1.0, opts).value;

  const double h = 0.05 * big_m;
  const double f_prime = (f(big_m + h) - f(big_m - h)) / (2.0 * h);
  const double tail = integral + 0.5 * f(big_m) - f_prime / 12.0;

  r.value = head + tail;
  r.converged = std::isfinite(r.value);
  r.terms = m_direct;
  return r;
}

}  // namespace qcorr::numerics
