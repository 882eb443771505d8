#pragma once

// Small dense kernels used throughout the library: Hermitian eigensolver for
// 2..4 dimensional matrices, PSD square root, trace norm, adaptive quadrature,
// classical RK4 and series summation. Everything here is pure.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qcorr {

using cplx = std::complex<double>;

namespace numerics {

/// Hermiticity tolerance for HermitianMatrix inputs (absolute, per entry).
inline constexpr double kHermitianTolerance = 1e-12;
/// Eigenvalues above -kPsdClampTolerance are treated as zero when taking
/// square roots; anything lower is an error.
inline constexpr double kPsdClampTolerance = 1e-10;

/// Square complex matrix of dimension 1..4 stored row-major on the stack.
class CMatrix {
 public:
  static constexpr int kMaxDim = 4;

  CMatrix() = default;
  explicit CMatrix(int dim);
  CMatrix(int dim, std::initializer_list<cplx> row_major);

  static CMatrix identity(int dim);
  static CMatrix diagonal(std::span<const double> values);

  int dim() const noexcept { return dim_; }

  cplx& operator()(int r, int c) noexcept { return data_[r * kMaxDim + c]; }
  const cplx& operator()(int r, int c) const noexcept { return data_[r * kMaxDim + c]; }

  CMatrix adjoint() const;
  cplx trace() const;
  /// Largest absolute entry.
  double max_abs() const;
  /// Largest |m(i,j) - conj(m(j,i))|.
  double hermiticity_defect() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  int dim_ = 0;
  std::array<cplx, kMaxDim * kMaxDim> data_{};
};

/// Kronecker product of two 2x2 matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Pauli matrix sigma_k with sigma_0 = I, (1,2,3) = (x,y,z).
const CMatrix& pauli(int k);

/// Throws ValidationError unless `m` is Hermitian within kHermitianTolerance.
void require_hermitian(const CMatrix& m);

struct EigenDecomposition {
  int dim = 0;
  std::array<double, CMatrix::kMaxDim> eigenvalues{};  // ascending
  CMatrix eigenvectors;                                  // orthonormal columns

  std::span<const double> values() const { return {eigenvalues.data(), std::size_t(dim)}; }
  /// V diag(lambda) V^dagger.
  CMatrix reconstruct() const;
};

/// Cyclic complex Jacobi. Throws ValidationError for non-Hermitian input.
EigenDecomposition eig_hermitian(const CMatrix& m);

/// Principal square root of a PSD matrix via its spectral decomposition.
/// Eigenvalues in [-kPsdClampTolerance, 0) are clamped to zero.
CMatrix sqrt_psd(const CMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const CMatrix& m);

/// Singular values (descending) by one-sided Jacobi. Absolute accuracy is
/// about machine epsilon times the largest singular value, so tiny values
/// are not inflated the way square roots of Gram-matrix eigenvalues are.
std::array<double, CMatrix::kMaxDim> singular_values(const CMatrix& m);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

struct SemiInfiniteOptions {
  double rel_tol = 1e-10;
  /// End of the first panel; subsequent panels double in length until their
  /// contribution falls below rel_tol of the running total.
  double first_panel = 40.0;
  int max_panels = 60;
  int max_intervals_per_panel = 4000;
};

/// Integral of f over [0, inf) for integrands with an exponential tail.
/// Throws QuadratureError (carrying the best estimate) if the budget runs out.
QuadratureResult integrate_semiinfinite(const std::function<double(double)>& f,
                                        double rel_tol,
                                        SemiInfiniteOptions options = {});

// ---------------------------------------------------------------------------
// ODE

using OdeState = std::vector<double>;
using OdeDerivative = std::function<OdeState(double, const OdeState&)>;

struct OdeSample {
  double t;
  OdeState y;
};

/// Classical fixed-step RK4 from t0 to t1. Samples are recorded every
/// `sample_every` steps plus the final point. The last step is shortened to
/// land on t1 exactly. Throws IntegrationError on non-finite state.
std::vector<OdeSample> ode_rk4(const OdeDerivative& deriv, OdeState y0, double t0, double t1,
                               double dt, int sample_every = 1);

// ---------------------------------------------------------------------------
// Series

inline constexpr double kSeriesRelTol = 1e-12;
inline constexpr long kSeriesMaxTerms = 1'000'000;

struct SeriesResult {
  double value = 0.0;
  bool converged = false;
  long terms = 0;
};

/// sum_{m>=1} term(m), stopping once |term(m)| <= rel_tol * |partial sum|
/// or m reaches m_max (converged = false in that case).
SeriesResult sum_series(const std::function<double(long)>& term, double rel_tol = kSeriesRelTol,
                        long m_max = kSeriesMaxTerms);

/// sum_{m>=1} f(m) for a smooth f with algebraic decay ~ m^{-decay_power}
/// (decay_power > 1). Sums m < m_direct explicitly and replaces the tail by
/// its Euler-Maclaurin expansion (integral plus endpoint corrections).
SeriesResult sum_series_algebraic(const std::function<double(double)>& f, double decay_power,
                                  long m_direct = 2000, double rel_tol = 1e-13);

}  // namespace numerics
}  // namespace qcorr
