#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helpers.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/nelder_mead.hpp"
#include "qcorr/numerics.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/sampling.hpp"

using namespace qcorr;
using numerics::CMatrix;
using qcorr::testing::max_abs_diff;

TEST_SUITE("eigensolver") {
  TEST_CASE("identity has unit spectrum") {
    const auto e = numerics::eig_hermitian(CMatrix::identity(4));
    for (double v : e.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("diagonal input comes back ascending") {
    const double d[] = {0.4, 0.1, 0.3, 0.2};
    const auto e = numerics::eig_hermitian(CMatrix::diagonal(d));
    CHECK(e.eigenvalues[0] == doctest::Approx(0.1));
    CHECK(e.eigenvalues[1] == doctest::Approx(0.2));
    CHECK(e.eigenvalues[2] == doctest::Approx(0.3));
    CHECK(e.eigenvalues[3] == doctest::Approx(0.4));
  }

  TEST_CASE("random Hermitian matrices reconstruct with orthonormal vectors") {
    sampling::Engine rng(11);
    for (int dim = 2; dim <= 4; ++dim) {
      for (int k = 0; k < 200; ++k) {
        const CMatrix m = sampling::random_hermitian(rng, dim);
        const auto e = numerics::eig_hermitian(m);
        CHECK(max_abs_diff(e.reconstruct(), m) < 1e-10);
        const CMatrix gram = e.eigenvectors.adjoint() * e.eigenvectors;
        CHECK(max_abs_diff(gram, CMatrix::identity(dim)) < 1e-10);
        for (int i = 1; i < dim; ++i) CHECK(e.eigenvalues[i - 1] <= e.eigenvalues[i]);
      }
    }
  }

  TEST_CASE("non-Hermitian input is rejected") {
    CMatrix m = CMatrix::identity(2);
    m(0, 1) = 1e-6;
    CHECK_THROWS_AS(numerics::eig_hermitian(m), ValidationError);
  }
}

TEST_SUITE("matrix functions") {
  TEST_CASE("square root of the maximally mixed state") {
    const CMatrix r = numerics::sqrt_psd(CMatrix::identity(4) * 0.25);
    CHECK(max_abs_diff(r, CMatrix::identity(4) * 0.5) < 1e-15);
  }

  TEST_CASE("a projector is its own square root") {
    CMatrix p(4);
    const double h = 0.5;
    p(0, 0) = h;
    p(0, 3) = h;
    p(3, 0) = h;
    p(3, 3) = h;
    CHECK(max_abs_diff(numerics::sqrt_psd(p), p) < 1e-12);
  }

  TEST_CASE("square root squares back for random density matrices") {
    sampling::Engine rng(12);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const CMatrix rho = sampling::random_density_matrix(rng, 4);
      const CMatrix r = numerics::sqrt_psd(rho);
      worst = std::max(worst, max_abs_diff(r * r, rho));
      CHECK(r.hermiticity_defect() < 1e-12);
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("tiny negative eigenvalues are clamped, larger ones throw") {
    const double clamp[] = {0.5, 0.5, -1e-11, 0.0};
    CHECK_NOTHROW(numerics::sqrt_psd(CMatrix::diagonal(clamp)));
    const double bad[] = {0.5, 0.5, -1e-6, 0.0};
    CHECK_THROWS_AS(numerics::sqrt_psd(CMatrix::diagonal(bad)), NotPsdError);
  }

  TEST_CASE("trace norm examples and bounds") {
    CHECK(numerics::trace_norm(CMatrix(4)) == 0.0);
    const double d[] = {1.0, -1.0, 0.0, 0.0};
    CHECK(numerics::trace_norm(CMatrix::diagonal(d)) == doctest::Approx(2.0));

    sampling::Engine rng(13);
    for (int k = 0; k < 300; ++k) {
      const CMatrix h = sampling::random_hermitian(rng, 4);
      CHECK(numerics::trace_norm(h) >= std::abs(h.trace().real()) - 1e-12);
      const CMatrix diff = sampling::random_density_matrix(rng, 4) - sampling::random_density_matrix(rng, 4);
      const double tn = numerics::trace_norm(diff);
      CHECK(tn >= 0.0);
      CHECK(tn <= 2.0 + 1e-12);
    }
  }

  TEST_CASE("singular values agree with the Gram spectrum") {
    sampling::Engine rng(14);
    for (int k = 0; k < 200; ++k) {
      CMatrix a = sampling::random_hermitian(rng, 4) * cplx(0.3, 0.7) + sampling::random_hermitian(rng, 4);
      const auto sv = numerics::singular_values(a);
      const auto e = numerics::eig_hermitian(a.adjoint() * a);
      for (int i = 0; i < 4; ++i)
        CHECK(sv[i] == doctest::Approx(std::sqrt(std::max(0.0, e.eigenvalues[3 - i]))).epsilon(1e-9));
    }
  }

  TEST_CASE("singular values of a diagonal matrix are its sorted magnitudes") {
    const double d[] = {-0.2, 3.0, 0.0, 1e-20};
    const auto sv = numerics::singular_values(CMatrix::diagonal(d));
    CHECK(sv[0] == 3.0);
    CHECK(sv[1] == doctest::Approx(0.2));
    CHECK(sv[2] == doctest::Approx(1e-20));
    CHECK(sv[3] == 0.0);
  }

  TEST_CASE("Kronecker products of Paulis anticommute correctly") {
    const CMatrix xx = numerics::kron(numerics::pauli(1), numerics::pauli(1));
    const CMatrix zz = numerics::kron(numerics::pauli(3), numerics::pauli(3));
    CHECK(max_abs_diff(xx * zz, zz * xx) < 1e-15);
    const CMatrix xi = numerics::kron(numerics::pauli(1), numerics::pauli(0));
    const CMatrix zi = numerics::kron(numerics::pauli(3), numerics::pauli(0));
    CHECK(max_abs_diff(xi * zi + zi * xi, CMatrix(4)) < 1e-15);
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("finite-interval battery") {
    struct Case {
      double (*f)(double);
      double a, b, exact;
    };
    const Case cases[] = {
        {[](double x) { return x * x * x; }, 0.0, 1.0, 0.25},
        {[](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 2.0},
        {[](double x) { return std::exp(x); }, 0.0, 1.0, std::numbers::e - 1.0},
        {[](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 2.0, std::atan(2.0)},
        {[](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
    };
    for (const auto& c : cases) {
      const auto r = numerics::integrate(c.f, c.a, c.b);
      CHECK(r.value == doctest::Approx(c.exact).epsilon(1e-10));
    }
  }

  TEST_CASE("semi-infinite exponential moments") {
    CHECK(numerics::integrate_semiinfinite([](double w) { return std::exp(-w); }, 1e-10).value ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(numerics::integrate_semiinfinite([](double w) { return w * std::exp(-w); }, 1e-10).value ==
          doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("exhausted budget reports the best estimate") {
    numerics::QuadratureOptions o;
    o.rel_tol = 1e-15;
    o.max_intervals = 2;
    try {
      numerics::integrate([](double x) { return std::sqrt(x) * std::sin(40.0 * x); }, 0.0, 1.0, o);
      FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
      CHECK(std::isfinite(e.best_estimate()));
      CHECK(e.error_estimate() > 0.0);
    }
  }
}

TEST_SUITE("ode") {
  TEST_CASE("exponential decay") {
    const auto s = numerics::ode_rk4([](double, const numerics::OdeState& y) { return numerics::OdeState{-y[0]}; },
                                     {1.0}, 0.0, 1.0, 1e-3, 1000);
    CHECK(s.back().t == 1.0);
    CHECK(std::abs(s.back().y[0] - std::exp(-1.0)) < 1e-8);
  }

  TEST_CASE("zero derivative keeps the state") {
    const auto s = numerics::ode_rk4([](double, const numerics::OdeState& y) { return numerics::OdeState(y.size(), 0.0); },
                                     {0.3, -2.0}, 0.0, 5.0, 0.1);
    CHECK(s.back().y == numerics::OdeState{0.3, -2.0});
  }

  TEST_CASE("global error is fourth order") {
    auto err = [](double dt) {
      const auto s = numerics::ode_rk4([](double, const numerics::OdeState& y) { return numerics::OdeState{-y[0]}; },
                                       {1.0}, 0.0, 2.0, dt);
      return std::abs(s.back().y[0] - std::exp(-2.0));
    };
    const double ratio = err(0.1) / err(0.05);
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
  }

  TEST_CASE("blow-up reports the last valid time") {
    try {
      numerics::ode_rk4([](double, const numerics::OdeState& y) { return numerics::OdeState{y[0] * y[0] * 1e200}; },
                        {1e100}, 0.0, 1.0, 0.1);
      FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
      CHECK(e.last_valid_time() == 0.0);
    }
  }

  TEST_CASE("last step lands on the end point") {
    const auto s = numerics::ode_rk4([](double, const numerics::OdeState&) { return numerics::OdeState{1.0}; },
                                     {0.0}, 0.0, 1.05, 0.1);
    CHECK(s.back().t == 1.05);
    CHECK(s.back().y[0] == doctest::Approx(1.05).epsilon(1e-14));
  }
}

TEST_SUITE("series") {
  TEST_CASE("geometric series") {
    const auto r = numerics::sum_series([](long m) { return std::ldexp(1.0, -int(m)); });
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("all-zero terms") {
    const auto r = numerics::sum_series([](long) { return 0.0; });
    CHECK(r.converged);
    CHECK(r.value == 0.0);
  }

  TEST_CASE("truncation is flagged") {
    const auto r = numerics::sum_series([](long m) { return 1.0 / double(m); }, 1e-12, 1000);
    CHECK_FALSE(r.converged);
    CHECK(r.terms == 1000);
  }

  TEST_CASE("algebraic tails reproduce zeta values") {
    const auto z2 = numerics::sum_series_algebraic([](double m) { return 1.0 / (m * m); }, 2.0);
    CHECK(z2.value == doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-13));
    const auto z15 = numerics::sum_series_algebraic([](double m) { return std::pow(m, -1.5); }, 1.5);
    CHECK(z15.value == doctest::Approx(2.612375348685488).epsilon(1e-12));
  }
}

TEST_SUITE("simplex search") {
  TEST_CASE("Rosenbrock minimum") {
    numerics::NelderMeadOptions o;
    o.max_evaluations = 20000;
    o.polish_restarts = 3;
    const auto r = numerics::minimize_nelder_mead(
        [](std::span<const double> x) {
          return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
        },
        {-1.2, 1.0}, o);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.value < 1e-8);
  }
}

TEST_SUITE("parallel map") {
  TEST_CASE("results keep index order") {
    const auto v = parallel_map(100, [](std::size_t i) { return int(i * i); }, 4);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == int(i * i));
  }

  TEST_CASE("task exceptions propagate") {
    CHECK_THROWS_AS(parallel_map(10, [](std::size_t i) -> int {
                      if (i == 7) throw std::runtime_error("boom");
                      return 0;
                    }, 3),
                    std::runtime_error);
  }
}
