#include "qcorr/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/nelder_mead.hpp"

namespace qcorr::oracles {

using numerics::CMatrix;

namespace {

CMatrix bloch_operator(const Vec3& n) {
  CMatrix m(2);
  for (int k = 0; k < 3; ++k) m += numerics::pauli(k + 1) * cplx(n[k]);
  return m;
}

Vec3 normalized(const Vec3& v) {
  const double r = std::hypot(v[0], v[1], v[2]);
  if (r < 1e-300) return {0.0, 0.0, 1.0};
  return {v[0] / r, v[1] / r, v[2] / r};
}

CMatrix local_observable(const Vec3& n) {
  return numerics::kron(bloch_operator(n), CMatrix::identity(2));
}

}  // namespace

double skew_information(const CMatrix& sqrt_rho, const CMatrix& k) {
  const CMatrix c = sqrt_rho * k - k * sqrt_rho;
  return -0.5 * (c * c).trace().real();
}

double skew_information_commutator(const XState& x, const Vec3& n) {
  return skew_information(numerics::sqrt_psd(to_matrix(x)), local_observable(normalized(n)));
}

double skew_information(const XState& x, const Vec3& n) {
  return w_matrix(x).quadratic_form(normalized(n));
}

double lqu_bruteforce(const XState& x, const SphereGrid& grid) {
  const CMatrix root = numerics::sqrt_psd(to_matrix(x));

  // The skew information is a quadratic form in n; its coefficients come
  // from commutators with the three local Pauli operators.
  std::array<CMatrix, 3> comm;
  for (int i = 0; i < 3; ++i) {
    Vec3 e{};
    e[i] = 1.0;
    const CMatrix k = local_observable(e);
    comm[i] = root * k - k * root;
  }
  double form[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) form[i][j] = -0.5 * (comm[i] * comm[j]).trace().real();

  struct Cell {
    double value;
    Vec3 n;
  };
  std::vector<Cell> cells;
  cells.reserve(std::size_t(grid.n_theta) * grid.n_phi);
  for (int it = 0; it < grid.n_theta; ++it) {
    const double theta = 0.5 * std::numbers::pi * it / std::max(1, grid.n_theta - 1);
    for (int ip = 0; ip < grid.n_phi; ++ip) {
      const double phi = 2.0 * std::numbers::pi * ip / grid.n_phi;
      const Vec3 n = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
      double v = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v += n[i] * form[i][j] * n[j];
      cells.push_back({v, n});
      if (it == 0) break;  // the pole is a single direction
    }
  }
  const std::size_t keep = std::min<std::size_t>(3, cells.size());
  std::partial_sort(cells.begin(), cells.begin() + keep, cells.end(),
                    [](const Cell& a, const Cell& b) { return a.value < b.value; });

  auto objective = [&](std::span<const double> v) {
    return skew_information(root, local_observable(normalized({v[0], v[1], v[2]})));
  };
  numerics::NelderMeadOptions opts;
  opts.initial_step = 0.02;
  opts.x_tol = 1e-10;
  opts.f_tol = 1e-15;
  opts.polish_restarts = grid.refinement_rounds;

  double best = cells.front().value;
  for (std::size_t c = 0; c < keep; ++c) {
    const Vec3& n = cells[c].n;
    const auto r = numerics::minimize_nelder_mead(objective, {n[0], n[1], n[2]}, opts);
    best = std::min(best, r.value);
  }
  return std::clamp(best, 0.0, 1.0);
}

double lqu_random_observables(const XState& x, int count, std::uint64_t seed) {
  const CMatrix root = numerics::sqrt_psd(to_matrix(x));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double best = 1.0;
  for (int i = 0; i < count; ++i) {
    // Haar-random unitary column from a normalised complex Gaussian vector.
    cplx u0(normal(rng), normal(rng)), u1(normal(rng), normal(rng));
    const double norm = std::sqrt(std::norm(u0) + std::norm(u1));
    u0 /= norm;
    u1 /= norm;
    // K = 2|u><u| - I has spectrum {+1, -1}.
    CMatrix k(2);
    k(0, 0) = 2.0 * std::norm(u0) - 1.0;
    k(1, 1) = 2.0 * std::norm(u1) - 1.0;
    k(0, 1) = 2.0 * u0 * std::conj(u1);
    k(1, 0) = std::conj(k(0, 1));
    best = std::min(best, skew_information(root, numerics::kron(k, CMatrix::identity(2))));
  }
  return best;
}

CMatrix CQState::matrix() const {
  const CMatrix id = CMatrix::identity(2);
  const CMatrix axis_op = bloch_operator(normalized(axis));
  const CMatrix plus = (id + axis_op) * cplx(0.5);
  const CMatrix minus = (id - axis_op) * cplx(0.5);
  const CMatrix rho1 = (id + bloch_operator(bloch1)) * cplx(0.5);
  const CMatrix rho2 = (id + bloch_operator(bloch2)) * cplx(0.5);
  return numerics::kron(plus, rho1) * cplx(p) + numerics::kron(minus, rho2) * cplx(1.0 - p);
}

namespace {

constexpr int kParams = 10;
using Params = std::array<double, kParams>;

Vec3 into_ball(double x, double y, double z) {
  const double r = std::hypot(x, y, z);
  const double scale = r > 1.0 ? 1.0 / r : 1.0;
  return {x * scale, y * scale, z * scale};
}

CQState decode(std::span<const double> v) {
  CQState s;
  s.axis = normalized({v[0], v[1], v[2]});
  s.p = 0.5 * (1.0 + std::sin(v[3]));
  s.bloch1 = into_ball(v[4], v[5], v[6]);
  s.bloch2 = into_ball(v[7], v[8], v[9]);
  return s;
}

std::vector<double> encode(const CQState& s) {
  const double q = std::asin(std::clamp(2.0 * s.p - 1.0, -1.0, 1.0));
  return {s.axis[0], s.axis[1], s.axis[2], q,           s.bloch1[0],
          s.bloch1[1], s.bloch1[2], s.bloch2[0], s.bloch2[1], s.bloch2[2]};
}

// The classical-quantum state obtained by measuring qubit 1 along n.
CQState measured(const CMatrix& rho, const Vec3& n) {
  const CMatrix id = CMatrix::identity(2);
  const CMatrix axis_op = bloch_operator(n);
  const std::array<CMatrix, 2> proj = {(id + axis_op) * cplx(0.5), (id - axis_op) * cplx(0.5)};
  CQState s;
  s.axis = n;
  std::array<Vec3, 2> bloch{};
  std::array<double, 2> weight{};
  for (int k = 0; k < 2; ++k) {
    weight[k] = (rho * numerics::kron(proj[k], id)).trace().real();
    for (int j = 0; j < 3; ++j) {
      const double m = (rho * numerics::kron(proj[k], numerics::pauli(j + 1))).trace().real();
      bloch[k][j] = weight[k] > 1e-12 ? m / weight[k] : 0.0;
    }
  }
  s.p = std::clamp(weight[0], 0.0, 1.0);
  s.bloch1 = into_ball(bloch[0][0], bloch[0][1], bloch[0][2]);
  s.bloch2 = into_ball(bloch[1][0], bloch[1][1], bloch[1][2]);
  return s;
}

std::vector<Vec3> seed_axes(const XState& x) {
  std::vector<Vec3> axes = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  const double p14 = std::arg(x.rho14), p23 = std::arg(x.rho23);
  for (double alpha : {0.5 * (p14 + p23), 0.5 * (p14 - p23)}) {
    for (double a : {alpha, -alpha}) {
      axes.push_back({std::cos(a), std::sin(a), 0.0});
      axes.push_back({-std::sin(a), std::cos(a), 0.0});
    }
  }
  return axes;
}

}  // namespace

TraceDiscordSearch trace_discord_bruteforce(const XState& x, int restarts, std::uint64_t seed) {
  const CMatrix rho = to_matrix(x);
  TraceDiscordSearch out;
  auto objective = [&](std::span<const double> v) {
    return 0.5 * numerics::trace_norm(rho - decode(v).matrix());
  };

  numerics::NelderMeadOptions opts;
  opts.initial_step = 0.2;
  opts.x_tol = 1e-8;
  opts.f_tol = 1e-12;
  opts.max_evaluations = 2000;

  double best = HUGE_VAL, worst = -HUGE_VAL;
  std::vector<double> best_x;
  auto run = [&](std::vector<double> start, const numerics::NelderMeadOptions& o) {
    const auto r = numerics::minimize_nelder_mead(objective, std::move(start), o);
    out.evaluations += r.evaluations;
    ++out.restarts;
    worst = std::max(worst, r.value);
    if (r.value < best) {
      best = r.value;
      best_x = r.x;
    }
  };

  const int budget = std::max(restarts, 1);
  const int polish = std::max(1, budget / 8);
  const auto axes = seed_axes(x);
  int used = 0;
  for (const Vec3& n : axes) {
    if (used >= budget - polish) break;
    run(encode(measured(rho, n)), opts);
    ++used;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> angle(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
  for (; used < budget - polish; ++used) {
    std::vector<double> start(kParams);
    for (int k = 0; k < 3; ++k) start[k] = normal(rng);
    start[3] = angle(rng);
    for (int k = 4; k < kParams; ++k) start[k] = 0.5 * normal(rng);
    run(std::move(start), opts);
  }

  // Shrinking restarts from the incumbent pull the simplex out of the
  // creases of the trace norm.
  numerics::NelderMeadOptions fine = opts;
  for (int k = 0; k < polish; ++k) {
    fine.initial_step = opts.initial_step * std::pow(0.3, k + 1);
    run(best_x, fine);
  }

  out.value = best;
  out.spread = worst - best;
  out.best = decode(best_x);
  return out;
}

}  // namespace qcorr::oracles
