#include "qcorr/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcorr::numerics {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

NelderMeadResult run_once(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, double step, const NelderMeadOptions& opt,
                          int budget) {
  const std::size_t n = x0.size();
  const double dn = double(n);
  // Gao & Han adaptive parameters.
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : HUGE_VAL;
  };

  Simplex s;
  s.x.push_back(x0);
  s.f.push_back(eval(x0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> xi = x0;
    xi[i] += (xi[i] != 0.0 ? step * std::max(1.0, std::abs(xi[i])) : step);
    s.f.push_back(eval(xi));
    s.x.push_back(std::move(xi));
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j) spread = std::max(spread, std::abs(s.x[i][j] - s.x[best][j]));
    if (spread <= opt.x_tol && std::abs(s.f[worst] - s.f[best]) <= opt.f_tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += s.x[i][j] / dn;

    for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - s.x[worst][j]);
    const double fr = eval(xr);
    if (fr < s.f[best]) {
      for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + beta * (xr[j] - centroid[j]);
      const double fe = eval(xe);
      if (fe < fr) {
        s.x[worst] = xe;
        s.f[worst] = fe;
      } else {
        s.x[worst] = xr;
        s.f[worst] = fr;
      }
      continue;
    }
    if (fr < s.f[second]) {
      s.x[worst] = xr;
      s.f[worst] = fr;
      continue;
    }
    const bool outside = fr < s.f[worst];
    for (std::size_t j = 0; j < n; ++j)
      xc[j] = outside ? centroid[j] + gamma * (xr[j] - centroid[j])
                      : centroid[j] - gamma * (centroid[j] - s.x[worst][j]);
    const double fc = eval(xc);
    if (fc < std::min(fr, s.f[worst])) {
      s.x[worst] = xc;
      s.f[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) s.x[i][j] = s.x[best][j] + delta * (s.x[i][j] - s.x[best][j]);
      s.f[i] = eval(s.x[i]);
    }
  }

  const auto it = std::min_element(s.f.begin(), s.f.end());
  const std::size_t b = std::size_t(it - s.f.begin());
  return {s.x[b], s.f[b], evals};
}

}  // namespace

NelderMeadResult minimize_nelder_mead(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> x0, const NelderMeadOptions& options) {
  NelderMeadResult best = run_once(f, std::move(x0), options.initial_step, options, options.max_evaluations);
  double step = options.initial_step;
  for (int r = 0; r < options.polish_restarts; ++r) {
    step *= 0.5;
    NelderMeadResult next = run_once(f, best.x, step, options, options.max_evaluations);
    next.evaluations += best.evaluations;
    const bool improved = next.value < best.value - options.f_tol;
    if (next.value <= best.value) best = std::move(next);
    else best.evaluations = next.evaluations;
    if (!improved && step < 1e-4) break;
  }
  return best;
}

}  // namespace qcorr::numerics
