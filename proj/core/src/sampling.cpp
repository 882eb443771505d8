#include "qcorr/sampling.hpp"

#include <cmath>
#include <numbers>

namespace qcorr::sampling {

namespace {

std::array<double, 4> simplex_point(Engine& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> w{};
  double sum = 0.0;
  for (double& v : w) sum += (v = e(rng));
  for (double& v : w) v /= sum;
  return w;
}

cplx random_phase(Engine& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

double coherence_fraction(Engine& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < 0.125 ? 1.0 : u(rng);
}

}  // namespace

XState random_xstate(Engine& rng) {
  const auto p = simplex_point(rng);
  XState x;
  x.rho11 = p[0];
  x.rho22 = p[1];
  x.rho33 = p[2];
  x.rho44 = 1.0 - p[0] - p[1] - p[2];
  if (x.rho44 < 0.0) x.rho44 = 0.0;
  x.rho14 = coherence_fraction(rng) * std::sqrt(x.rho11 * x.rho44) * random_phase(rng);
  x.rho23 = coherence_fraction(rng) * std::sqrt(x.rho22 * x.rho33) * random_phase(rng);
  return x;
}

XState random_pure_xstate(Engine& rng) {
  std::normal_distribution<double> g;
  cplx u{g(rng), g(rng)}, v{g(rng), g(rng)};
  const double norm = std::sqrt(std::norm(u) + std::norm(v));
  u /= norm;
  v /= norm;
  std::bernoulli_distribution outer(0.5);
  return outer(rng) ? XState::pure_00_11(u, v) : XState::pure_01_10(u, v);
}

std::array<double, 3> random_bell_triple(Engine& rng) {
  // Weights of Phi+, Phi-, Psi+, Psi-, whose correlators are (1,-1,1),
  // (-1,1,1), (1,1,-1) and (-1,-1,-1).
  const auto w = simplex_point(rng);
  return {w[0] - w[1] + w[2] - w[3], -w[0] + w[1] + w[2] - w[3], w[0] + w[1] - w[2] - w[3]};
}

numerics::CMatrix random_hermitian(Engine& rng, int dim) {
  std::normal_distribution<double> g;
  numerics::CMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = g(rng);
    for (int j = i + 1; j < dim; ++j) {
      m(i, j) = {g(rng), g(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

numerics::CMatrix random_density_matrix(Engine& rng, int dim) {
  std::normal_distribution<double> g;
  numerics::CMatrix a(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = {g(rng), g(rng)};
  numerics::CMatrix rho = a * a.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

}  // namespace qcorr::sampling
