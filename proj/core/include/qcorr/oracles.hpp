#pragma once

// Definition-level reference computations. They rely only on generic linear
// algebra and direct search, never on the closed forms they are used to check.

#include <array>
#include <cstdint>

#include "qcorr/numerics.hpp"
#include "qcorr/states.hpp"

namespace qcorr::oracles {

using Vec3 = std::array<double, 3>;

/// Polar/azimuthal grid over the upper hemisphere; n and -n give the same
/// skew information, so the hemisphere suffices.
struct SphereGrid {
  int n_theta = 91;
  int n_phi = 360;
  /// Number of best grid cells that are polished by simplex descent.
  int refinement_rounds = 2;
};

/// -1/2 Tr([sqrt(rho), K]^2) for any Hermitian 4x4 K.
double skew_information(const numerics::CMatrix& sqrt_rho, const numerics::CMatrix& k);

/// Skew information of n.sigma (x) I evaluated from the commutator with the
/// generic PSD square root.
double skew_information_commutator(const XState& x, const Vec3& n);

/// Skew information of n.sigma (x) I via the W matrix, 1 - n^T W n.
double skew_information(const XState& x, const Vec3& n);

/// Minimum skew information over unit directions: grid scan followed by
/// simplex polish on the commutator definition.
double lqu_bruteforce(const XState& x, const SphereGrid& grid = {});

/// Smallest skew information over `count` Haar-random 2x2 observables with
/// spectrum {+1, -1}. An upper bound on LQU.
double lqu_random_observables(const XState& x, int count, std::uint64_t seed);

/// Classical-quantum state p P+ (x) rho1 + (1-p) P- (x) rho2 with P+- the
/// projectors onto +-n.
struct CQState {
  Vec3 axis{0.0, 0.0, 1.0};
  double p = 0.5;
  Vec3 bloch1{};
  Vec3 bloch2{};

  numerics::CMatrix matrix() const;
};

struct TraceDiscordSearch {
  double value = 0.0;   // best upper bound on the trace discord
  double spread = 0.0;  // worst restart minus best restart
  CQState best;
  int restarts = 0;
  long evaluations = 0;
};

/// Half the minimum trace distance from rho to classical-quantum states by
/// multi-start simplex descent. Seeds include the Pauli axes and the
/// canonical-frame axes; the remaining restarts draw from `seed`.
TraceDiscordSearch trace_discord_bruteforce(const XState& x, int restarts = 50,
                                            std::uint64_t seed = 1);

}  // namespace qcorr::oracles
