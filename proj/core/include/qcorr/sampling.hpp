#pragma once

// Random test inputs. All generators take the engine by reference so that a
// caller-owned seed fixes every draw.

#include <array>
#include <random>

#include "qcorr/numerics.hpp"
#include "qcorr/states.hpp"

namespace qcorr::sampling {

using Engine = std::mt19937_64;

/// Populations uniform on the simplex, coherences uniform in magnitude up
/// to the positivity bound with uniform phase. About one draw in eight puts
/// a coherence exactly on the bound, giving a rank-deficient block.
XState random_xstate(Engine& rng);

/// a|00> + d|11> or b|01> + c|10> with random complex amplitudes.
XState random_pure_xstate(Engine& rng);

/// (c1, c2, c3) of a Bell-diagonal state with Bell weights uniform on the
/// simplex.
std::array<double, 3> random_bell_triple(Engine& rng);

/// Hermitian matrix with independent standard normal entries.
numerics::CMatrix random_hermitian(Engine& rng, int dim);

/// G G^dagger / Tr for a complex Gaussian G.
numerics::CMatrix random_density_matrix(Engine& rng, int dim);

}  // namespace qcorr::sampling
