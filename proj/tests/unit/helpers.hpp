#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "qcorr/numerics.hpp"
#include "qcorr/states.hpp"

namespace qcorr::testing {

inline double max_abs_diff(const numerics::CMatrix& a, const numerics::CMatrix& b) {
  return (a - b).max_abs();
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Agreement expected between closed forms and a generic eigensolver square
/// root: a zero eigenvalue comes back as roundoff whose root is ~1e-8.
inline double spectral_root_tolerance(const XState& x, double full_rank) {
  const auto& lambda = x_eigensystem(x).lambda;
  return *std::min_element(lambda.begin(), lambda.end()) > 1e-8 ? full_rank : 1e-7;
}

}  // namespace qcorr::testing
