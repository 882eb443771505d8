#pragma once

#include "qcorr/states.hpp"
#include "qcorr_app/config.hpp"

namespace qcorr::app {

/// State from either the matrix keys (rho11, rho22, rho33, rho44 required;
/// re14, im14, re23, im23 default to 0) or the Bell-diagonal keys c1, c2, c3.
/// Mixing the two sets or using any other key is a ParseError; an
/// unphysical state is an InvalidStateError.
XState read_state(const KeyValueFile& file);

}  // namespace qcorr::app
