#pragma once

#include <json.hpp>

namespace qcorr::app {

/// Objects keep insertion order so reports read in a fixed layout.
using Json = nlohmann::ordered_json;

}  // namespace qcorr::app
