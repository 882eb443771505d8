#include "qcorr_app/state_file.hpp"

#include <algorithm>
#include <array>
#include <string_view>

namespace qcorr::app {

namespace {

constexpr std::array<std::string_view, 8> kMatrixKeys = {"rho11", "rho22", "rho33", "rho44",
                                                         "re14",  "im14",  "re23",  "im23"};
constexpr std::array<std::string_view, 3> kBellKeys = {"c1", "c2", "c3"};

template <std::size_t N>
bool member(const std::array<std::string_view, N>& set, std::string_view key) {
  return std::find(set.begin(), set.end(), key) != set.end();
}

}  // namespace

XState read_state(const KeyValueFile& file) {
  int family = 0;  // 1 matrix, 2 Bell-diagonal
  for (const Entry& e : file.entries()) {
    const int f = member(kMatrixKeys, e.key) ? 1 : member(kBellKeys, e.key) ? 2 : 0;
    if (f == 0) file.fail_at(e, false, "unknown key '" + e.key + "'");
    if (family != 0 && f != family)
      file.fail_at(e, false, "'" + e.key + "' mixes matrix keys with c1, c2, c3");
    family = f;
  }
  if (family == 0) file.fail_missing("rho11..rho44 or c1..c3");

  if (family == 2)
    return validate(from_bell_diagonal(file.number("c1"), file.number("c2"), file.number("c3")));

  XState x;
  x.rho11 = file.number("rho11");
  x.rho22 = file.number("rho22");
  x.rho33 = file.number("rho33");
  x.rho44 = file.number("rho44");
  x.rho14 = {file.optional_number("re14").value_or(0.0), file.optional_number("im14").value_or(0.0)};
  x.rho23 = {file.optional_number("re23").value_or(0.0), file.optional_number("im23").value_or(0.0)};
  return validate(x);
}

}  // namespace qcorr::app
