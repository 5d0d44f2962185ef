#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fccfold/conformation.hpp"

namespace fccfold::testing {

// Direction strings use the same letter encoding as canonical_key: 'a' is
// basis index 0.
inline std::vector<std::uint8_t> dirs_of(std::string_view letters) {
  std::vector<std::uint8_t> dirs;
  dirs.reserve(letters.size());
  for (char ch : letters) dirs.push_back(static_cast<std::uint8_t>(ch - 'a'));
  return dirs;
}

inline Conformation conf_of(std::string_view letters) {
  return Conformation::from_directions(dirs_of(letters));
}

// Independent validity check: consecutive points one basis step apart, all
// points distinct (quadratic scan, no occupancy index involved).
inline bool rebuild_and_check(const Conformation& c) {
  const auto& pts = c.points();
  const auto& dirs = c.directions();
  if (pts.size() != dirs.size() + 1) return false;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (dirs[i] >= kDirections) return false;
    if (!(pts[i] + kBasis[dirs[i]] == pts[i + 1])) return false;
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return false;
  return true;
}

}  // namespace fccfold::testing
