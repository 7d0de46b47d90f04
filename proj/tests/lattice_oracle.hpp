#pragma once

// Test-only ground truth: counts the unit lattice cells [x, x+1)^d covered by
// at least one box. Independent of coordinate compression; only usable for
// small coordinate ranges.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kleebox/core.hpp"

namespace kleebox::testing {

inline std::int64_t lattice_volume(const BoxSet& m) {
  if (m.empty()) return 0;
  const std::size_t d = m.dim();
  std::vector<Coord> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = m[0].lo(i);
    hi[i] = m[0].hi(i);
    for (const auto& b : m) {
      lo[i] = std::min(lo[i], b.lo(i));
      hi[i] = std::max(hi[i], b.hi(i));
    }
    if (hi[i] - lo[i] > 64) throw std::invalid_argument("lattice oracle: range too large");
    if (hi[i] == lo[i]) return 0;
  }
  std::int64_t count = 0;
  std::vector<Coord> x = lo;
  while (true) {
    for (const auto& b : m) {
      bool in = true;
      for (std::size_t i = 0; i < d && in; ++i) in = b.lo(i) <= x[i] && x[i] < b.hi(i);
      if (in) {
        ++count;
        break;
      }
    }
    std::size_t i = d;
    while (i-- > 0) {
      if (++x[i] < hi[i]) break;
      x[i] = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return count;
}

}  // namespace kleebox::testing
