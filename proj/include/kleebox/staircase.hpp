#pragma once

// Staircase embedding of one-dimensional intervals into the plane.
//
// Given endpoints 0 = x_0 < x_1 < ... < x_{m-1}, elementary interval
// [x_t, x_{t+1}] becomes the box
//
//     A_t = [m-t-2, m-t-1] x [x_t, x_{t+1}]
//
// and an interval [x_j, x_k] becomes the grounded box C(j,k) = [0, m-1-j] x [0, x_k].
// A_t lies inside C(j,k) exactly when j <= t < k, and otherwise meets it in a
// null set, so measuring C-boxes inside the staircase measures the intervals.
// All indices here are 0-based positions in the endpoint list.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "kleebox/core.hpp"

namespace kleebox {

struct StaircaseParts {
  std::vector<Coord> xs;
  std::vector<AxisBox> a_boxes;  // A_0 .. A_{m-2}
  BoxSet t0{2};                  // C(t,t) for every t; meets the staircase in measure 0
  BoxSet t1{2};                  // C(t,t+1) for every t; equals t0 plus the staircase

  std::size_t m() const { return xs.size(); }

  AxisBox embed(std::size_t j, std::size_t k) const {
    if (j > k || k >= xs.size()) throw ValidationError("staircase embed needs j <= k < m");
    return AxisBox({0, 0}, {static_cast<Coord>(xs.size() - 1 - j), xs[k]});
  }

  /// C for the interval [lo, hi]; both ends must be staircase endpoints.
  AxisBox embed_interval(Coord lo, Coord hi) const { return embed(index_of(lo), index_of(hi)); }

  /// Volume of the union of the A boxes, x_{m-1} - x_0.
  ExactVolume a_volume() const { return ExactVolume(extent(xs.front(), xs.back())); }

  std::size_t index_of(Coord x) const {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end() || *it != x) throw ValidationError("coordinate is not a staircase endpoint");
    return static_cast<std::size_t>(it - xs.begin());
  }
};

inline StaircaseParts build_staircase(std::vector<Coord> xs) {
  if (xs.size() < 2) throw ValidationError("staircase needs at least two endpoints");
  if (xs.front() != 0) throw ValidationError("staircase endpoints must start at 0");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i - 1] >= xs[i]) throw ValidationError("staircase endpoints must be strictly increasing");
  }

  StaircaseParts parts;
  parts.xs = std::move(xs);
  const auto m = static_cast<Coord>(parts.xs.size());
  for (Coord t = 0; t + 1 < m; ++t) {
    parts.a_boxes.emplace_back(std::vector<Coord>{m - t - 2, parts.xs[t]},
                               std::vector<Coord>{m - t - 1, parts.xs[t + 1]});
  }
  for (std::size_t t = 0; t < parts.xs.size(); ++t) parts.t0.push_back(parts.embed(t, t));
  for (std::size_t t = 0; t + 1 < parts.xs.size(); ++t) parts.t1.push_back(parts.embed(t, t + 1));
  return parts;
}

}  // namespace kleebox
