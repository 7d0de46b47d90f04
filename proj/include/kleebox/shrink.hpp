#pragma once

// Instance shrinking: splits an instance into at most 2d+1 smaller instances
// with the same total volume, each holding at most ceil((1 - 1/(3d)) n) boxes.
//
// Per axis i, with z the sorted 2n axis-i coordinates of the current middle
// part, a = z[ceil((1-α)n)] and b = z[floor((1+α)n)] (1-based, α = 1/(3d)).
// The parts x_i <= a and x_i >= b are emitted; the middle a <= x_i <= b goes on
// to the next axis. Boxes that survive every axis unclipped on both sides equal
// the middle cell, and if one exists the middle volume is just the cell's.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "kleebox/core.hpp"
#include "kleebox/plan.hpp"

namespace kleebox {

inline std::size_t default_shrink_threshold(std::size_t d) { return 12 * d; }

/// Largest piece size shrink_split may emit for an n-box instance in dimension d.
inline std::size_t shrink_piece_bound(std::size_t n, std::size_t d) {
  // ceil(n (3d - 1) / (3d))
  return (n * (3 * d - 1) + 3 * d - 1) / (3 * d);
}

struct ShrinkResult {
  std::vector<BoxSet> pieces;
  std::optional<ExactVolume> note;  // volume of a middle part settled without a solver
};

namespace detail {

inline BoxSet clip_all(const BoxSet& m, std::size_t axis, Coord lo, Coord hi) {
  BoxSet out(m.dim());
  for (const auto& b : m) {
    if (auto c = clip_box(b, axis, lo, hi); c && !c->is_degenerate()) out.push_back(*std::move(c));
  }
  return out;
}

// Moves the common lower corner on the first `grounded` axes back to 0.
inline BoxSet reground(const BoxSet& m, int grounded) {
  if (grounded == 0 || m.empty()) return m;
  std::vector<Coord> offset(m.dim(), 0);
  for (int i = 0; i < grounded; ++i) {
    Coord lo = m[0].lo(i);
    for (const auto& b : m) lo = std::min(lo, b.lo(i));
    offset[i] = checked_sub(0, lo);
  }
  return translate(m, offset);
}

}  // namespace detail

/// Instances with fewer than `threshold` boxes (default 12d) pass through unchanged.
inline ShrinkResult shrink_split(const BoxSet& input, std::size_t threshold = 0) {
  const std::size_t d = input.dim();
  if (threshold == 0) threshold = default_shrink_threshold(d);
  BoxSet mid = prune_zero_volume(input);
  if (mid.size() < threshold) return {{input}, std::nullopt};

  const int grounded = classify(mid).grounded_max;
  ShrinkResult out;
  std::vector<Coord> cell_lo(d), cell_hi(d);
  constexpr Coord kMin = std::numeric_limits<Coord>::min();
  constexpr Coord kMax = std::numeric_limits<Coord>::max();

  for (std::size_t i = 0; i < d && !mid.empty(); ++i) {
    const std::size_t n = mid.size();
    std::vector<Coord> z;
    z.reserve(2 * n);
    for (const auto& b : mid) {
      z.push_back(b.lo(i));
      z.push_back(b.hi(i));
    }
    std::sort(z.begin(), z.end());

    const std::size_t q = n * (3 * d + 1) / (3 * d);
    const std::size_t p = shrink_piece_bound(n, d);
    const Coord a = z[std::clamp<std::size_t>(p, 1, 2 * n) - 1];
    const Coord b = z[std::clamp<std::size_t>(q, 1, 2 * n) - 1];
    cell_lo[i] = a;
    cell_hi[i] = b;

    for (BoxSet side : {detail::clip_all(mid, i, kMin, a), detail::clip_all(mid, i, b, kMax)}) {
      if (!side.empty()) out.pieces.push_back(detail::reground(side, grounded));
    }
    mid = detail::clip_all(mid, i, a, b);
  }

  if (!mid.empty()) {
    const AxisBox cell(cell_lo, cell_hi);
    if (std::find(mid.begin(), mid.end(), cell) != mid.end()) {
      out.note = box_volume(cell);
    } else {
      out.pieces.push_back(detail::reground(mid, grounded));
    }
  }
  return out;
}

/// The split as a plan: constant = note, one +1 term per piece.
inline VolumePlan shrink_plan(const BoxSet& input, std::size_t threshold = 0) {
  ShrinkResult r = shrink_split(input, threshold);
  VolumePlan plan;
  plan.claimed_class = ClassTag::grounded(classify(prune_zero_volume(input)).grounded_max);
  plan.constant = r.note.value_or(0);
  for (auto& piece : r.pieces) plan.terms.push_back({+1, std::move(piece)});
  return plan;
}

/// Splits recursively until every piece has at most n_min boxes (default 12d),
/// then solves the pieces with `base`.
inline ExactVolume solve_with_shrink(const BoxSet& input, const Solver& base, std::size_t n_min = 0) {
  if (n_min == 0) n_min = default_shrink_threshold(input.dim());
  const BoxSet m = prune_zero_volume(input);
  if (m.size() <= n_min) return base(m);

  ShrinkResult r = shrink_split(m, n_min);
  ExactVolume total = r.note.value_or(0);
  for (const auto& piece : r.pieces) {
    // Tiny thresholds can stall the split; fall back to the base solver then.
    total += piece.size() < m.size() ? solve_with_shrink(piece, base, n_min) : base(piece);
  }
  return total;
}

}  // namespace kleebox
