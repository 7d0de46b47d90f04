#pragma once

// Exact volume-of-union solvers.
//
//  * volume_grid_oracle     coordinate-compressed grid, enumerates every cell.
//                           Slow, simple, used as ground truth.
//  * volume_interval_union  d = 1, sort and merge.
//  * volume_sweep           d = 2 plane sweep over a counted segment tree;
//                           d >= 3 sweeps the last axis and recurses.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "kleebox/core.hpp"

namespace kleebox {

inline constexpr std::uint64_t kDefaultOracleCellCap = std::uint64_t{1} << 24;

/// Oracle cell cap, honoring KLEEBOX_ORACLE_CELL_CAP when it holds a positive integer.
inline std::uint64_t default_oracle_cell_cap() {
  if (const char* env = std::getenv("KLEEBOX_ORACLE_CELL_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultOracleCellCap;
}

struct OracleOptions {
  std::uint64_t cell_cap = default_oracle_cell_cap();
};

namespace detail {

inline ExactVolume from_u128(unsigned __int128 v) {
  ExactVolume r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

// Advances a mixed-radix counter over [lo, hi) per digit; false once exhausted.
inline bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& lo,
                       const std::vector<std::size_t>& hi) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < hi[i]) return true;
    idx[i] = lo[i];
  }
  return false;
}

}  // namespace detail

inline ExactVolume volume_grid_oracle(const BoxSet& m, const OracleOptions& opts = {}) {
  const std::size_t d = m.dim();
  if (m.empty()) return 0;

  std::vector<std::vector<Coord>> xs(d);
  std::vector<std::size_t> cells(d);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    xs[i] = endpoints(m, i);
    cells[i] = xs[i].size() - 1;
    if (cells[i] == 0) return 0;
    if (__builtin_mul_overflow(total, cells[i], &total) || total > opts.cell_cap) {
      throw GuardError("oracle instance too large (cell cap " + std::to_string(opts.cell_cap) + ")");
    }
  }

  std::vector<std::size_t> stride(d);
  stride[d - 1] = 1;
  for (std::size_t i = d - 1; i-- > 0;) stride[i] = stride[i + 1] * cells[i + 1];

  // Cell j of axis i is [xs[i][j], xs[i][j+1]); a box covers it iff lo <= xs[i][j] < hi.
  std::vector<std::uint8_t> covered(total, 0);
  std::vector<std::size_t> lo(d), hi(d), idx(d);
  for (const auto& b : m) {
    bool empty = false;
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::lower_bound(xs[i].begin(), xs[i].end(), b.lo(i)) - xs[i].begin();
      hi[i] = std::lower_bound(xs[i].begin(), xs[i].end(), b.hi(i)) - xs[i].begin();
      empty = empty || lo[i] == hi[i];
    }
    if (empty) continue;
    idx = lo;
    do {
      std::size_t flat = 0;
      for (std::size_t i = 0; i < d; ++i) flat += idx[i] * stride[i];
      covered[flat] = 1;
    } while (detail::next_index(idx, lo, hi));
  }

  ExactVolume bounding = 1;
  for (std::size_t i = 0; i < d; ++i) bounding *= extent(xs[i].front(), xs[i].back());
  const bool fits_u128 = boost::multiprecision::msb(bounding) < 127;

  std::vector<std::size_t> zero(d, 0);
  std::fill(idx.begin(), idx.end(), 0);
  unsigned __int128 fast = 0;
  ExactVolume slow = 0;
  std::size_t flat = 0;
  do {
    if (covered[flat]) {
      if (fits_u128) {
        unsigned __int128 v = 1;
        for (std::size_t i = 0; i < d; ++i) v *= extent(xs[i][idx[i]], xs[i][idx[i] + 1]);
        fast += v;
      } else {
        ExactVolume v = 1;
        for (std::size_t i = 0; i < d; ++i) v *= extent(xs[i][idx[i]], xs[i][idx[i] + 1]);
        slow += v;
      }
    }
    ++flat;
  } while (detail::next_index(idx, zero, cells));

  return fits_u128 ? detail::from_u128(fast) : slow;
}

inline ExactVolume volume_interval_union(const BoxSet& m) {
  if (m.dim() != 1) {
    throw ValidationError("interval union needs dimension 1, got " + std::to_string(m.dim()));
  }
  std::vector<std::pair<Coord, Coord>> iv;
  iv.reserve(m.size());
  for (const auto& b : m) {
    if (b.lo(0) < b.hi(0)) iv.emplace_back(b.lo(0), b.hi(0));
  }
  std::sort(iv.begin(), iv.end());
  ExactVolume total = 0;
  std::size_t i = 0;
  while (i < iv.size()) {
    Coord lo = iv[i].first, hi = iv[i].second;
    for (++i; i < iv.size() && iv[i].first <= hi; ++i) hi = std::max(hi, iv[i].second);
    total += extent(lo, hi);
  }
  return total;
}

namespace detail {

// Segment tree over elementary intervals [ys[j], ys[j+1]) keeping, per node, how
// many boxes cover the whole node and the covered length below it.
class CoverTree {
 public:
  explicit CoverTree(std::vector<Coord> ys)
      : ys_(std::move(ys)), count_(4 * ys_.size()), len_(4 * ys_.size()) {}

  void update(std::size_t l, std::size_t r, int delta) {
    if (l < r) update(1, 0, ys_.size() - 1, l, r, delta);
  }

  std::uint64_t covered() const { return len_[1]; }

 private:
  void update(std::size_t node, std::size_t nl, std::size_t nr, std::size_t l, std::size_t r,
              int delta) {
    if (r <= nl || nr <= l) return;
    if (l <= nl && nr <= r) {
      count_[node] += delta;
    } else {
      const std::size_t mid = (nl + nr) / 2;
      update(2 * node, nl, mid, l, r, delta);
      update(2 * node + 1, mid, nr, l, r, delta);
    }
    if (count_[node] > 0) {
      len_[node] = extent(ys_[nl], ys_[nr]);
    } else if (nr - nl == 1) {
      len_[node] = 0;
    } else {
      len_[node] = len_[2 * node] + len_[2 * node + 1];
    }
  }

  std::vector<Coord> ys_;
  std::vector<int> count_;
  std::vector<std::uint64_t> len_;
};

inline ExactVolume sweep_2d(const BoxSet& m) {
  struct Event {
    Coord x;
    int delta;
    std::size_t l, r;
  };
  const BoxSet boxes = prune_zero_volume(m);
  if (boxes.empty()) return 0;
  std::vector<Coord> ys = endpoints(boxes, 1);
  auto rank = [&ys](Coord y) {
    return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
  };
  std::vector<Event> events;
  events.reserve(2 * boxes.size());
  for (const auto& b : boxes) {
    const std::size_t l = rank(b.lo(1)), r = rank(b.hi(1));
    events.push_back({b.lo(0), +1, l, r});
    events.push_back({b.hi(0), -1, l, r});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

  CoverTree tree(std::move(ys));
  ExactVolume area = 0;
  Coord prev = events.front().x;
  for (const auto& e : events) {
    if (e.x != prev) {
      const std::uint64_t len = tree.covered();
      if (len != 0) area += ExactVolume(len) * extent(prev, e.x);
      prev = e.x;
    }
    tree.update(e.l, e.r, e.delta);
  }
  return area;
}

}  // namespace detail

inline ExactVolume volume_sweep(const BoxSet& m) {
  const std::size_t d = m.dim();
  if (d == 1) return volume_interval_union(m);
  if (d == 2) return detail::sweep_2d(m);

  const BoxSet boxes = prune_zero_volume(m);
  if (boxes.empty()) return 0;
  const std::vector<Coord> zs = endpoints(boxes, d - 1);
  ExactVolume total = 0;
  for (std::size_t j = 0; j + 1 < zs.size(); ++j) {
    BoxSet slab(d - 1);
    for (const auto& b : boxes) {
      if (b.lo(d - 1) <= zs[j] && zs[j + 1] <= b.hi(d - 1)) {
        slab.push_back(AxisBox({b.lo().begin(), b.lo().end() - 1}, {b.hi().begin(), b.hi().end() - 1}));
      }
    }
    if (slab.empty()) continue;
    total += volume_sweep(slab) * extent(zs[j], zs[j + 1]);
  }
  return total;
}

enum class Algo { Auto, Oracle, Sweep };

inline std::string to_string(Algo a) {
  switch (a) {
    case Algo::Auto: return "auto";
    case Algo::Oracle: return "oracle";
    case Algo::Sweep: return "sweep";
  }
  return "auto";
}

inline ExactVolume volume(const BoxSet& m, Algo algo = Algo::Auto, const OracleOptions& opts = {}) {
  switch (algo) {
    case Algo::Oracle: return volume_grid_oracle(m, opts);
    case Algo::Sweep: return volume_sweep(m);
    case Algo::Auto: break;
  }
  return m.dim() == 1 ? volume_interval_union(m) : volume_sweep(m);
}

}  // namespace kleebox
