#pragma once

// Boxes, instances and exact volumes.
//
// A box is the closed set [lo_0,hi_0] x ... x [lo_{d-1},hi_{d-1}] with integer
// corners. Zero-width sides are legal; such boxes simply have volume 0.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kleebox/error.hpp"

namespace kleebox {

using Coord = std::int64_t;
using ExactVolume = boost::multiprecision::cpp_int;

inline Coord checked_add(Coord a, Coord b) {
  Coord r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("coordinate overflow in addition");
  return r;
}

inline Coord checked_sub(Coord a, Coord b) {
  Coord r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("coordinate overflow in subtraction");
  return r;
}

inline Coord checked_mul(Coord a, Coord b) {
  Coord r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("coordinate overflow in multiplication");
  return r;
}

/// Length of [lo, hi] for lo <= hi. Exact over the whole Coord range.
inline std::uint64_t extent(Coord lo, Coord hi) {
  return static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
}

class AxisBox {
 public:
  AxisBox(std::vector<Coord> lo, std::vector<Coord> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.empty()) throw ValidationError("box must have at least one dimension");
    if (lo_.size() != hi_.size()) throw ValidationError("box corners have different lengths");
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      if (lo_[i] > hi_[i]) {
        throw ValidationError("box has lo > hi in dimension " + std::to_string(i));
      }
    }
  }

  /// Box from per-dimension [lo, hi] pairs, e.g. AxisBox::of({{0, 2}, {1, 3}}).
  static AxisBox of(std::initializer_list<std::pair<Coord, Coord>> sides) {
    std::vector<Coord> lo, hi;
    for (auto [l, h] : sides) {
      lo.push_back(l);
      hi.push_back(h);
    }
    return AxisBox(std::move(lo), std::move(hi));
  }

  /// The cube [corner_0, corner_0 + side] x ...
  static AxisBox cube(const std::vector<Coord>& corner, Coord side) {
    std::vector<Coord> hi(corner.size());
    for (std::size_t i = 0; i < corner.size(); ++i) hi[i] = checked_add(corner[i], side);
    return AxisBox(corner, std::move(hi));
  }

  std::size_t dim() const { return lo_.size(); }
  const std::vector<Coord>& lo() const { return lo_; }
  const std::vector<Coord>& hi() const { return hi_; }
  Coord lo(std::size_t i) const { return lo_[i]; }
  Coord hi(std::size_t i) const { return hi_[i]; }
  std::uint64_t side(std::size_t i) const { return extent(lo_[i], hi_[i]); }

  bool is_degenerate() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (lo_[i] == hi_[i]) return true;
    }
    return false;
  }

  bool contains(const AxisBox& other) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (other.lo_[i] < lo_[i] || other.hi_[i] > hi_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const AxisBox&, const AxisBox&) = default;

 private:
  std::vector<Coord> lo_;
  std::vector<Coord> hi_;
};

/// A KMP instance: a dimension and an ordered list of boxes of that dimension.
class BoxSet {
 public:
  explicit BoxSet(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw ValidationError("instance dimension must be positive");
  }

  BoxSet(std::size_t dim, std::vector<AxisBox> boxes) : BoxSet(dim) {
    boxes_.reserve(boxes.size());
    for (auto& b : boxes) push_back(std::move(b));
  }

  void push_back(AxisBox b) {
    if (b.dim() != dim_) {
      throw ValidationError("box of dimension " + std::to_string(b.dim()) +
                            " in instance of dimension " + std::to_string(dim_));
    }
    boxes_.push_back(std::move(b));
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return boxes_.size(); }
  bool empty() const { return boxes_.empty(); }
  const AxisBox& operator[](std::size_t i) const { return boxes_[i]; }
  const std::vector<AxisBox>& boxes() const { return boxes_; }
  auto begin() const { return boxes_.begin(); }
  auto end() const { return boxes_.end(); }

  friend bool operator==(const BoxSet&, const BoxSet&) = default;

 private:
  std::size_t dim_;
  std::vector<AxisBox> boxes_;
};

inline ExactVolume box_volume(const AxisBox& b) {
  ExactVolume v = 1;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    const std::uint64_t s = b.side(i);
    if (s == 0) return 0;
    v *= s;
  }
  return v;
}

/// Sum of the box volumes, ignoring overlaps.
inline ExactVolume total_box_volume(const BoxSet& m) {
  ExactVolume v = 0;
  for (const auto& b : m) v += box_volume(b);
  return v;
}

inline AxisBox translate(const AxisBox& b, const std::vector<Coord>& offset) {
  if (offset.size() != b.dim()) throw ValidationError("translation offset has wrong dimension");
  std::vector<Coord> lo(b.dim()), hi(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) {
    lo[i] = checked_add(b.lo(i), offset[i]);
    hi[i] = checked_add(b.hi(i), offset[i]);
  }
  return AxisBox(std::move(lo), std::move(hi));
}

inline BoxSet translate(const BoxSet& m, const std::vector<Coord>& offset) {
  BoxSet out(m.dim());
  for (const auto& b : m) out.push_back(translate(b, offset));
  return out;
}

/// Multiplies every coordinate by a positive factor.
inline AxisBox scale(const AxisBox& b, Coord factor) {
  if (factor <= 0) throw ParameterError("scale factor must be positive");
  std::vector<Coord> lo(b.dim()), hi(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) {
    lo[i] = checked_mul(b.lo(i), factor);
    hi[i] = checked_mul(b.hi(i), factor);
  }
  return AxisBox(std::move(lo), std::move(hi));
}

inline BoxSet scale(const BoxSet& m, Coord factor) {
  BoxSet out(m.dim());
  for (const auto& b : m) out.push_back(scale(b, factor));
  return out;
}

struct Translated {
  BoxSet instance;
  std::vector<Coord> offset;  // subtracted from every box
};

/// Shifts the instance so that the minimum lower coordinate in every dimension is 0.
inline Translated normalize_translate(const BoxSet& m) {
  if (m.empty()) throw ValidationError("empty instance has no translation frame");
  std::vector<Coord> offset = m[0].lo();
  for (const auto& b : m) {
    for (std::size_t i = 0; i < m.dim(); ++i) offset[i] = std::min(offset[i], b.lo(i));
  }
  std::vector<Coord> neg(offset.size());
  for (std::size_t i = 0; i < offset.size(); ++i) neg[i] = checked_sub(0, offset[i]);
  return {translate(m, neg), std::move(offset)};
}

/// Drops boxes of volume 0. Never changes the volume of the union.
inline BoxSet prune_zero_volume(const BoxSet& m) {
  BoxSet out(m.dim());
  for (const auto& b : m) {
    if (!b.is_degenerate()) out.push_back(b);
  }
  return out;
}

/// b intersected with the slab lo <= x_dim <= hi. Empty intersections are absent;
/// touching intersections come back as degenerate boxes.
inline std::optional<AxisBox> clip_box(const AxisBox& b, std::size_t dim, Coord lo, Coord hi) {
  if (lo > hi) throw ValidationError("clip slab has lo > hi");
  if (dim >= b.dim()) throw ValidationError("clip dimension out of range");
  const Coord l = std::max(b.lo(dim), lo);
  const Coord h = std::min(b.hi(dim), hi);
  if (l > h) return std::nullopt;
  std::vector<Coord> nlo = b.lo(), nhi = b.hi();
  nlo[dim] = l;
  nhi[dim] = h;
  return AxisBox(std::move(nlo), std::move(nhi));
}

/// Distinct lo/hi values of dimension `dim`, strictly increasing.
inline std::vector<Coord> endpoints(const BoxSet& m, std::size_t dim) {
  if (dim >= m.dim()) throw ValidationError("endpoint dimension out of range");
  std::vector<Coord> xs;
  xs.reserve(2 * m.size());
  for (const auto& b : m) {
    xs.push_back(b.lo(dim));
    xs.push_back(b.hi(dim));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// ---------------------------------------------------------------------------
// Instance classes

struct ClassTag {
  enum class Kind { General, Hypervolume, UnitCube, Cube, Grounded };

  Kind kind = Kind::General;
  int k = 0;  // only meaningful for Grounded

  static ClassTag general() { return {Kind::General, 0}; }
  static ClassTag hypervolume() { return {Kind::Hypervolume, 0}; }
  static ClassTag unit_cube() { return {Kind::UnitCube, 0}; }
  static ClassTag cube() { return {Kind::Cube, 0}; }
  static ClassTag grounded(int k) { return {Kind::Grounded, k}; }

  friend bool operator==(const ClassTag& a, const ClassTag& b) {
    return a.kind == b.kind && (a.kind != Kind::Grounded || a.k == b.k);
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::General: return "general";
      case Kind::Hypervolume: return "hypervolume";
      case Kind::UnitCube: return "unitcube";
      case Kind::Cube: return "cube";
      case Kind::Grounded: return "grounded(" + std::to_string(k) + ")";
    }
    return "general";
  }

  static ClassTag parse(const std::string& s) {
    if (s == "general") return general();
    if (s == "hypervolume") return hypervolume();
    if (s == "unitcube") return unit_cube();
    if (s == "cube") return cube();
    if (s.starts_with("grounded(") && s.ends_with(")") && s.size() > 10) {
      const std::string digits = s.substr(9, s.size() - 10);
      if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
          digits.size() <= 6) {
        return grounded(std::stoi(digits));
      }
    }
    throw ValidationError("unknown class tag '" + s + "'");
  }
};

/// Every class an instance belongs to. The classes nest:
/// UnitCube => Cube, Grounded(k+1) => Grounded(k), Grounded(d) <=> Hypervolume.
struct ClassSet {
  std::size_t dim = 1;
  bool cube = true;
  bool unit_cube = true;
  int grounded_max = 0;  // largest k such that lo[i] == 0 for all boxes and i < k

  bool hypervolume() const { return grounded_max == static_cast<int>(dim); }

  bool contains(const ClassTag& t) const {
    switch (t.kind) {
      case ClassTag::Kind::General: return true;
      case ClassTag::Kind::Hypervolume: return hypervolume();
      case ClassTag::Kind::UnitCube: return unit_cube;
      case ClassTag::Kind::Cube: return cube;
      case ClassTag::Kind::Grounded: return t.k >= 0 && t.k <= grounded_max;
    }
    return false;
  }

  std::vector<ClassTag> tags() const {
    std::vector<ClassTag> out{ClassTag::general()};
    if (hypervolume()) out.push_back(ClassTag::hypervolume());
    if (cube) out.push_back(ClassTag::cube());
    if (unit_cube) out.push_back(ClassTag::unit_cube());
    for (int k = grounded_max; k >= 0; --k) out.push_back(ClassTag::grounded(k));
    return out;
  }
};

inline ClassSet classify(const BoxSet& m) {
  ClassSet cs;
  cs.dim = m.dim();
  cs.grounded_max = static_cast<int>(m.dim());
  std::optional<std::uint64_t> common_side;
  for (const auto& b : m) {
    int g = 0;
    while (g < cs.grounded_max && b.lo(g) == 0) ++g;
    cs.grounded_max = g;

    bool is_cube = true;
    for (std::size_t i = 1; i < b.dim(); ++i) is_cube = is_cube && b.side(i) == b.side(0);
    cs.cube = cs.cube && is_cube;
    if (!common_side) common_side = b.side(0);
    cs.unit_cube = cs.unit_cube && is_cube && *common_side == b.side(0);
  }
  cs.unit_cube = cs.unit_cube && cs.cube;
  return cs;
}

inline bool satisfies(const BoxSet& m, const ClassTag& t) { return classify(m).contains(t); }

}  // namespace kleebox
