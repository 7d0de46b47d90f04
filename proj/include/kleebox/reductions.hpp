#pragma once

// Reductions between Klee's measure problem and its special cases. Each one
// turns an instance into a VolumePlan whose evaluation equals the instance's
// volume. Zero-volume boxes are dropped on entry.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <string>
#include <vector>

#include "kleebox/core.hpp"
#include "kleebox/plan.hpp"
#include "kleebox/staircase.hpp"

namespace kleebox {

/// Hypervolume -> UnitCube.
///
/// With D the largest coordinate, every box [0,b] grows into the cube
/// x_i [b_i - D, b_i]; the growth lies outside the positive orthant. The volume
/// of the cubes inside Q = [0,D]^d is then D^d + vol(cubes) - vol(cubes + Q).
inline VolumePlan reduce_hypervolume_to_unitcube(const BoxSet& input) {
  if (!classify(input).hypervolume()) throw ClassError("instance is not a hypervolume instance");
  VolumePlan plan;
  plan.claimed_class = ClassTag::unit_cube();
  const BoxSet m = prune_zero_volume(input);
  if (m.empty()) return plan;

  const std::size_t d = m.dim();
  Coord delta = 0;
  for (const auto& b : m) delta = std::max(delta, *std::max_element(b.hi().begin(), b.hi().end()));

  BoxSet cubes(d);
  for (const auto& b : m) {
    std::vector<Coord> lo(d);
    for (std::size_t i = 0; i < d; ++i) lo[i] = checked_sub(b.hi(i), delta);
    cubes.push_back(AxisBox(std::move(lo), b.hi()));
  }
  BoxSet with_quadrant = cubes;
  with_quadrant.push_back(AxisBox(std::vector<Coord>(d, 0), std::vector<Coord>(d, delta)));

  plan.constant = boost::multiprecision::pow(ExactVolume(delta), static_cast<unsigned>(d));
  plan.terms.push_back({+1, std::move(cubes)});
  plan.terms.push_back({-1, std::move(with_quadrant)});
  return plan;
}

/// Resizes cube `b` to side `s` while keeping b ∩ c unchanged. `c` must have
/// side s and `b` side at least s.
inline AxisBox reshape_to_cube(const AxisBox& b, const AxisBox& c) {
  const auto s = static_cast<Coord>(c.side(0));
  std::vector<Coord> lo(b.dim()), hi(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) {
    if (b.lo(i) >= c.lo(i)) {
      lo[i] = b.lo(i);
      hi[i] = checked_add(b.lo(i), s);
    } else if (b.hi(i) <= c.hi(i)) {
      lo[i] = checked_sub(b.hi(i), s);
      hi[i] = b.hi(i);
    } else {
      // b straddles c on this axis
      lo[i] = c.lo(i);
      hi[i] = c.hi(i);
    }
  }
  return AxisBox(std::move(lo), std::move(hi));
}

/// Cube -> UnitCube.
///
/// Repeatedly takes the smallest remaining cube C (lowest index on ties),
/// shrinks every other remaining cube to C's side without changing what it
/// covers inside C, and records C's contribution as
/// vol(shrunk + C) - vol(shrunk). Then C is deleted.
inline VolumePlan reduce_cube_to_unitcube(const BoxSet& input) {
  if (!classify(input).cube) throw ClassError("instance is not a cube instance");
  VolumePlan plan;
  plan.claimed_class = ClassTag::unit_cube();
  std::vector<AxisBox> remaining = prune_zero_volume(input).boxes();

  while (!remaining.empty()) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      if (remaining[i].side(0) < remaining[pick].side(0)) pick = i;
    }
    const AxisBox c = remaining[pick];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));

    BoxSet shrunk(input.dim());
    for (const auto& b : remaining) shrunk.push_back(reshape_to_cube(b, c));
    BoxSet with_c = shrunk;
    with_c.push_back(c);
    plan.terms.push_back({+1, std::move(with_c)});
    plan.terms.push_back({-1, std::move(shrunk)});
  }
  return plan;
}

/// KMP in dimension d -> Grounded(2k) in dimension d + k.
///
/// Axes 0..k-1 are each replaced by a staircase pair of axes (2i, 2i+1); the
/// remaining axes follow unchanged. With U the union of the embedded boxes and
/// D_S the union of lifted T1 layers for i in S and T0 layers otherwise,
///
///     vol(M) = vol(A) + sum over S of (-1)^|S| vol(D_S + U),
///
/// where A is the product of the staircases with [0,Δ]^(d-k).
inline VolumePlan reduce_kmp_to_grounded(const BoxSet& input, int k) {
  const std::size_t d = input.dim();
  if (k < 1 || static_cast<std::size_t>(k) > d) {
    throw ParameterError("k must satisfy 1 <= k <= d (k=" + std::to_string(k) +
                         ", d=" + std::to_string(d) + ")");
  }
  const auto kk = static_cast<std::size_t>(k);
  VolumePlan plan;
  plan.claimed_class = ClassTag::grounded(2 * k);
  const BoxSet pruned = prune_zero_volume(input);
  if (pruned.empty()) return plan;

  const BoxSet m = normalize_translate(pruned).instance;
  Coord delta = 0;
  for (const auto& b : m) delta = std::max(delta, *std::max_element(b.hi().begin(), b.hi().end()));
  std::vector<StaircaseParts> stairs;
  for (std::size_t i = 0; i < kk; ++i) {
    stairs.push_back(build_staircase(endpoints(m, i)));
    delta = std::max(delta, static_cast<Coord>(stairs.back().m()));
  }

  const std::size_t dim = d + kk;
  std::vector<AxisBox> embedded;
  for (const auto& b : m) {
    std::vector<Coord> lo(dim), hi(dim);
    for (std::size_t i = 0; i < kk; ++i) {
      const AxisBox c = stairs[i].embed_interval(b.lo(i), b.hi(i));
      lo[2 * i] = c.lo(0);
      hi[2 * i] = c.hi(0);
      lo[2 * i + 1] = c.lo(1);
      hi[2 * i + 1] = c.hi(1);
    }
    for (std::size_t t = kk; t < d; ++t) {
      lo[kk + t] = b.lo(t);
      hi[kk + t] = b.hi(t);
    }
    embedded.emplace_back(std::move(lo), std::move(hi));
  }

  // [0,Δ] on every axis except the staircase pair of layer i.
  auto lift = [&](std::size_t i, const AxisBox& c) {
    std::vector<Coord> lo(dim, 0), hi(dim, delta);
    lo[2 * i] = c.lo(0);
    hi[2 * i] = c.hi(0);
    lo[2 * i + 1] = c.lo(1);
    hi[2 * i + 1] = c.hi(1);
    return AxisBox(std::move(lo), std::move(hi));
  };

  for (unsigned s = 0; s < (1u << kk); ++s) {
    BoxSet inst(dim);
    for (std::size_t i = 0; i < kk; ++i) {
      const BoxSet& layer = (s >> i) & 1u ? stairs[i].t1 : stairs[i].t0;
      for (const auto& c : layer) inst.push_back(lift(i, c));
    }
    for (const auto& e : embedded) inst.push_back(e);
    plan.terms.push_back({std::popcount(s) % 2 == 0 ? +1 : -1, std::move(inst)});
  }

  plan.constant = boost::multiprecision::pow(ExactVolume(delta), static_cast<unsigned>(d - kk));
  for (const auto& st : stairs) plan.constant *= st.a_volume();
  return plan;
}

}  // namespace kleebox
