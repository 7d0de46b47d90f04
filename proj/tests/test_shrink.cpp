#include <gtest/gtest.h>

#include "kleebox/harness.hpp"
#include "kleebox/shrink.hpp"

using namespace kleebox;

namespace {

const Solver kSweep = [](const BoxSet& m) { return volume_sweep(m); };

ExactVolume split_total(const ShrinkResult& r) {
  ExactVolume v = r.note.value_or(0);
  for (const auto& p : r.pieces) v += volume_grid_oracle(p);
  return v;
}

}  // namespace

TEST(ShrinkSplit, PieceBound) {
  EXPECT_EQ(shrink_piece_bound(40, 2), 34u);  // ceil(40 * 5/6)
  EXPECT_EQ(shrink_piece_bound(36, 1), 24u);  // ceil(36 * 2/3)
  EXPECT_EQ(shrink_piece_bound(80, 3), 72u);  // ceil(80 * 8/9) = ceil(71.1)
}

TEST(ShrinkSplit, SmallInstancesPassThrough) {
  const BoxSet m = gen_instance({ClassTag::general(), 2, 23, 50, 1});
  const ShrinkResult r = shrink_split(m);
  ASSERT_EQ(r.pieces.size(), 1u);
  EXPECT_EQ(r.pieces[0], m);
  EXPECT_FALSE(r.note.has_value());
}

TEST(ShrinkSplit, RandomInstanceBoundsAndVolume) {
  const BoxSet m = gen_instance({ClassTag::general(), 2, 40, 30, 11});
  const ShrinkResult r = shrink_split(m);
  EXPECT_LE(r.pieces.size(), 5u);
  for (const auto& p : r.pieces) EXPECT_LE(p.size(), 34u);
  EXPECT_EQ(split_total(r), volume_grid_oracle(m));
}

TEST(ShrinkSplit, NestedSquaresSettleTheMiddleCell) {
  // [-(j+1), j+1]^2 for j < 24: the split points are -5 and 4 on both axes,
  // and every square with j >= 4 covers the middle cell [-5,4]^2.
  BoxSet m(2);
  for (Coord j = 0; j < 24; ++j) m.push_back(AxisBox::of({{-(j + 1), j + 1}, {-(j + 1), j + 1}}));
  const ShrinkResult r = shrink_split(m);
  ASSERT_TRUE(r.note.has_value());
  EXPECT_EQ(*r.note, 81);
  EXPECT_EQ(r.pieces.size(), 4u);
  for (const auto& p : r.pieces) EXPECT_LE(p.size(), shrink_piece_bound(24, 2));
  EXPECT_EQ(split_total(r), 48 * 48);
}

TEST(ShrinkSplit, PiecesStayGrounded) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BoxSet m = gen_instance({ClassTag::grounded(1), 2, 40, 25, seed});
    const VolumePlan p = shrink_plan(m);
    EXPECT_EQ(p.claimed_class, ClassTag::grounded(1));
    for (const auto& t : p.terms) EXPECT_TRUE(satisfies(t.instance, ClassTag::grounded(1)));
    EXPECT_EQ(evaluate_plan(p, kSweep), volume_sweep(m));

    const BoxSet h = gen_instance({ClassTag::hypervolume(), 3, 40, 25, seed});
    for (const auto& piece : shrink_split(h).pieces) EXPECT_TRUE(satisfies(piece, ClassTag::hypervolume()));
  }
}

TEST(ShrinkSplit, ZeroVolumeBoxesArePruned) {
  BoxSet m = gen_instance({ClassTag::general(), 1, 12, 40, 2});
  for (int i = 0; i < 30; ++i) m.push_back(AxisBox::of({{i, i}}));
  // 12 real boxes: exactly the d = 1 threshold, so the instance still splits.
  const ShrinkResult r = shrink_split(m);
  for (const auto& p : r.pieces) {
    for (const auto& b : p) EXPECT_FALSE(b.is_degenerate());
  }
  EXPECT_EQ(split_total(r), volume_sweep(m));
}

TEST(SolveWithShrink, Examples) {
  const BoxSet small = gen_instance({ClassTag::general(), 2, 5, 30, 3});
  int calls = 0;
  const Solver counting = [&calls](const BoxSet& b) {
    ++calls;
    return volume_sweep(b);
  };
  EXPECT_EQ(solve_with_shrink(small, counting, 8), volume_sweep(small));
  EXPECT_EQ(calls, 1);

  const BoxSet m = gen_instance({ClassTag::general(), 2, 60, 200, 9});
  EXPECT_EQ(solve_with_shrink(m, kSweep, 8), volume_sweep(m));

  EXPECT_EQ(solve_with_shrink(BoxSet(3), kSweep), 0);
}

TEST(SolveWithShrink, AgreesWithSweepAcrossDimensions) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t d = 1 + seed % 3;
    const BoxSet m = gen_instance({ClassTag::general(), d, 40 + seed, 100, seed});
    EXPECT_EQ(solve_with_shrink(m, kSweep), volume_sweep(m)) << "seed=" << seed;
    EXPECT_EQ(solve_with_shrink(m, kSweep, 1), volume_sweep(m)) << "seed=" << seed;
  }
}
