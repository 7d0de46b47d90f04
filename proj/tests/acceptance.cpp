// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any gating criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "kleebox/kleebox.hpp"

using namespace kleebox;

namespace {

const Solver kOracle = [](const BoxSet& m) { return volume_grid_oracle(m); };

const std::vector<ClassTag> kClasses{ClassTag::general(), ClassTag::hypervolume(), ClassTag::cube(),
                                     ClassTag::unit_cube()};

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Criterion {
  std::string name;
  double budget_s;
  bool gating;
  std::function<Outcome()> body;
};

std::string seed_tag(std::uint64_t seed) { return "seed " + std::to_string(seed); }

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t count = 0;
  for (std::size_t d = 1; d <= 4; ++d) {
    for (std::size_t n = 1; n <= 8; ++n) {
      for (const auto& cls : kClasses) {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
          const BoxSet m = gen_instance({cls, d, n, 100, seed});
          if (volume_sweep(m) != volume_grid_oracle(m)) {
            o.fail(cls.to_string() + " d=" + std::to_string(d) + " n=" + std::to_string(n) + " " + seed_tag(seed));
          }
          ++count;
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(count) + " instances";
  return o;
}

Outcome hyp_to_unitcube() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const BoxSet m = gen_instance({ClassTag::hypervolume(), 1 + seed % 3, 1 + seed % 8, 100, seed});
    const VolumePlan p = reduce_hypervolume_to_unitcube(m);
    if (p.claimed_class != ClassTag::unit_cube() || first_class_violation(p) >= 0) o.fail("class, " + seed_tag(seed));
    if (evaluate_plan(p, kOracle) != volume_grid_oracle(m)) o.fail("volume, " + seed_tag(seed));
  }
  if (o.ok) o.detail = "200 instances";
  return o;
}

Outcome cube_to_unitcube() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const BoxSet m = gen_instance({ClassTag::cube(), 1 + seed % 3, n, 100, seed});
    const VolumePlan p = reduce_cube_to_unitcube(m);
    if (p.terms.size() != 2 * n) o.fail("term count, " + seed_tag(seed));
    if (p.claimed_class != ClassTag::unit_cube() || first_class_violation(p) >= 0) o.fail("class, " + seed_tag(seed));
    if (evaluate_plan(p, kOracle) != volume_grid_oracle(m)) o.fail("volume, " + seed_tag(seed));
  }
  if (o.ok) o.detail = "200 instances";
  return o;
}

Outcome kmp_to_grounded() {
  Outcome o;
  const std::vector<std::pair<std::size_t, int>> cases{{1, 1}, {2, 1}, {2, 2}, {3, 1}};
  for (auto [d, k] : cases) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const std::size_t n = 1 + seed % 6;
      const BoxSet m = gen_instance({ClassTag::general(), d, n, 100, seed});
      const VolumePlan p = reduce_kmp_to_grounded(m, k);
      const std::string where = "d=" + std::to_string(d) + " k=" + std::to_string(k) + " " + seed_tag(seed);
      if (p.terms.size() != (std::size_t{1} << k)) o.fail("term count, " + where);
      if (p.claimed_class != ClassTag::grounded(2 * k) || first_class_violation(p) >= 0) o.fail("class, " + where);
      for (const auto& t : p.terms) {
        if (t.instance.dim() != d + static_cast<std::size_t>(k)) o.fail("term dimension, " + where);
        if (t.instance.size() > static_cast<std::size_t>(2 * k + 1) * n) o.fail("term size, " + where);
      }
      if (evaluate_plan(p, kOracle) != volume_grid_oracle(m)) o.fail("volume, " + where);
    }
  }
  if (o.ok) o.detail = "800 instances";
  return o;
}

Outcome staircase() {
  Outcome o;
  const auto meet = [](const BoxSet& region, const BoxSet& t) {
    BoxSet both = region;
    for (const auto& b : t) both.push_back(b);
    return volume_grid_oracle(region) + volume_grid_oracle(t) - volume_grid_oracle(both);
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SplitMix64 rng = SplitMix64::stream(seed, 7);
    const auto m = static_cast<std::size_t>(rng.uniform(2, 12));
    std::vector<Coord> xs{0};
    while (xs.size() < m) xs.push_back(xs.back() + rng.uniform(1, 1000));
    const StaircaseParts s = build_staircase(xs);
    const BoxSet a(2, s.a_boxes);
    for (std::size_t t = 0; t + 1 < m; ++t) {
      if (box_volume(s.a_boxes[t]) != xs[t + 1] - xs[t]) o.fail("vol(A_t), " + seed_tag(seed));
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = j; k < m; ++k) {
        const AxisBox c = s.embed(j, k);
        for (std::size_t t = 0; t + 1 < m; ++t) {
          if (c.contains(s.a_boxes[t]) != (j <= t && t < k)) o.fail("containment, " + seed_tag(seed));
        }
      }
    }
    if (volume_grid_oracle(a) != xs.back() - xs.front()) o.fail("vol(A), " + seed_tag(seed));
    if (meet(a, s.t0) != 0) o.fail("vol_A(T0), " + seed_tag(seed));
    if (meet(a, s.t1) != volume_grid_oracle(a)) o.fail("vol_A(T1), " + seed_tag(seed));
  }
  if (o.ok) o.detail = "100 endpoint lists";
  return o;
}

Outcome shrink() {
  Outcome o;
  const Solver sweep = [](const BoxSet& m) { return volume_sweep(m); };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 1 + seed % 3;
    const std::size_t n = 40 + (seed * 7) % 41;
    const BoxSet m = gen_instance({ClassTag::general(), d, n, 1000, seed});
    const ExactVolume expected = volume_sweep(m);
    const ShrinkResult r = shrink_split(m);
    const std::size_t bound = shrink_piece_bound(prune_zero_volume(m).size(), d);
    if (r.pieces.size() > 2 * d + 1) o.fail("piece count, " + seed_tag(seed));
    ExactVolume total = r.note.value_or(0);
    for (const auto& p : r.pieces) {
      if (prune_zero_volume(p).size() > bound) o.fail("piece size, " + seed_tag(seed));
      total += volume_sweep(p);
    }
    if (total != expected) o.fail("split volume, " + seed_tag(seed));
    if (solve_with_shrink(m, sweep) != expected) o.fail("solve_with_shrink, " + seed_tag(seed));
  }
  if (o.ok) o.detail = "100 instances";
  return o;
}

Outcome reshape() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SplitMix64 rng = SplitMix64::stream(seed, 11);
    const std::size_t d = 1 + seed % 3;
    const Coord s = rng.uniform(1, 20);
    const Coord sb = s + rng.uniform(0, 30);
    std::vector<Coord> cc(d), bc(d);
    for (std::size_t i = 0; i < d; ++i) {
      cc[i] = rng.uniform(0, 40);
      bc[i] = rng.uniform(-30, 50);
    }
    const AxisBox c = AxisBox::cube(cc, s);
    const AxisBox b = AxisBox::cube(bc, sb);
    const AxisBox r = reshape_to_cube(b, c);
    for (std::size_t i = 0; i < d; ++i) {
      if (r.side(i) != static_cast<std::uint64_t>(s)) o.fail("side, " + seed_tag(seed));
    }
    const auto meet = [&c](const AxisBox& x) {
      return volume_grid_oracle(BoxSet(c.dim(), {x})) + box_volume(c) - volume_grid_oracle(BoxSet(c.dim(), {x, c}));
    };
    if (meet(r) != meet(b)) o.fail("restriction, " + seed_tag(seed));
  }
  if (o.ok) o.detail = "200 pairs";
  return o;
}

Outcome serialization() {
  Outcome o;
  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "kleebox_acceptance.json";
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 1 + seed % 3;
    const BoxSet m = gen_instance({kClasses[seed % 4], d, 1 + seed % 10, Coord{1} << 40, seed});
    if (io::instance_from_json(io::parse_json(io::instance_to_json(m).dump())) != m) {
      o.fail("instance, " + seed_tag(seed));
    }
    const VolumePlan p = reduce_kmp_to_grounded(m, 1);
    if (io::plan_from_json(io::parse_json(io::plan_to_json(p).dump())) != p) o.fail("plan, " + seed_tag(seed));

    io::write_json_file(tmp.string(), io::instance_to_json(m));
    std::ostringstream out, err;
    if (cli::run({"solve", "--in", tmp.string()}, out, err) != 0) {
      o.fail("solve exit, " + seed_tag(seed));
      continue;
    }
    if (io::parse_json(out.str())["volume"] != io::volume_to_string(volume(m))) o.fail("solve output, " + seed_tag(seed));
  }
  std::filesystem::remove(tmp);
  if (o.ok) o.detail = "100 instances and plans";
  return o;
}

Outcome sweep_scaling() {
  Outcome o;
  std::vector<BenchCase> cases;
  for (std::size_t n = 1024; n <= 32768; n *= 2) cases.push_back({"sweep", {ClassTag::general(), 2, n, 1000000000, 1}, 3});
  const auto rows = bench_suite(cases);
  std::ostringstream ratios;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double r = static_cast<double>(rows[i].wall_ns) / static_cast<double>(std::max<std::int64_t>(1, rows[i - 1].wall_ns));
    ratios << (i > 1 ? " " : "") << static_cast<int>(r * 100 + 0.5) / 100.0;
    if (r > 3.0) o.fail("");
  }
  o.detail = "doubling ratios " + ratios.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"oracle equivalence of solvers", 60, true, oracle_equivalence},
      {"hypervolume to unit cube", 30, true, hyp_to_unitcube},
      {"cube to unit cube", 60, true, cube_to_unitcube},
      {"general to grounded", 120, true, kmp_to_grounded},
      {"staircase properties", 10, true, staircase},
      {"shrink split and recursive solve", 60, true, shrink},
      {"cube reshaping", 10, true, reshape},
      {"serialization round-trip and CLI parity", 10, true, serialization},
      {"sweep scaling (non-gating)", 0, false, sweep_scaling},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.fail("over time budget of " + std::to_string(static_cast<int>(c.budget_s)) + " s");
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  [" << timing << "]  " << o.detail << '\n';
    if (c.gating) all = all && o.ok;
  }
  std::cout << (all ? "acceptance: all gating criteria passed" : "acceptance: FAILED") << std::endl;
  return all ? 0 : 1;
}
