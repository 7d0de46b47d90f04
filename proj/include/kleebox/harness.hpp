#pragma once

// Seeded instance generators, reduction verification and benchmarking.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "kleebox/core.hpp"
#include "kleebox/io.hpp"
#include "kleebox/plan.hpp"
#include "kleebox/reductions.hpp"
#include "kleebox/shrink.hpp"
#include "kleebox/solvers.hpp"

namespace kleebox {

// ---------------------------------------------------------------------------
// Random instances

/// SplitMix64 (Steele, Lea, Flood 2014). Bounded draws use rejection sampling,
/// so streams are identical on every platform.
class SplitMix64 {
 public:
  static constexpr const char* kName = "splitmix64";

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Independent stream `id` of master seed `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t id) {
    return SplitMix64(mix(seed ^ mix(id + 0x9E3779B97F4A7C15ull)));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// Uniform integer in [lo, hi].
  Coord uniform(Coord lo, Coord hi) {
    const std::uint64_t range = extent(lo, hi) + 1;
    if (range == 0) return static_cast<Coord>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<Coord>(static_cast<std::uint64_t>(lo) + x % range);
  }

 private:
  std::uint64_t state_;
};

struct GenSpec {
  ClassTag cls = ClassTag::general();
  std::size_t d = 2;
  std::size_t n = 0;
  Coord coord_max = 100;
  std::uint64_t seed = 0;
};

/// Deterministic instance of class spec.cls with coordinates drawn from [0, coord_max]
/// (cubes may reach 2 * coord_max). Box j uses its own stream of spec.seed.
inline BoxSet gen_instance(const GenSpec& spec) {
  if (spec.d < 1) throw ParameterError("generator needs d >= 1");
  if (spec.coord_max < 1) throw ParameterError("generator needs coord_max >= 1");
  if (spec.cls.kind == ClassTag::Kind::Grounded &&
      (spec.cls.k < 0 || static_cast<std::size_t>(spec.cls.k) > spec.d)) {
    throw ParameterError("grounded generator needs 0 <= k <= d");
  }
  const Coord cm = spec.coord_max;
  Coord unit_side = 0;
  if (spec.cls.kind == ClassTag::Kind::UnitCube) {
    unit_side = SplitMix64::stream(spec.seed, UINT64_MAX).uniform(1, cm);
  }

  BoxSet m(spec.d);
  for (std::size_t j = 0; j < spec.n; ++j) {
    SplitMix64 rng = SplitMix64::stream(spec.seed, j);
    std::vector<Coord> lo(spec.d), hi(spec.d);
    switch (spec.cls.kind) {
      case ClassTag::Kind::Hypervolume:
        for (std::size_t i = 0; i < spec.d; ++i) hi[i] = rng.uniform(1, cm);
        break;
      case ClassTag::Kind::Cube:
      case ClassTag::Kind::UnitCube: {
        const Coord side = spec.cls.kind == ClassTag::Kind::Cube ? rng.uniform(1, cm) : unit_side;
        for (std::size_t i = 0; i < spec.d; ++i) {
          lo[i] = rng.uniform(0, cm - 1);
          hi[i] = lo[i] + side;
        }
        break;
      }
      case ClassTag::Kind::General:
      case ClassTag::Kind::Grounded: {
        const std::size_t grounded =
            spec.cls.kind == ClassTag::Kind::Grounded ? static_cast<std::size_t>(spec.cls.k) : 0;
        for (std::size_t i = 0; i < spec.d; ++i) {
          if (i < grounded) {
            hi[i] = rng.uniform(1, cm);
          } else {
            lo[i] = rng.uniform(0, cm - 1);
            hi[i] = rng.uniform(lo[i] + 1, cm);
          }
        }
        break;
      }
    }
    m.push_back(AxisBox(std::move(lo), std::move(hi)));
  }
  return m;
}

/// SHA-256 (hex) of the canonical instance encoding: sorted keys, decimal integers.
inline std::string instance_digest(const BoxSet& m) {
  const std::string canon = io::instance_to_json(m).dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(canon.data(), canon.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

enum class Reduction { HypToUnitCube, CubeToUnitCube, KmpToGrounded, Shrink };

struct ReductionSpec {
  Reduction kind = Reduction::KmpToGrounded;
  int k = 1;                        // kmp-to-grounded only
  std::size_t shrink_threshold = 0;  // shrink only; 0 means 12d

  std::string name() const {
    switch (kind) {
      case Reduction::HypToUnitCube: return "hyp-to-unitcube";
      case Reduction::CubeToUnitCube: return "cube-to-unitcube";
      case Reduction::KmpToGrounded: return "kmp-to-grounded";
      case Reduction::Shrink: return "shrink";
    }
    return "";
  }

  static std::optional<Reduction> parse(const std::string& s) {
    if (s == "hyp-to-unitcube") return Reduction::HypToUnitCube;
    if (s == "cube-to-unitcube") return Reduction::CubeToUnitCube;
    if (s == "kmp-to-grounded") return Reduction::KmpToGrounded;
    if (s == "shrink") return Reduction::Shrink;
    return std::nullopt;
  }

  /// Class a source instance must belong to.
  ClassTag source_class() const {
    switch (kind) {
      case Reduction::HypToUnitCube: return ClassTag::hypervolume();
      case Reduction::CubeToUnitCube: return ClassTag::cube();
      default: return ClassTag::general();
    }
  }
};

inline VolumePlan build_plan(const ReductionSpec& r, const BoxSet& m) {
  switch (r.kind) {
    case Reduction::HypToUnitCube: return reduce_hypervolume_to_unitcube(m);
    case Reduction::CubeToUnitCube: return reduce_cube_to_unitcube(m);
    case Reduction::KmpToGrounded: return reduce_kmp_to_grounded(m, r.k);
    case Reduction::Shrink: return shrink_plan(m, r.shrink_threshold);
  }
  return {};
}

struct VerifyReport {
  std::string reduction;
  std::string instance_digest;
  ExactVolume source_volume = 0;
  ExactVolume plan_volume = 0;
  bool class_ok = false;
  bool size_ok = false;
  bool pass = false;
  std::string reason;  // empty when pass
};

inline io::json report_to_json(const VerifyReport& r) {
  io::json j = {{"reduction", r.reduction},
                {"instance_digest", r.instance_digest},
                {"source_volume", io::volume_to_string(r.source_volume)},
                {"plan_volume", io::volume_to_string(r.plan_volume)},
                {"class_ok", r.class_ok},
                {"size_ok", r.size_ok},
                {"pass", r.pass}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

/// Whether the plan has the term count, term dimension and term sizes the
/// reduction guarantees for source `m`.
inline bool plan_size_ok(const ReductionSpec& r, const BoxSet& m, const VolumePlan& p) {
  const std::size_t n = prune_zero_volume(m).size();
  const std::size_t d = m.dim();
  auto all_terms = [&p](std::size_t dim, std::size_t max_boxes) {
    for (const auto& t : p.terms) {
      if (t.instance.dim() != dim || t.instance.size() > max_boxes) return false;
    }
    return true;
  };
  switch (r.kind) {
    case Reduction::HypToUnitCube:
      if (n == 0) return p.terms.empty();
      return p.terms.size() == 2 && all_terms(d, n + 1) && p.terms[0].instance.size() == n &&
             p.terms[1].instance.size() == n + 1;
    case Reduction::CubeToUnitCube:
      return p.terms.size() == 2 * n && all_terms(d, n);
    case Reduction::KmpToGrounded: {
      if (n == 0) return p.terms.empty();
      const auto k = static_cast<std::size_t>(r.k);
      return p.terms.size() == (std::size_t{1} << k) && all_terms(d + k, (2 * k + 1) * n);
    }
    case Reduction::Shrink: {
      const std::size_t threshold = r.shrink_threshold ? r.shrink_threshold : default_shrink_threshold(d);
      if (n < threshold) return p.terms.size() == 1 && p.terms[0].instance == m;
      return p.terms.size() <= 2 * d + 1 && all_terms(d, shrink_piece_bound(n, d));
    }
  }
  return false;
}

/// Checks a given plan against source `m`: value, term classes, size bounds.
inline VerifyReport check_plan(const ReductionSpec& r, const BoxSet& m, const VolumePlan& p,
                               const Solver& solver) {
  VerifyReport rep;
  rep.reduction = r.kind == Reduction::KmpToGrounded ? r.name() + "(k=" + std::to_string(r.k) + ")" : r.name();
  rep.instance_digest = instance_digest(m);
  try {
    rep.source_volume = solver(m);
    rep.plan_volume = p.constant;
    for (const auto& t : p.terms) rep.plan_volume += ExactVolume(t.coeff) * solver(t.instance);
  } catch (const Error& e) {
    rep.reason = std::string("solver: ") + e.what();
    return rep;
  }
  rep.class_ok = first_class_violation(p) < 0;
  rep.size_ok = plan_size_ok(r, m, p);
  rep.pass = rep.class_ok && rep.size_ok && rep.source_volume == rep.plan_volume;
  if (!rep.pass) {
    rep.reason = rep.source_volume != rep.plan_volume ? "volume mismatch"
                 : !rep.class_ok                      ? "term violates " + p.claimed_class.to_string()
                                                      : "size bound violated";
  }
  return rep;
}

inline VerifyReport verify_reduction(const ReductionSpec& r, const BoxSet& m,
                                     const Solver& solver = [](const BoxSet& b) {
                                       return volume_grid_oracle(b);
                                     }) {
  if (!satisfies(m, r.source_class())) {
    VerifyReport rep;
    rep.reduction = r.name();
    rep.instance_digest = instance_digest(m);
    rep.reason = "precondition: instance is not " + r.source_class().to_string();
    return rep;
  }
  VolumePlan plan;
  try {
    plan = build_plan(r, m);
  } catch (const Error& e) {
    VerifyReport rep;
    rep.reduction = r.name();
    rep.instance_digest = instance_digest(m);
    rep.reason = std::string("reduction: ") + e.what();
    return rep;
  }
  return check_plan(r, m, plan, solver);
}

// ---------------------------------------------------------------------------
// Benchmarks

struct BenchCase {
  std::string solver;  // auto | oracle | sweep | shrink
  GenSpec spec;
  int reps = 1;
};

struct BenchRow {
  GenSpec spec;
  std::string solver;
  int reps = 0;
  std::int64_t wall_ns = 0;  // fastest repetition, steady clock
  std::optional<ExactVolume> volume;
  std::string error;
};

inline Solver named_solver(const std::string& name, const OracleOptions& opts = {}) {
  if (name == "auto") return [](const BoxSet& m) { return volume(m, Algo::Auto); };
  if (name == "sweep") return [](const BoxSet& m) { return volume_sweep(m); };
  if (name == "oracle") return [opts](const BoxSet& m) { return volume_grid_oracle(m, opts); };
  if (name == "shrink") {
    return [](const BoxSet& m) { return solve_with_shrink(m, [](const BoxSet& b) { return volume_sweep(b); }); };
  }
  throw ParameterError("unknown solver '" + name + "'");
}

inline std::vector<BenchRow> bench_suite(const std::vector<BenchCase>& cases, const OracleOptions& opts = {}) {
  std::vector<BenchRow> rows;
  for (const auto& c : cases) {
    BenchRow row{c.spec, c.solver, c.reps, 0, std::nullopt, {}};
    try {
      const Solver solve = named_solver(c.solver, opts);
      const BoxSet m = gen_instance(c.spec);
      for (int rep = 0; rep < std::max(1, c.reps); ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        ExactVolume v = solve(m);
        const auto ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
        if (rep == 0 || ns < row.wall_ns) row.wall_ns = ns;
        if (row.volume && *row.volume != v) throw Error("volume differs between repetitions");
        row.volume = std::move(v);
      }
    } catch (const Error& e) {
      row.volume.reset();
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kleebox
