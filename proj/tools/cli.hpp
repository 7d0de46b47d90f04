#pragma once

// Command-line front end: gen, solve, reduce, verify, bench.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or malformed input,
// 3 oracle guard exceeded, 4 class precondition violated.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kleebox/kleebox.hpp"

namespace kleebox::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kGuard = 3, kClass = 4 };

namespace detail {

inline void emit(const std::optional<std::string>& path, const io::json& j, std::ostream& out) {
  if (path) {
    io::write_json_file(*path, j);
  } else {
    out << j.dump() << '\n';
  }
}

inline std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ParameterError("bad list item '" + item + "'");
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw ParameterError("empty list");
  return out;
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

inline ClassTag class_from_flag(const std::string& name, std::optional<int> k) {
  if (name == "grounded") {
    if (!k) throw ParameterError("--class grounded needs --k");
    return ClassTag::grounded(*k);
  }
  return ClassTag::parse(name);
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact volume of unions of axis-aligned boxes, with reductions between special cases"};
  app.name("kleebox");
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  std::string gen_class;
  std::optional<int> gen_k;
  std::size_t gen_d = 0, gen_n = 0;
  Coord gen_coord_max = 100;
  std::uint64_t gen_seed = 0;
  std::optional<std::string> gen_out;
  gen->add_option("--class", gen_class, "Instance class")
      ->required()
      ->check(CLI::IsMember({"general", "hypervolume", "cube", "unitcube", "grounded"}));
  gen->add_option("--k", gen_k, "Number of grounded axes (grounded only)");
  gen->add_option("--d", gen_d, "Dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--n", gen_n, "Number of boxes")->required();
  gen->add_option("--coord-max", gen_coord_max, "Largest coordinate drawn")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--out", gen_out, "Output file (default: stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Compute the volume of an instance");
  std::string solve_in, solve_algo = "auto";
  std::size_t solve_n_min = 0;
  solve->add_option("--in", solve_in, "Instance file")->required();
  solve->add_option("--algo", solve_algo, "Solver")->check(CLI::IsMember({"auto", "oracle", "sweep", "shrink"}));
  solve->add_option("--n-min", solve_n_min, "Shrink recursion threshold (default 12d)");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Write the volume plan of a reduction");
  std::string reduce_in, reduce_name;
  int reduce_k = 1;
  std::size_t reduce_n_min = 0;
  std::optional<std::string> reduce_out;
  const std::vector<std::string> reductions{"hyp-to-unitcube", "cube-to-unitcube", "kmp-to-grounded", "shrink"};
  reduce->add_option("--in", reduce_in, "Instance file")->required();
  reduce->add_option("--reduction", reduce_name, "Reduction")->required()->check(CLI::IsMember(reductions));
  reduce->add_option("--k", reduce_k, "Axes to embed (kmp-to-grounded)");
  reduce->add_option("--n-min", reduce_n_min, "Pass-through threshold (shrink)");
  reduce->add_option("--out", reduce_out, "Output file (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Check that reductions preserve volume");
  std::string verify_name, verify_solver = "oracle";
  int verify_k = 1;
  std::size_t verify_n_min = 0;
  std::optional<std::string> verify_in, verify_plan;
  bool verify_random = false;
  std::size_t verify_seeds = 100, verify_d = 2, verify_n = 6;
  Coord verify_coord_max = 10;
  std::uint64_t verify_seed_base = 0;
  verify->add_option("--reduction", verify_name, "Reduction")->required()->check(CLI::IsMember(reductions));
  verify->add_option("--k", verify_k, "Axes to embed (kmp-to-grounded)");
  verify->add_option("--n-min", verify_n_min, "Pass-through threshold (shrink)");
  auto* in_opt = verify->add_option("--in", verify_in, "Instance file");
  verify->add_option("--plan", verify_plan, "Check this plan instead of building one")->needs(in_opt);
  auto* rnd_flag = verify->add_flag("--random", verify_random, "Verify seeded random instances");
  in_opt->excludes(rnd_flag);
  verify->add_option("--seeds", verify_seeds, "Number of random instances");
  verify->add_option("--d", verify_d, "Dimension of random instances")->check(CLI::PositiveNumber);
  verify->add_option("--n", verify_n, "Boxes per random instance");
  verify->add_option("--coord-max", verify_coord_max, "Largest coordinate drawn")->check(CLI::PositiveNumber);
  verify->add_option("--seed-base", verify_seed_base, "First seed");
  verify->add_option("--solver", verify_solver, "Reference solver")->check(CLI::IsMember({"oracle", "sweep"}));

  // bench
  auto* bench = app.add_subcommand("bench", "Time solvers on seeded random instances");
  std::string bench_algo = "sweep", bench_grid, bench_format = "csv", bench_class = "general";
  std::size_t bench_d = 2;
  int bench_reps = 3;
  std::optional<int> bench_k;
  Coord bench_coord_max = 1000000;
  std::uint64_t bench_seed = 0;
  std::optional<std::uint64_t> bench_cap;
  bench->add_option("--algo", bench_algo, "Comma-separated solvers (auto, oracle, sweep, shrink)");
  bench->add_option("--d", bench_d, "Dimension")->check(CLI::PositiveNumber);
  bench->add_option("--n-grid", bench_grid, "Comma-separated box counts")->required();
  bench->add_option("--reps", bench_reps, "Repetitions per row")->check(CLI::PositiveNumber);
  bench->add_option("--format", bench_format, "Row format")->check(CLI::IsMember({"csv", "jsonl"}));
  bench->add_option("--class", bench_class, "Instance class")
      ->check(CLI::IsMember({"general", "hypervolume", "cube", "unitcube", "grounded"}));
  bench->add_option("--k", bench_k, "Number of grounded axes (grounded only)");
  bench->add_option("--coord-max", bench_coord_max, "Largest coordinate drawn")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "Master seed");
  bench->add_option("--oracle-cap", bench_cap, "Oracle cell cap");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      GenSpec spec;
      spec.cls = detail::class_from_flag(gen_class, gen_k);
      spec.d = gen_d;
      spec.n = gen_n;
      spec.coord_max = gen_coord_max;
      spec.seed = gen_seed;
      io::json j = io::instance_to_json(gen_instance(spec));
      j["meta"] = {{"generator", SplitMix64::kName},
                   {"class", spec.cls.to_string()},
                   {"coord_max", spec.coord_max},
                   {"seed", spec.seed}};
      detail::emit(gen_out, j, out);
      return kOk;
    }

    if (*solve) {
      const BoxSet m = io::instance_from_json(io::read_json_file(solve_in));
      ExactVolume v;
      if (solve_algo == "shrink") {
        v = solve_with_shrink(m, [](const BoxSet& b) { return volume_sweep(b); }, solve_n_min);
      } else {
        v = volume(m, solve_algo == "oracle" ? Algo::Oracle : solve_algo == "sweep" ? Algo::Sweep : Algo::Auto);
      }
      out << io::json{{"volume", io::volume_to_string(v)}, {"solver", solve_algo}, {"dim", m.dim()}, {"n", m.size()}}
                 .dump()
          << '\n';
      return kOk;
    }

    if (*reduce) {
      const BoxSet m = io::instance_from_json(io::read_json_file(reduce_in));
      ReductionSpec r{*ReductionSpec::parse(reduce_name), reduce_k, reduce_n_min};
      detail::emit(reduce_out, io::plan_to_json(build_plan(r, m)), out);
      return kOk;
    }

    if (*verify) {
      ReductionSpec r{*ReductionSpec::parse(verify_name), verify_k, verify_n_min};
      const Solver solver = named_solver(verify_solver);
      std::vector<VerifyReport> reports;
      if (verify_in) {
        const BoxSet m = io::instance_from_json(io::read_json_file(*verify_in));
        if (verify_plan) {
          const VolumePlan p = io::plan_from_json(io::read_json_file(*verify_plan));
          reports.push_back(check_plan(r, m, p, solver));
        } else {
          reports.push_back(verify_reduction(r, m, solver));
        }
      } else if (verify_random) {
        GenSpec spec;
        spec.cls = r.source_class();
        spec.d = verify_d;
        spec.n = verify_n;
        spec.coord_max = verify_coord_max;
        for (std::size_t s = 0; s < verify_seeds; ++s) {
          spec.seed = verify_seed_base + s;
          reports.push_back(verify_reduction(r, gen_instance(spec), solver));
        }
      } else {
        err << "verify needs --in or --random\n";
        return kUsage;
      }
      bool all = true;
      for (const auto& rep : reports) {
        out << report_to_json(rep).dump() << '\n';
        all = all && rep.pass;
      }
      return all ? kOk : kVerifyFailed;
    }

    if (*bench) {
      const ClassTag cls = detail::class_from_flag(bench_class, bench_k);
      std::vector<BenchCase> cases;
      for (const auto& algo : detail::split(bench_algo)) {
        named_solver(algo);  // reject unknown names up front
        for (std::size_t n : detail::parse_list(bench_grid)) {
          cases.push_back({algo, GenSpec{cls, bench_d, n, bench_coord_max, bench_seed}, bench_reps});
        }
      }
      OracleOptions opts;
      if (bench_cap) opts.cell_cap = *bench_cap;
      const auto rows = bench_suite(cases, opts);
      if (bench_format == "csv") out << "class,d,n,coord_max,seed,generator,solver,reps,wall_ns,volume,error\n";
      for (const auto& row : rows) {
        const std::string vol = row.volume ? io::volume_to_string(*row.volume) : "";
        if (bench_format == "csv") {
          out << row.spec.cls.to_string() << ',' << row.spec.d << ',' << row.spec.n << ',' << row.spec.coord_max
              << ',' << row.spec.seed << ',' << SplitMix64::kName << ',' << row.solver << ',' << row.reps << ','
              << row.wall_ns << ',' << vol << ',' << '"' << row.error << '"' << '\n';
        } else {
          io::json j = {{"class", row.spec.cls.to_string()}, {"d", row.spec.d},
                        {"n", row.spec.n},                   {"coord_max", row.spec.coord_max},
                        {"seed", row.spec.seed},             {"generator", SplitMix64::kName},
                        {"solver", row.solver},              {"reps", row.reps},
                        {"wall_ns", row.wall_ns}};
          if (row.volume) j["volume"] = vol;
          if (!row.error.empty()) j["error"] = row.error;
          out << j.dump() << '\n';
        }
      }
      return kOk;
    }
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const ClassError& e) {
    err << "error: " << e.what() << '\n';
    return kClass;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace kleebox::cli
