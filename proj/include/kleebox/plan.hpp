#pragma once

#include <cstdint>
#include <functional>
#include <future>
#include <string>
#include <vector>

#include "kleebox/core.hpp"

namespace kleebox {

struct PlanTerm {
  std::int64_t coeff = 1;
  BoxSet instance;

  friend bool operator==(const PlanTerm&, const PlanTerm&) = default;
};

/// A volume expressed as constant + sum(coeff * vol(instance)). Every term
/// instance is expected to belong to `claimed_class`.
struct VolumePlan {
  ExactVolume constant = 0;
  std::vector<PlanTerm> terms;
  ClassTag claimed_class = ClassTag::general();

  friend bool operator==(const VolumePlan&, const VolumePlan&) = default;
};

using Solver = std::function<ExactVolume(const BoxSet&)>;

enum class Execution { Sequential, Parallel };

/// Index of the first term violating the claimed class, or -1.
inline std::ptrdiff_t first_class_violation(const VolumePlan& p) {
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    if (!satisfies(p.terms[i].instance, p.claimed_class)) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

inline ExactVolume evaluate_plan(const VolumePlan& p, const Solver& solver,
                                 Execution exec = Execution::Sequential) {
  if (auto bad = first_class_violation(p); bad >= 0) {
    throw PlanIntegrityError("plan term " + std::to_string(bad) + " is not " +
                             p.claimed_class.to_string());
  }
  ExactVolume total = p.constant;
  if (exec == Execution::Sequential || p.terms.size() < 2) {
    for (const auto& t : p.terms) total += ExactVolume(t.coeff) * solver(t.instance);
    return total;
  }
  std::vector<std::future<ExactVolume>> parts;
  parts.reserve(p.terms.size());
  for (const auto& t : p.terms) {
    parts.push_back(std::async(std::launch::async, [&solver, &t] { return solver(t.instance); }));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) total += ExactVolume(p.terms[i].coeff) * parts[i].get();
  return total;
}

}  // namespace kleebox
