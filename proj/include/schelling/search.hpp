#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schelling/game.hpp"

namespace schelling::search {

// Enumeration refuses instances whose assignment space exceeds the budget
// instead of running unboundedly.
struct Budget {
  long long max_units = 10'000'000;
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(long long count, long long budget)
      : std::runtime_error("enumeration space of " + std::to_string(count) +
                           " assignments exceeds budget " + std::to_string(budget)) {}
};

// Number of enumeration units: type-colorings of the free nodes in typed
// mode (agents of a type are interchangeable), labeled placements in social
// mode. Clamped to LLONG_MAX on overflow.
long long assignment_count(const GameInstance& instance);

// Visits every valid assignment exactly once, in a fixed deterministic
// order. Typed mode yields one canonical labeled representative per
// coloring.
void for_each_assignment(const GameInstance& instance, const Budget& budget,
                         const std::function<void(const Assignment&)>& visit);

std::vector<Assignment> enumerate_assignments(const GameInstance& instance,
                                              const Budget& budget = {});

// All equilibria with their social welfare, in enumeration order.
std::vector<std::pair<Assignment, Rational>> find_all_equilibria(const GameInstance& instance,
                                                                 const Budget& budget = {});

// Exact maximizer of social welfare over all assignments (first witness in
// enumeration order).
std::pair<Assignment, Rational> optimal_welfare(const GameInstance& instance,
                                                const Budget& budget = {});

struct RatioResult {
  enum class Kind { Value, Unbounded, NoEquilibrium, UndefinedZeroOptimum };
  Kind kind = Kind::NoEquilibrium;
  Rational value{0};  // meaningful only when kind == Value

  static RatioResult of(const Rational& v) { return {Kind::Value, v}; }
  static RatioResult unbounded() { return {Kind::Unbounded, Rational(0)}; }
  static RatioResult no_equilibrium() { return {Kind::NoEquilibrium, Rational(0)}; }
  static RatioResult undefined_zero_optimum() {
    return {Kind::UndefinedZeroOptimum, Rational(0)};
  }

  friend bool operator==(const RatioResult& a, const RatioResult& b) {
    return a.kind == b.kind && (a.kind != Kind::Value || a.value == b.value);
  }
};

// One-pass summary backing the ratio computations and the CLI reports.
struct InstanceAnalysis {
  long long enumerated = 0;
  std::optional<std::pair<Assignment, Rational>> optimal;
  long long equilibrium_count = 0;
  std::optional<std::pair<Assignment, Rational>> worst_equilibrium;
  std::optional<std::pair<Assignment, Rational>> best_equilibrium;
  bool all_equilibria_zero_welfare = true;
};

InstanceAnalysis analyze(const GameInstance& instance, const Budget& budget = {});

// optimum / worst-equilibrium welfare. Unbounded when the worst equilibrium
// has zero welfare but the optimum is positive; a zero optimum with all
// equilibria at zero is reported as 1 (nothing is losable).
RatioResult price_of_anarchy(const GameInstance& instance, const Budget& budget = {});

// optimum / best-equilibrium welfare, same edge-case lattice.
RatioResult price_of_stability(const GameInstance& instance, const Budget& budget = {});

}  // namespace schelling::search
