#pragma once

#include <optional>
#include <vector>

#include "schelling/game.hpp"

namespace schelling::dynamics {

// Deterministic activation orders for best-response dynamics. The underlying
// convergence guarantees are order-independent, so both policies must reach
// a fixed point wherever one is guaranteed to exist.
enum class MovePolicy {
  BestImprovement,   // largest utility gain; ties to smallest agent, then node
  FirstImprovement,  // smallest agent id with any improving move, its best move
};

struct DynamicsStep {
  int agent = -1;
  int from = -1;
  int to = -1;
  Rational old_utility{0};
  Rational new_utility{0};
  std::optional<Rational> potential_before;
  std::optional<Rational> potential_after;
};

struct DynamicsTrace {
  enum class Outcome { Converged, StepLimit };
  std::vector<DynamicsStep> steps;
  Outcome outcome = Outcome::Converged;
  Assignment final_assignment;
};

// Edge potential: 1 per edge whose endpoints hold friends, 0 per edge whose
// endpoints hold non-friends, 1/3 per edge with an empty endpoint. Strictly
// increases on improving moves when the topology has maximum degree 2;
// computable on any graph, with no guarantee beyond that.
Rational potential_deg2(const GameInstance& instance, const Assignment& assignment);

// Sum of alpha*f_i - beta*e_i over all agents, stubborn included. Requires
// the linear utility model. Equals the social welfare when every agent is
// strategic.
Rational potential_linear(const GameInstance& instance, const Assignment& assignment);

// One improving move under the policy, or nullopt exactly when the
// assignment is an equilibrium. Potential fields of the step are left
// unset; run_dynamics fills them.
std::optional<std::pair<Assignment, DynamicsStep>> best_response_step(
    const GameInstance& instance, const Assignment& assignment, MovePolicy policy);

// Iterates best_response_step up to max_steps, recording potential values
// when a potential applies (linear model, otherwise maximum degree <= 2).
DynamicsTrace run_dynamics(const GameInstance& instance, const Assignment& start,
                           MovePolicy policy, long long max_steps);

// Enough steps for guaranteed convergence on degree <= 2 topologies: the
// potential lives on the grid {m/3} and gains at least 1/3 per move.
inline long long deg2_step_bound(const GameInstance& instance) {
  return 3LL * instance.topology().node_count + 1;
}

// Grid bound for the linear potential: values lie in
// {alpha*i - beta*j : 0 <= i,j <= n^2}.
inline long long linear_step_bound(const GameInstance& instance) {
  long long n = instance.agent_count();
  return (n * n + 1) * (n * n + 1);
}

// Direct equilibrium construction for star topologies (occupy the center)
// and maximum-degree-2 topologies (converged best-response run). Requires
// the fractional utility model.
Assignment construct_equilibrium_simple(const GameInstance& instance);

// Deterministic start used by the constructor and the CLI: stubborn agents
// at their pins, strategic agents on the lowest free nodes in id order.
Assignment canonical_start(const GameInstance& instance);

// Seeded random valid start.
Assignment random_start(const GameInstance& instance, std::uint64_t seed);

}  // namespace schelling::dynamics
