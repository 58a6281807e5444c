#include "schelling/dynamics.hpp"

#include <stdexcept>

#include "schelling/rng.hpp"

namespace schelling::dynamics {

Rational potential_deg2(const GameInstance& instance, const Assignment& assignment) {
  auto occ = assignment.occupant_of_nodes(instance.topology().node_count);
  Rational total(0);
  for (const auto& [u, v] : instance.topology().edges) {
    if (occ[u] < 0 || occ[v] < 0) {
      total += Rational(1, 3);
    } else if (instance.are_friends(occ[u], occ[v])) {
      total += Rational(1);
    }
  }
  return total;
}

Rational potential_linear(const GameInstance& instance, const Assignment& assignment) {
  if (!std::holds_alternative<LinearUtility>(instance.utility_model()))
    throw std::invalid_argument("potential_linear: utility model is not linear");
  Rational total(0);
  for (int i = 0; i < instance.agent_count(); ++i)
    total += utility(instance, assignment, i);
  return total;
}

std::optional<std::pair<Assignment, DynamicsStep>> best_response_step(
    const GameInstance& instance, const Assignment& assignment, MovePolicy policy) {
  std::optional<DynamicsStep> chosen;
  std::optional<Rational> chosen_gain;
  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    if (!instance.is_strategic(agent)) continue;
    auto move = best_deviation(instance, assignment, agent);
    if (!move) continue;
    Rational old_u = utility(instance, assignment, agent);
    if (policy == MovePolicy::FirstImprovement) {
      DynamicsStep step{agent, assignment.node_of[agent], move->first, old_u, move->second,
                        std::nullopt, std::nullopt};
      Assignment next = assignment;
      next.node_of[agent] = move->first;
      return {{std::move(next), step}};
    }
    Rational gain = move->second - old_u;
    if (!chosen || gain > *chosen_gain) {
      chosen = DynamicsStep{agent, assignment.node_of[agent], move->first, old_u, move->second,
                            std::nullopt, std::nullopt};
      chosen_gain = gain;
    }
  }
  if (!chosen) return std::nullopt;
  Assignment next = assignment;
  next.node_of[chosen->agent] = chosen->to;
  return {{std::move(next), *chosen}};
}

DynamicsTrace run_dynamics(const GameInstance& instance, const Assignment& start,
                           MovePolicy policy, long long max_steps) {
  if (!is_valid_assignment(instance, start))
    throw std::invalid_argument("run_dynamics: invalid start assignment");
  bool linear = std::holds_alternative<LinearUtility>(instance.utility_model());
  bool track_potential = linear || instance.topology().max_degree() <= 2;
  auto potential = [&](const Assignment& a) {
    return linear ? potential_linear(instance, a) : potential_deg2(instance, a);
  };

  DynamicsTrace trace;
  Assignment current = start;
  for (long long step = 0; step < max_steps; ++step) {
    auto next = best_response_step(instance, current, policy);
    if (!next) {
      trace.outcome = DynamicsTrace::Outcome::Converged;
      trace.final_assignment = current;
      return trace;
    }
    if (track_potential) {
      next->second.potential_before = potential(current);
      next->second.potential_after = potential(next->first);
    }
    trace.steps.push_back(next->second);
    current = std::move(next->first);
  }
  if (best_response_step(instance, current, policy)) {
    trace.outcome = DynamicsTrace::Outcome::StepLimit;
  } else {
    trace.outcome = DynamicsTrace::Outcome::Converged;
  }
  trace.final_assignment = current;
  return trace;
}

Assignment canonical_start(const GameInstance& instance) {
  Assignment a;
  a.node_of.assign(instance.agent_count(), -1);
  std::vector<bool> used(instance.topology().node_count, false);
  for (int i = 0; i < instance.agent_count(); ++i)
    if (auto p = instance.pin(i)) {
      a.node_of[i] = *p;
      used[*p] = true;
    }
  int v = 0;
  for (int i = 0; i < instance.agent_count(); ++i) {
    if (instance.is_stubborn(i)) continue;
    while (used[v]) ++v;
    a.node_of[i] = v;
    used[v] = true;
  }
  return a;
}

Assignment random_start(const GameInstance& instance, std::uint64_t seed) {
  Rng rng(seed);
  Assignment a;
  a.node_of.assign(instance.agent_count(), -1);
  std::vector<int> free_nodes;
  std::vector<bool> used(instance.topology().node_count, false);
  for (int i = 0; i < instance.agent_count(); ++i)
    if (auto p = instance.pin(i)) {
      a.node_of[i] = *p;
      used[*p] = true;
    }
  for (int v = 0; v < instance.topology().node_count; ++v)
    if (!used[v]) free_nodes.push_back(v);
  auto strategic = instance.strategic_agents();
  auto picks = rng.sample_distinct(static_cast<int>(free_nodes.size()),
                                   static_cast<int>(strategic.size()));
  for (std::size_t i = 0; i < strategic.size(); ++i)
    a.node_of[strategic[i]] = free_nodes[picks[i]];
  return a;
}

Assignment construct_equilibrium_simple(const GameInstance& instance) {
  if (!std::holds_alternative<FractionalUtility>(instance.utility_model()))
    throw std::invalid_argument("construct_equilibrium_simple: needs the fractional model");

  if (auto center = instance.topology().star_center()) {
    Assignment a;
    a.node_of.assign(instance.agent_count(), -1);
    std::vector<bool> used(instance.topology().node_count, false);
    int center_agent = -1;
    for (int i = 0; i < instance.agent_count(); ++i)
      if (auto p = instance.pin(i)) {
        a.node_of[i] = *p;
        used[*p] = true;
        if (*p == *center) center_agent = i;
      }
    auto strategic = instance.strategic_agents();
    std::size_t next = 0;
    // Any occupant makes the center leaves-only-see-friends-or-not argument
    // go through; with no strategic agents the pinned assignment is already
    // a fixed point.
    if (center_agent < 0 && !strategic.empty()) {
      a.node_of[strategic[0]] = *center;
      used[*center] = true;
      next = 1;
    }
    int v = 0;
    for (; next < strategic.size(); ++next) {
      while (used[v]) ++v;
      a.node_of[strategic[next]] = v;
      used[v] = true;
    }
    return a;
  }

  if (instance.topology().max_degree() <= 2) {
    auto trace = run_dynamics(instance, canonical_start(instance),
                              MovePolicy::FirstImprovement, deg2_step_bound(instance));
    if (trace.outcome != DynamicsTrace::Outcome::Converged)
      throw std::logic_error("degree-2 dynamics failed to converge within its bound");
    return trace.final_assignment;
  }

  throw std::invalid_argument(
      "construct_equilibrium_simple: topology is neither a star nor of maximum degree 2");
}

}  // namespace schelling::dynamics
