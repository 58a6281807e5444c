#include <doctest.h>

#include "schelling/dynamics.hpp"
#include "schelling/instances.hpp"
#include "schelling/io.hpp"
#include "schelling/search.hpp"
#include "support.hpp"

using namespace schelling;
using namespace schelling::dynamics;
using namespace schelling::instances;
using test::make_social;
using test::make_typed;
using test::place_types;

TEST_CASE("edge potential scores empty, friendly and hostile edges") {
  // Nobody placed: every edge is worth 1/3.
  auto path4 = make_typed(6, {{0, 1}, {1, 2}, {2, 3}}, {0, 1});
  Assignment empty_ish{{4, 5}};
  CHECK(potential_deg2(path4, empty_ish) == Rational(3) * Rational(1, 3));

  // Two friends on one edge of a 3-node path, other edge half-empty.
  auto path3 = make_typed(4, {{0, 1}, {1, 2}}, {0, 0, 1}, {}, FractionalUtility{}, 2);
  Assignment friends_edge{{0, 1, 3}};
  CHECK(potential_deg2(path3, friends_edge) == Rational(4, 3));

  // Two enemies adjacent on a 4-cycle, the other three edges see an empty
  // endpoint.
  auto ring4 = make_typed(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0, 1});
  Assignment enemies{{0, 1}};
  CHECK(potential_deg2(ring4, enemies) == Rational(1));
}

TEST_CASE("linear potential equals welfare when all agents are strategic") {
  LinearUtility lin{Rational(1), Rational(1, 3)};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomSpec spec;
    spec.nodes = 7;
    spec.edge_prob = Rational(1, 2);
    spec.strategic_per_type = {2, 2};
    spec.stubborn_per_type = {0, 0};
    spec.model = lin;
    spec.seed = seed;
    auto inst = gen_random(spec);
    auto a = random_start(inst, seed);
    CHECK(potential_linear(inst, a) == social_welfare(inst, a));
  }

  auto pair = make_typed(3, {{0, 1}}, {0, 0}, {}, LinearUtility{Rational(1), Rational(1)}, 2);
  CHECK(potential_linear(pair, Assignment{{0, 1}}) == Rational(2));
  CHECK(potential_linear(pair, Assignment{{0, 2}}) == Rational(0));

  auto frac = make_typed(3, {{0, 1}}, {0, 0});
  CHECK_THROWS(potential_linear(frac, Assignment{{0, 1}}));
}

TEST_CASE("best_response_step returns nothing at an equilibrium") {
  auto fig = gen_family(PosThirtyFourOver33Spec{});
  auto eq = place_types(fig, {{0, 1, 5, 6, 7}, {3, 4, 8, 9, 10}});
  CHECK_FALSE(best_response_step(fig, eq, MovePolicy::BestImprovement).has_value());
  CHECK_FALSE(best_response_step(fig, eq, MovePolicy::FirstImprovement).has_value());
}

TEST_CASE("the 34/4 assignment has exactly one improving move") {
  auto fig = gen_family(PosThirtyFourOver33Spec{});
  auto near_opt = place_types(fig, {{0, 1, 5, 6, 7}, {2, 3, 4, 8, 9}});
  for (auto policy : {MovePolicy::BestImprovement, MovePolicy::FirstImprovement}) {
    auto step = best_response_step(fig, near_opt, policy);
    REQUIRE(step.has_value());
    CHECK(step->second.agent == 5);
    CHECK(step->second.from == 2);
    CHECK(step->second.to == 10);
    CHECK(step->second.old_utility == Rational(1, 2));
    CHECK(step->second.new_utility == Rational(1));
  }
}

TEST_CASE("in the clique gadget the split pair walks from y to z") {
  auto red = reduce_clique_equilibrium(with_isolated_vertices(complete_graph(5), 1), 5);
  const auto& inst = red.instance;
  auto a = place_types(inst, {{red.open_bipartite_slots[0], red.open_bipartite_slots[1],
                               red.open_bipartite_slots[2], red.node_x, red.node_y},
                              {}});
  auto step = best_response_step(inst, a, MovePolicy::BestImprovement);
  REQUIRE(step.has_value());
  CHECK(step->second.from == red.node_y);
  CHECK(step->second.to == red.node_z);
  CHECK(step->second.old_utility == Rational(42, 122));
  CHECK(step->second.new_utility == Rational(5, 12));
}

TEST_CASE("degree-2 dynamics converge within the potential bound") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    bool ring = seed % 2 == 0;
    int nodes = 5 + static_cast<int>(seed % 4);
    Topology topo = ring ? gen_family(RingSpec{nodes, {1, 1}}).topology()
                         : gen_family(PathSpec{nodes, {1, 1}}).topology();
    auto inst = random_typed_on(topo, {2, 1}, {0, 1}, FractionalUtility{}, seed);
    auto start = random_start(inst, seed * 17);
    auto policy = seed % 3 == 0 ? MovePolicy::BestImprovement : MovePolicy::FirstImprovement;
    auto trace = run_dynamics(inst, start, policy, deg2_step_bound(inst));
    REQUIRE(trace.outcome == DynamicsTrace::Outcome::Converged);
    CHECK(static_cast<long long>(trace.steps.size()) <= 3 * nodes);
    CHECK(is_equilibrium(inst, trace.final_assignment));
    for (const auto& s : trace.steps) {
      CHECK(s.new_utility > s.old_utility);
      REQUIRE(s.potential_before.has_value());
      CHECK(*s.potential_after - *s.potential_before >= Rational(1, 3));
    }
  }
}

TEST_CASE("every improving move on small degree-2 instances raises the potential by 1/3") {
  // Exhaustive over paths and rings up to 6 nodes with up to 4 agents.
  for (int nodes = 4; nodes <= 6; ++nodes) {
    for (bool ring : {false, true}) {
      Topology topo = ring ? gen_family(RingSpec{nodes, {1, 1}}).topology()
                           : gen_family(PathSpec{nodes, {1, 1}}).topology();
      for (auto sizes : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {2, 2}, {3, 1}}) {
        GameInstance inst(topo, std::vector<std::optional<int>>(sizes[0] + sizes[1]),
                          TypedFriendship{2,
                                          [&] {
                                            std::vector<int> t(sizes[0], 0);
                                            t.insert(t.end(), sizes[1], 1);
                                            return t;
                                          }()},
                          FractionalUtility{});
        search::for_each_assignment(inst, {}, [&](const Assignment& a) {
          auto occ = a.occupant_of_nodes(nodes);
          Rational before = potential_deg2(inst, a);
          for (int agent = 0; agent < inst.agent_count(); ++agent) {
            Rational current = utility(inst, a, agent);
            for (int z = 0; z < nodes; ++z) {
              if (occ[z] >= 0) continue;
              if (!(utility(inst, a, agent, z) > current)) continue;
              Assignment b = a;
              b.node_of[agent] = z;
              CHECK(potential_deg2(inst, b) - before >= Rational(1, 3));
            }
          }
        });
      }
    }
  }
}

TEST_CASE("linear dynamics converge with the exact potential-gain identity") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomSpec spec;
    spec.nodes = 7;
    spec.edge_prob = Rational(1, 2);
    spec.strategic_per_type = {2, 2};
    spec.stubborn_per_type = {seed % 2 ? 1 : 0, 0};
    spec.model = LinearUtility{Rational(2, 3), Rational(1, 2)};
    spec.seed = seed;
    auto inst = gen_random(spec);
    auto trace = run_dynamics(inst, random_start(inst, seed + 5),
                              MovePolicy::BestImprovement, linear_step_bound(inst));
    REQUIRE(trace.outcome == DynamicsTrace::Outcome::Converged);
    CHECK(is_equilibrium(inst, trace.final_assignment));
    for (const auto& s : trace.steps) {
      REQUIRE(s.potential_before.has_value());
      CHECK(*s.potential_after - *s.potential_before ==
            Rational(2) * (s.new_utility - s.old_utility));
    }
  }
}

TEST_CASE("dynamics on the equilibrium-free tree hit the step limit") {
  auto tree = gen_family(NonexistenceTreeSpec{2});
  auto trace = run_dynamics(tree, canonical_start(tree), MovePolicy::FirstImprovement, 2000);
  CHECK(trace.outcome == DynamicsTrace::Outcome::StepLimit);
  CHECK(trace.steps.size() == 2000);
}

TEST_CASE("traces are deterministic") {
  auto inst = gen_random([] {
    RandomSpec spec;
    spec.nodes = 8;
    spec.edge_prob = Rational(1, 2);
    spec.strategic_per_type = {3, 2};
    spec.stubborn_per_type = {0, 1};
    spec.seed = 11;
    return spec;
  }());
  auto start = random_start(inst, 3);
  auto t1 = run_dynamics(inst, start, MovePolicy::BestImprovement, 500);
  auto t2 = run_dynamics(inst, start, MovePolicy::BestImprovement, 500);
  CHECK(io::trace_to_text(t1) == io::trace_to_text(t2));
  CHECK(t1.final_assignment.node_of == t2.final_assignment.node_of);
}

TEST_CASE("star constructor occupies the center") {
  auto three_types = gen_family(StarSpec{3, {1, 1, 1}});
  auto a = construct_equilibrium_simple(three_types);
  CHECK(is_valid_assignment(three_types, a));
  CHECK(is_equilibrium(three_types, a));
  auto occ = a.occupant_of_nodes(4);
  CHECK(occ[0] >= 0);

  // Pinned center is respected.
  auto pinned = make_typed(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {0, 1, 1},
                           {std::optional<int>(0), std::nullopt, std::nullopt});
  auto b = construct_equilibrium_simple(pinned);
  CHECK(b.node_of[0] == 0);
  CHECK(is_equilibrium(pinned, b));

  // No strategic agents at all: the pinned assignment is already stable.
  auto all_pinned = make_typed(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {0, 1},
                               {std::optional<int>(1), std::optional<int>(2)});
  auto c = construct_equilibrium_simple(all_pinned);
  CHECK(is_valid_assignment(all_pinned, c));
  CHECK(is_equilibrium(all_pinned, c));
}

TEST_CASE("degree-2 constructor converges on paths and rings") {
  auto path = gen_family(PathSpec{5, {2, 2}});
  auto a = construct_equilibrium_simple(path);
  CHECK(is_equilibrium(path, a));

  // Three mutual friends on a 4-ring: the constructor's answer is stable,
  // and the contiguous arrangement is one of the equilibria.
  auto ring = make_social(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 3,
                          {{0, 1}, {0, 2}, {1, 2}});
  auto b = construct_equilibrium_simple(ring);
  CHECK(is_equilibrium(ring, b));
  CHECK(is_equilibrium(ring, Assignment{{0, 1, 2}}));
}

TEST_CASE("constructor rejects unsupported inputs") {
  auto dense = make_typed(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {0, 0, 1});
  CHECK_THROWS(construct_equilibrium_simple(dense));
  auto linear_ring = make_typed(5, {{0, 1}, {1, 2}, {2, 0}}, {0, 0, 1}, {},
                                LinearUtility{Rational(1), Rational(1)});
  CHECK_THROWS(construct_equilibrium_simple(linear_ring));
}
