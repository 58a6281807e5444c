#include <doctest.h>

#include "schelling/instances.hpp"
#include "schelling/io.hpp"
#include "schelling/search.hpp"
#include "support.hpp"

using namespace schelling;
using namespace schelling::instances;
using test::place_types;

namespace {

int count_strategic(const GameInstance& inst) {
  return static_cast<int>(inst.strategic_agents().size());
}

}  // namespace

TEST_CASE("every family generator yields a valid instance") {
  std::vector<FamilySpec> specs = {
      StarSpec{5, {2, 2}},
      PathSpec{6, {2, 2}},
      RingSpec{6, {3, 2}},
      NonexistenceTreeSpec{2},
      NonexistenceTreeSpec{3},
      PoaCliquesSpec{2, 2},
      PoaStubbornCliquesSpec{2},
      PoaStubbornCliquesSpec{3},
      PoaStubbornCliquesSpec{4},
      PoaStubbornCliquesSpec{5},
      PoaStarStubbornSpec{2, 3},
      PoaStarStubbornSpec{3, 2},
      PoaStarTwoPerTypeSpec{2, 3},
      PoaStarTwoPerTypeSpec{3, 8},
      PosUnboundedSpec{Rational(1, 2)},
      PosUnboundedSpec{Rational(1, 8)},
      PosThreeSpec{1},
      PosThreeSpec{4},
      PosThirtyFourOver33Spec{},
  };
  for (const auto& spec : specs) {
    auto inst = gen_family(spec);
    CHECK(validate(inst).empty());
  }
}

TEST_CASE("out-of-domain family parameters are rejected") {
  CHECK_THROWS(gen_family(NonexistenceTreeSpec{1}));
  CHECK_THROWS(gen_family(PoaCliquesSpec{2, 1}));
  CHECK_THROWS(gen_family(PoaStarTwoPerTypeSpec{3, 4}));
  CHECK_THROWS(gen_family(PosUnboundedSpec{Rational(2, 3)}));
  CHECK_THROWS(gen_family(PosThreeSpec{0}));
  CHECK_THROWS(gen_family(StarSpec{2, {2, 2}}));  // too few nodes
}

TEST_CASE("structural counts of the four-layer tree") {
  for (int k = 2; k <= 4; ++k) {
    auto inst = gen_family(NonexistenceTreeSpec{k});
    CHECK(inst.topology().node_count == 2 + (2 * k - 1) * (k + 1));
    CHECK(inst.agent_count() == k * (2 * k + 1));
    CHECK(inst.topology().is_tree());
    CHECK(inst.topology().node_count == inst.agent_count() + 1);
  }
  auto k2 = gen_family(NonexistenceTreeSpec{2});
  CHECK(k2.topology().node_count == 11);
  auto k3 = gen_family(NonexistenceTreeSpec{3});
  CHECK(k3.topology().node_count == 22);
  CHECK(k3.agent_count() == 21);
}

TEST_CASE("structural counts of the clique families") {
  for (int k = 2; k <= 3; ++k)
    for (int ell = 2; ell <= 3; ++ell) {
      auto inst = gen_family(PoaCliquesSpec{k, ell});
      CHECK(inst.topology().node_count == k * k * (ell + 1) + 1);
      CHECK(inst.agent_count() == k * k * (ell + 1));
    }
  auto odd = gen_family(PoaStubbornCliquesSpec{3});
  CHECK(odd.topology().node_count == 3 * 4 + 1);
  CHECK(count_strategic(odd) == 9);
  auto even = gen_family(PoaStubbornCliquesSpec{4});
  CHECK(even.topology().node_count == 17);
  CHECK(count_strategic(even) == 12);
}

TEST_CASE("clique reduction component sizes") {
  auto red = reduce_clique_equilibrium(with_isolated_vertices(complete_graph(5), 1), 5);
  const auto& inst = red.instance;
  CHECK(red.stubborn_red_total == 41);
  CHECK(red.stubborn_blue_total == 80);
  // Gadget component: 124 nodes, 121 pinned, x/y/z free.
  CHECK(inst.topology().node_count == 6 + 3 + 3 + 20 + 124);
  CHECK(inst.agent_count() == 5 + 3 + 20 + 121);
  CHECK(validate(inst).empty());
  CHECK(search::assignment_count(inst) == 792);
  CHECK_THROWS(reduce_clique_equilibrium(complete_graph(5), 4));
}

TEST_CASE("clique equilibrium reduction answers through brute force") {
  auto yes = reduce_clique_equilibrium(with_isolated_vertices(complete_graph(5), 1), 5);
  CHECK_FALSE(search::find_all_equilibria(yes.instance).empty());
  auto no = reduce_clique_equilibrium(
      with_isolated_vertices(remove_edge(complete_graph(5), 0, 1), 1), 5);
  CHECK(search::find_all_equilibria(no.instance).empty());
}

TEST_CASE("welfare reduction reaches its target exactly on cliques") {
  auto k4 = reduce_clique_welfare(complete_graph(4), 4);
  CHECK(k4.target == Rational(3));
  CHECK(validate(k4.instance).empty());
  CHECK(search::optimal_welfare(k4.instance).second == Rational(3));

  auto c5 = reduce_clique_welfare(cycle_graph(5), 3);
  CHECK(search::optimal_welfare(c5.instance).second == Rational(5, 3));
  CHECK(search::optimal_welfare(c5.instance).second < Rational(2));

  auto k3 = reduce_clique_welfare(complete_graph(3), 3);
  CHECK(search::optimal_welfare(k3.instance).second == Rational(2));

  auto padded = reduce_clique_welfare(with_isolated_vertices(complete_graph(5), 1), 5);
  CHECK(search::optimal_welfare(padded.instance).second == Rational(4));
}

TEST_CASE("hamiltonian reduction reaches its target exactly on hamiltonian graphs") {
  auto c6 = reduce_hamiltonian(cycle_graph(6));
  CHECK(c6.target == Rational(6));
  CHECK(validate(c6.instance).empty());
  CHECK(search::optimal_welfare(c6.instance).second == Rational(6));

  auto k4 = reduce_hamiltonian(complete_graph(4));
  CHECK(search::optimal_welfare(k4.instance).second == Rational(4));

  auto star = reduce_hamiltonian(star_external(3));
  CHECK(search::optimal_welfare(star.instance).second < Rational(4));
  CHECK_THROWS(reduce_hamiltonian(complete_graph(2)));
}

TEST_CASE("steep stability family reproduces its stated welfare landscape") {
  for (long long q : {2, 4, 8}) {
    Rational eps(1, q);
    auto inst = gen_family(PosUnboundedSpec{eps});
    auto an = search::analyze(inst);
    REQUIRE(an.equilibrium_count == 1);
    CHECK(an.best_equilibrium->second == eps);
    CHECK(an.optimal->second == Rational(1) + eps / Rational(2));
  }
}

TEST_CASE("narrow stability family reproduces its stated welfare landscape") {
  for (int x : {1, 2, 3}) {
    auto inst = gen_family(PosThreeSpec{x});
    auto an = search::analyze(inst);
    REQUIRE(an.equilibrium_count == 1);
    CHECK(an.best_equilibrium->second == Rational(x + 1, 2 * x + 1));
    CHECK(an.optimal->second == Rational(3, 2));
  }
}

TEST_CASE("34/33 instance reconstruction pins its three named assignments") {
  auto inst = gen_family(PosThirtyFourOver33Spec{});
  auto best_eq = place_types(inst, {{0, 1, 5, 6, 7}, {3, 4, 8, 9, 10}});
  auto better = place_types(inst, {{0, 1, 5, 6, 7}, {2, 3, 4, 8, 9}});
  auto second = place_types(inst, {{0, 1, 5, 6, 7}, {2, 3, 8, 9, 10}});
  CHECK(social_welfare(inst, best_eq) == Rational(33, 4));
  CHECK(social_welfare(inst, better) == Rational(34, 4));
  CHECK(social_welfare(inst, second) == Rational(97, 12));
  CHECK(is_equilibrium(inst, best_eq));
  CHECK_FALSE(is_equilibrium(inst, better));
  // The 97/12 arrangement leaves the pendant node open next to a lone
  // friend, which the arm occupant at 3/4 grabs for utility 1.
  CHECK_FALSE(is_equilibrium(inst, second));
}

TEST_CASE("random generation is seed-deterministic") {
  RandomSpec spec;
  spec.nodes = 8;
  spec.edge_prob = Rational(1, 2);
  spec.strategic_per_type = {2, 2};
  spec.stubborn_per_type = {1, 0};
  spec.seed = 1;
  auto a = gen_random(spec);
  auto b = gen_random(spec);
  CHECK(io::instance_to_json(a) == io::instance_to_json(b));
  spec.seed = 2;
  auto c = gen_random(spec);
  CHECK(io::instance_to_json(a) != io::instance_to_json(c));
}

TEST_CASE("edge probability one yields the complete topology") {
  RandomSpec spec;
  spec.nodes = 6;
  spec.edge_prob = Rational(1);
  spec.strategic_per_type = {2, 2};
  spec.stubborn_per_type = {0, 0};
  spec.seed = 7;
  auto inst = gen_random(spec);
  CHECK(static_cast<int>(inst.topology().edges.size()) == 15);
  CHECK(validate(inst).empty());
}

TEST_CASE("random generation validates and respects connectivity requests") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    RandomSpec spec;
    spec.nodes = 5;
    spec.edge_prob = Rational(2, 5);
    spec.strategic_per_type = {2, 2};
    spec.stubborn_per_type = {0, 0};
    spec.seed = seed;
    spec.require_connected = true;
    auto inst = gen_random(spec);
    CHECK(validate(inst).empty());
    CHECK(inst.topology().is_connected());
  }
}

TEST_CASE("singleton-type padding preserves the interesting structure") {
  auto base = gen_family(PosThreeSpec{2});
  auto padded = pad_with_singleton_types(base, 2, /*stubborn=*/true);
  CHECK(validate(padded).empty());
  CHECK(padded.type_count() == 4);
  CHECK(padded.topology().node_count == base.topology().node_count + 2);
  // Isolated singleton agents add nothing to any welfare, so the ratio
  // analysis is untouched.
  auto before = search::price_of_stability(base);
  auto after = search::price_of_stability(padded);
  CHECK(before == after);

  // A strategic singleton has zero utility everywhere but can still park on
  // a contested node and block it, which reshapes the equilibrium set; only
  // the optimum is guaranteed to carry over.
  auto strategic_pad = pad_with_singleton_types(gen_family(PosThirtyFourOver33Spec{}), 1,
                                                /*stubborn=*/false);
  CHECK(validate(strategic_pad).empty());
  auto an = search::analyze(strategic_pad);
  CHECK(an.optimal->second == Rational(26, 3));
  CHECK(an.best_equilibrium->second == Rational(25, 3));
}
