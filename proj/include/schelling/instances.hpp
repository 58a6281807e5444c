#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "schelling/game.hpp"
#include "schelling/rng.hpp"

namespace schelling::instances {

// --- basic topology families, strategic typed agents only ---

struct StarSpec {
  int leaves = 0;
  std::vector<int> type_sizes;  // strategic agents per type
};
struct PathSpec {
  int nodes = 0;
  std::vector<int> type_sizes;
};
struct RingSpec {
  int nodes = 0;
  std::vector<int> type_sizes;
};

// Tree with no equilibrium: root with one child, that child with 2k-1
// children, each of those with k leaves; 2k+1 strategic agents per type.
struct NonexistenceTreeSpec {
  int k = 2;
};

// k cliques of size k*ell with per-clique auxiliary nodes and a hub node y;
// k*(ell+1) strategic agents per type. Worst equilibrium welfare k(ell+k)
// against optimum k^2(ell+1).
struct PoaCliquesSpec {
  int k = 2;
  int ell = 2;
};

// Cliques joined through an auxiliary node with one stubborn agent per type
// (odd k: k cliques of size k+1; even k: k-1 cliques of size k plus k
// pendant dummy nodes, the last type pinned to a dummy).
struct PoaStubbornCliquesSpec {
  int k = 3;
};

// Star with n+1 nodes, n = k*ell agents: ell strategic of type 0, one
// strategic plus ell-1 stubborn of type 1, ell stubborn of every further
// type; stubborn agents pinned to leaves.
struct PoaStarStubbornSpec {
  int k = 2;
  int ell = 1;
};

// Star with n+1 nodes, two strategic agents in each of the first k-1 types
// and n-2(k-1) in the last (n = 2k-1 makes the last type a singleton).
struct PoaStarTwoPerTypeSpec {
  int k = 2;
  int n = 4;
};

// Two strategic blue agents against x+y+1 stubborn red and one stubborn
// blue, eps = 1/q; the unique equilibrium has welfare eps while the optimum
// is 1 + eps/2.
struct PosUnboundedSpec {
  Rational eps{1, 2};
};

// Two strategic blue agents against x+1 stubborn red and x+1 stubborn blue;
// price of stability 3(2x+1)/(2(x+1)).
struct PosThreeSpec {
  int x = 1;
};

// Ten strategic agents (five per type) on an 11-node tree whose best
// equilibrium welfare is 33/4 against an optimum of 34/4.
struct PosThirtyFourOver33Spec {};

using FamilySpec =
    std::variant<StarSpec, PathSpec, RingSpec, NonexistenceTreeSpec, PoaCliquesSpec,
                 PoaStubbornCliquesSpec, PoaStarStubbornSpec, PoaStarTwoPerTypeSpec,
                 PosUnboundedSpec, PosThreeSpec, PosThirtyFourOver33Spec>;

// Builds the instance for a family; throws std::invalid_argument on
// out-of-domain parameters. Every output passes validate().
GameInstance gen_family(const FamilySpec& spec);

// --- reduction builders ---

// Input graph for the reduction builders: simple, undirected, no self-loops.
struct ExternalGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

ExternalGraph complete_graph(int n);
ExternalGraph cycle_graph(int n);
ExternalGraph star_external(int leaves);
// Disjoint union with `extra` isolated vertices appended.
ExternalGraph with_isolated_vertices(ExternalGraph g, int extra);
ExternalGraph remove_edge(ExternalGraph g, int u, int v);

// Clique-to-equilibrium reduction: s strategic red agents, everything else
// stubborn, across three disconnected gadget components. An equilibrium
// exists iff the input graph has a clique of size s. Requires s >= 5.
struct CliqueEquilibriumReduction {
  GameInstance instance;
  std::vector<int> input_nodes;   // copies of the input graph's vertices
  std::vector<int> open_bipartite_slots;  // the s-2 free nodes of the bipartite part
  int node_x = -1;
  int node_y = -1;
  int node_z = -1;
  int stubborn_red_total = 0;   // pinned agents in the x/y/z component
  int stubborn_blue_total = 0;
};
CliqueEquilibriumReduction reduce_clique_equilibrium(const ExternalGraph& h, int s);

// Clique-to-welfare reduction: s strategic red agents and one stubborn blue
// hub adjacent to every input vertex. Optimal welfare reaches the target
// s-1 iff the input graph has a clique of size s. Isolated padding nodes
// are appended when the input graph is too small to leave an empty node.
struct WelfareReduction {
  GameInstance instance;
  Rational target{0};
};
WelfareReduction reduce_clique_welfare(const ExternalGraph& h, int s);

// Hamiltonian-cycle-to-welfare reduction in social mode: one strategic
// agent per input vertex, friendships from the input edges, topology a
// cycle plus one isolated node. Optimal welfare reaches |X| iff the input
// graph is Hamiltonian. Requires at least 3 vertices.
WelfareReduction reduce_hamiltonian(const ExternalGraph& h);

// --- randomized generator fuel ---

struct RandomSpec {
  int nodes = 0;
  Rational edge_prob{1, 2};
  std::vector<int> strategic_per_type;
  std::vector<int> stubborn_per_type;
  UtilityModel model = FractionalUtility{};
  std::uint64_t seed = 0;
  bool require_connected = false;
};

// Seed-deterministic random instance; resamples the topology a bounded
// number of times when connectivity is requested.
GameInstance gen_random(const RandomSpec& spec);

// Random typed agent structure on a fixed topology (stubborn pins drawn
// without collision).
GameInstance random_typed_on(const Topology& topology, const std::vector<int>& strategic_per_type,
                             const std::vector<int>& stubborn_per_type, UtilityModel model,
                             std::uint64_t seed);

// Random social structure on a fixed topology: n_agents with independent
// friend coin-flips, the first `stubborn` agents pinned to random nodes.
GameInstance random_social_on(const Topology& topology, int n_agents,
                              const Rational& friend_prob, int stubborn, UtilityModel model,
                              std::uint64_t seed);

// Appends `extra` isolated nodes and `extra` fresh singleton-type agents to
// a typed instance (stubborn ones pinned to the new nodes). The welfare
// landscape of the original agents is unchanged.
GameInstance pad_with_singleton_types(const GameInstance& instance, int extra, bool stubborn);

}  // namespace schelling::instances
