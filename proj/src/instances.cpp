#include "schelling/instances.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace schelling::instances {

namespace {

constexpr int kRed = 0;
constexpr int kBlue = 1;

struct Builder {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::optional<int>> pins;
  std::vector<int> types;
  UtilityModel model = FractionalUtility{};

  int add_nodes(int count) {
    int first = node_count;
    node_count += count;
    return first;
  }
  void edge(int u, int v) { edges.push_back({u, v}); }
  void clique(int first, int count) {
    for (int a = 0; a < count; ++a)
      for (int b = a + 1; b < count; ++b) edge(first + a, first + b);
  }
  int strategic(int type, int count = 1) {
    int first = static_cast<int>(types.size());
    for (int i = 0; i < count; ++i) {
      types.push_back(type);
      pins.push_back(std::nullopt);
    }
    return first;
  }
  void stubborn(int type, int node) {
    types.push_back(type);
    pins.push_back(node);
  }

  GameInstance build(int k) {
    return GameInstance(Topology(node_count, std::move(edges)), std::move(pins),
                        TypedFriendship{k, std::move(types)}, model);
  }
};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

GameInstance typed_on_topology(Topology topo, const std::vector<int>& type_sizes) {
  require(type_sizes.size() >= 2, "need at least two types");
  int n = std::accumulate(type_sizes.begin(), type_sizes.end(), 0);
  require(topo.node_count > n, "topology too small for the agent roster");
  Builder b;
  b.node_count = topo.node_count;
  b.edges = topo.edges;
  for (int t = 0; t < static_cast<int>(type_sizes.size()); ++t) {
    require(type_sizes[t] >= 1, "every type needs at least one agent");
    b.strategic(t, type_sizes[t]);
  }
  return b.build(static_cast<int>(type_sizes.size()));
}

Topology star_topology(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Topology(leaves + 1, std::move(edges));
}

Topology path_topology(int nodes) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < nodes; ++i) edges.push_back({i, i + 1});
  return Topology(nodes, std::move(edges));
}

Topology ring_topology(int nodes) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nodes; ++i) edges.push_back({i, (i + 1) % nodes});
  return Topology(nodes, std::move(edges));
}

GameInstance gen_nonexistence_tree(const NonexistenceTreeSpec& spec) {
  int k = spec.k;
  require(k >= 2, "nonexistence-tree needs k >= 2");
  Builder b;
  int root = b.add_nodes(1);
  int trunk = b.add_nodes(1);
  b.edge(root, trunk);
  int mid_count = 2 * k - 1;
  int mid = b.add_nodes(mid_count);
  for (int i = 0; i < mid_count; ++i) {
    b.edge(trunk, mid + i);
    int leaf = b.add_nodes(k);
    for (int j = 0; j < k; ++j) b.edge(mid + i, leaf + j);
  }
  for (int t = 0; t < k; ++t) b.strategic(t, 2 * k + 1);
  return b.build(k);
}

GameInstance gen_poa_cliques(const PoaCliquesSpec& spec) {
  int k = spec.k, ell = spec.ell;
  require(k >= 2, "poa-cliques needs k >= 2");
  require(ell >= 2, "poa-cliques needs ell >= 2");
  Builder b;
  std::vector<int> clique_base(k);
  for (int i = 0; i < k; ++i) {
    clique_base[i] = b.add_nodes(k * ell);
    b.clique(clique_base[i], k * ell);
  }
  int hub = b.add_nodes(1);
  for (int i = 0; i < k; ++i) {
    int aux = b.add_nodes(k);
    // aux node j serves group j (ell consecutive clique nodes); the group
    // containing the hub-adjacent node of clique i is group i.
    for (int j = 0; j < k; ++j)
      for (int m = 0; m < ell; ++m) b.edge(aux + j, clique_base[i] + j * ell + m);
    b.edge(hub, clique_base[i] + i * ell);
  }
  for (int t = 0; t < k; ++t) b.strategic(t, k * (ell + 1));
  return b.build(k);
}

GameInstance gen_poa_stubborn_cliques(const PoaStubbornCliquesSpec& spec) {
  int k = spec.k;
  require(k >= 2, "poa-stubborn-cliques needs k >= 2");
  Builder b;
  if (k % 2 == 1) {
    std::vector<int> gate(k);  // clique node adjacent to the junction
    for (int i = 0; i < k; ++i) {
      int base = b.add_nodes(k + 1);
      b.clique(base, k + 1);
      gate[i] = base;
    }
    int junction = b.add_nodes(1);
    for (int i = 0; i < k; ++i) b.edge(junction, gate[i]);
    for (int t = 0; t < k; ++t) {
      b.strategic(t, k);
      b.stubborn(t, gate[t]);
    }
  } else {
    std::vector<int> gate(k - 1);
    for (int i = 0; i < k - 1; ++i) {
      int base = b.add_nodes(k);
      b.clique(base, k);
      gate[i] = base;
    }
    int junction = b.add_nodes(1);
    for (int i = 0; i < k - 1; ++i) b.edge(junction, gate[i]);
    int dummy = b.add_nodes(k);
    for (int j = 0; j < k; ++j) b.edge(dummy + j, gate[j % (k - 1)]);
    for (int t = 0; t < k; ++t) {
      b.strategic(t, k - 1);
      b.stubborn(t, t < k - 1 ? gate[t] : dummy + k - 1);
    }
  }
  return b.build(k);
}

GameInstance gen_poa_star_stubborn(const PoaStarStubbornSpec& spec) {
  int k = spec.k, ell = spec.ell;
  require(k >= 2, "poa-star-stubborn needs k >= 2");
  require(ell >= 1, "poa-star-stubborn needs ell >= 1");
  int n = k * ell;
  Builder b;
  b.node_count = n + 1;
  for (int leaf = 1; leaf <= n; ++leaf) b.edge(0, leaf);
  int next_leaf = 1;
  b.strategic(0, ell);
  b.strategic(1, 1);
  for (int i = 0; i < ell - 1; ++i) b.stubborn(1, next_leaf++);
  for (int t = 2; t < k; ++t)
    for (int i = 0; i < ell; ++i) b.stubborn(t, next_leaf++);
  return b.build(k);
}

GameInstance gen_poa_star_two_per_type(const PoaStarTwoPerTypeSpec& spec) {
  int k = spec.k, n = spec.n;
  require(k >= 2, "poa-star-two-per-type needs k >= 2");
  require(n >= 2 * (k - 1) + 1, "poa-star-two-per-type needs n >= 2k-1");
  std::vector<int> sizes(k, 2);
  sizes[k - 1] = n - 2 * (k - 1);
  return typed_on_topology(star_topology(n), sizes);
}

GameInstance gen_pos_unbounded(const PosUnboundedSpec& spec) {
  require(spec.eps.numerator() == 1 && spec.eps.denominator() >= 2,
          "pos-unbounded needs eps = 1/q with integer q >= 2");
  long long q = spec.eps.denominator();
  int x = static_cast<int>(2 * q - 2);
  int y = static_cast<int>(q - 1);
  Builder b;
  int z1 = b.add_nodes(1), z2 = b.add_nodes(1), z3 = b.add_nodes(1);
  b.edge(z1, z2);
  b.strategic(kBlue, 2);
  int reds_at_z1 = b.add_nodes(x + 1);
  for (int i = 0; i <= x; ++i) {
    b.edge(z1, reds_at_z1 + i);
    b.stubborn(kRed, reds_at_z1 + i);
  }
  int reds_at_z3 = b.add_nodes(y);
  for (int i = 0; i < y; ++i) {
    b.edge(z3, reds_at_z3 + i);
    b.stubborn(kRed, reds_at_z3 + i);
  }
  int blue_at_z3 = b.add_nodes(1);
  b.edge(z3, blue_at_z3);
  b.stubborn(kBlue, blue_at_z3);
  return b.build(2);
}

GameInstance gen_pos_three(const PosThreeSpec& spec) {
  int x = spec.x;
  require(x >= 1, "pos-three needs x >= 1");
  Builder b;
  int z = b.add_nodes(1), y = b.add_nodes(1), w = b.add_nodes(1);
  b.edge(y, w);
  b.strategic(kBlue, 2);
  int blues_at_z = b.add_nodes(x + 1);
  for (int i = 0; i <= x; ++i) {
    b.edge(z, blues_at_z + i);
    b.stubborn(kBlue, blues_at_z + i);
  }
  int reds_at_z = b.add_nodes(x);
  for (int i = 0; i < x; ++i) {
    b.edge(z, reds_at_z + i);
    b.stubborn(kRed, reds_at_z + i);
  }
  int red_at_y = b.add_nodes(1);
  b.edge(y, red_at_y);
  b.stubborn(kRed, red_at_y);
  return b.build(2);
}

GameInstance gen_pos_34_33() {
  Builder b;
  int hub = b.add_nodes(1);       // x
  int arm1 = b.add_nodes(1);      // y1
  int bridge = b.add_nodes(1);    // alpha
  int arm2 = b.add_nodes(1);      // y2
  int pendant = b.add_nodes(1);   // beta
  b.edge(hub, arm1);
  b.edge(hub, bridge);
  b.edge(hub, arm2);
  b.edge(bridge, pendant);
  int w = b.add_nodes(3);
  for (int i = 0; i < 3; ++i) b.edge(arm1, w + i);
  int z = b.add_nodes(3);
  for (int i = 0; i < 3; ++i) b.edge(arm2, z + i);
  b.strategic(kRed, 5);
  b.strategic(kBlue, 5);
  return b.build(2);
}

}  // namespace

GameInstance gen_family(const FamilySpec& spec) {
  return std::visit(
      [](const auto& s) -> GameInstance {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StarSpec>) {
          require(s.leaves >= 1, "star needs at least one leaf");
          return typed_on_topology(star_topology(s.leaves), s.type_sizes);
        } else if constexpr (std::is_same_v<T, PathSpec>) {
          require(s.nodes >= 2, "path needs at least two nodes");
          return typed_on_topology(path_topology(s.nodes), s.type_sizes);
        } else if constexpr (std::is_same_v<T, RingSpec>) {
          require(s.nodes >= 3, "ring needs at least three nodes");
          return typed_on_topology(ring_topology(s.nodes), s.type_sizes);
        } else if constexpr (std::is_same_v<T, NonexistenceTreeSpec>) {
          return gen_nonexistence_tree(s);
        } else if constexpr (std::is_same_v<T, PoaCliquesSpec>) {
          return gen_poa_cliques(s);
        } else if constexpr (std::is_same_v<T, PoaStubbornCliquesSpec>) {
          return gen_poa_stubborn_cliques(s);
        } else if constexpr (std::is_same_v<T, PoaStarStubbornSpec>) {
          return gen_poa_star_stubborn(s);
        } else if constexpr (std::is_same_v<T, PoaStarTwoPerTypeSpec>) {
          return gen_poa_star_two_per_type(s);
        } else if constexpr (std::is_same_v<T, PosUnboundedSpec>) {
          return gen_pos_unbounded(s);
        } else if constexpr (std::is_same_v<T, PosThreeSpec>) {
          return gen_pos_three(s);
        } else {
          return gen_pos_34_33();
        }
      },
      spec);
}

ExternalGraph complete_graph(int n) {
  ExternalGraph g{n, {}};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.edges.push_back({a, b});
  return g;
}

ExternalGraph cycle_graph(int n) {
  ExternalGraph g{n, {}};
  for (int i = 0; i < n; ++i) g.edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return g;
}

ExternalGraph star_external(int leaves) {
  ExternalGraph g{leaves + 1, {}};
  for (int i = 1; i <= leaves; ++i) g.edges.push_back({0, i});
  return g;
}

ExternalGraph with_isolated_vertices(ExternalGraph g, int extra) {
  g.vertex_count += extra;
  return g;
}

ExternalGraph remove_edge(ExternalGraph g, int u, int v) {
  if (u > v) std::swap(u, v);
  g.edges.erase(std::remove(g.edges.begin(), g.edges.end(), std::make_pair(u, v)),
                g.edges.end());
  return g;
}

CliqueEquilibriumReduction reduce_clique_equilibrium(const ExternalGraph& h, int s) {
  require(s >= 5, "reduce-clique needs s >= 5");
  require(h.vertex_count >= 1, "input graph is empty");
  CliqueEquilibriumReduction out;
  Builder b;

  // Component 1: the input graph plus s-2 stubborn blue agents adjacent to
  // every input vertex.
  int input_base = b.add_nodes(h.vertex_count);
  for (const auto& [u, v] : h.edges) b.edge(input_base + u, input_base + v);
  for (int v = 0; v < h.vertex_count; ++v) out.input_nodes.push_back(input_base + v);
  int wall = b.add_nodes(s - 2);
  for (int i = 0; i < s - 2; ++i)
    for (int v = 0; v < h.vertex_count; ++v) b.edge(wall + i, input_base + v);

  // Component 2: complete bipartite with s-2 open slots against 4s pinned
  // nodes (2s+1 red, 2s-1 blue).
  int slots = b.add_nodes(s - 2);
  for (int i = 0; i < s - 2; ++i) out.open_bipartite_slots.push_back(slots + i);
  int bank = b.add_nodes(4 * s);
  for (int i = 0; i < s - 2; ++i)
    for (int j = 0; j < 4 * s; ++j) b.edge(slots + i, bank + j);

  // Component 3: three empty nodes wired to a pool of 41 red and 80 blue
  // stubborn agents; y sees all of them, x sees 1 red and 2 blue, z sees 5
  // red and 7 blue.
  out.node_x = b.add_nodes(1);
  out.node_y = b.add_nodes(1);
  out.node_z = b.add_nodes(1);
  b.edge(out.node_x, out.node_y);
  int pool_red = b.add_nodes(41);
  int pool_blue = b.add_nodes(80);
  for (int i = 0; i < 41; ++i) b.edge(out.node_y, pool_red + i);
  for (int i = 0; i < 80; ++i) b.edge(out.node_y, pool_blue + i);
  b.edge(out.node_x, pool_red + 0);
  for (int i = 0; i < 2; ++i) b.edge(out.node_x, pool_blue + i);
  for (int i = 0; i < 5; ++i) b.edge(out.node_z, pool_red + i);
  for (int i = 0; i < 7; ++i) b.edge(out.node_z, pool_blue + i);
  out.stubborn_red_total = 41;
  out.stubborn_blue_total = 80;

  // Agents: the s strategic reds first, then stubborn agents in node order.
  b.strategic(kRed, s);
  for (int i = 0; i < s - 2; ++i) b.stubborn(kBlue, wall + i);
  for (int j = 0; j < 4 * s; ++j) b.stubborn(j < 2 * s + 1 ? kRed : kBlue, bank + j);
  for (int i = 0; i < 41; ++i) b.stubborn(kRed, pool_red + i);
  for (int i = 0; i < 80; ++i) b.stubborn(kBlue, pool_blue + i);

  out.instance = b.build(2);
  return out;
}

WelfareReduction reduce_clique_welfare(const ExternalGraph& h, int s) {
  require(s >= 2, "reduce-welfare needs s >= 2");
  Builder b;
  int input_base = b.add_nodes(h.vertex_count);
  for (const auto& [u, v] : h.edges) b.edge(input_base + u, input_base + v);
  int hub = b.add_nodes(1);
  for (int v = 0; v < h.vertex_count; ++v) b.edge(hub, input_base + v);
  // Isolated padding keeps at least one node empty when the input graph has
  // no more vertices than agents; it cannot change the optimum.
  int agents = s + 1;
  if (b.node_count <= agents) b.add_nodes(agents + 1 - b.node_count);
  b.strategic(kRed, s);
  b.stubborn(kBlue, hub);
  return {b.build(2), Rational(s - 1)};
}

WelfareReduction reduce_hamiltonian(const ExternalGraph& h) {
  require(h.vertex_count >= 3, "reduce-hamiltonian needs at least 3 vertices");
  int n = h.vertex_count;
  Topology topo = [&] {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return Topology(n + 1, std::move(edges));
  }();
  std::vector<std::optional<int>> pins(n, std::nullopt);
  GameInstance instance(std::move(topo), std::move(pins), SocialFriendship{h.edges},
                        FractionalUtility{});
  return {std::move(instance), Rational(n)};
}

GameInstance random_typed_on(const Topology& topology, const std::vector<int>& strategic_per_type,
                             const std::vector<int>& stubborn_per_type, UtilityModel model,
                             std::uint64_t seed) {
  require(strategic_per_type.size() == stubborn_per_type.size() && strategic_per_type.size() >= 2,
          "need matching per-type counts for at least two types");
  int k = static_cast<int>(strategic_per_type.size());
  int n = 0;
  int stubborn_total = 0;
  for (int t = 0; t < k; ++t) {
    require(strategic_per_type[t] + stubborn_per_type[t] >= 1, "every type needs an agent");
    n += strategic_per_type[t] + stubborn_per_type[t];
    stubborn_total += stubborn_per_type[t];
  }
  require(topology.node_count > n, "topology too small for the agent roster");
  Rng rng(seed);
  auto pin_nodes = rng.sample_distinct(topology.node_count, stubborn_total);
  Builder b;
  b.node_count = topology.node_count;
  b.edges = topology.edges;
  b.model = model;
  int next_pin = 0;
  for (int t = 0; t < k; ++t) b.strategic(t, strategic_per_type[t]);
  for (int t = 0; t < k; ++t)
    for (int i = 0; i < stubborn_per_type[t]; ++i) b.stubborn(t, pin_nodes[next_pin++]);
  return b.build(k);
}

GameInstance gen_random(const RandomSpec& spec) {
  require(spec.nodes >= 1, "need at least one node");
  constexpr int kMaxResample = 1000;
  Rng rng(spec.seed);
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < spec.nodes; ++u)
      for (int v = u + 1; v < spec.nodes; ++v)
        if (rng.chance(spec.edge_prob)) edges.push_back({u, v});
    Topology topo(spec.nodes, std::move(edges));
    if (spec.require_connected && !topo.is_connected()) continue;
    return random_typed_on(topo, spec.strategic_per_type, spec.stubborn_per_type, spec.model,
                           rng.next_u64());
  }
  throw std::invalid_argument("could not sample a connected topology within bounds");
}

GameInstance random_social_on(const Topology& topology, int n_agents,
                              const Rational& friend_prob, int stubborn, UtilityModel model,
                              std::uint64_t seed) {
  require(n_agents >= 1 && stubborn >= 0 && stubborn <= n_agents, "bad agent counts");
  require(topology.node_count > n_agents, "topology too small for the agent roster");
  Rng rng(seed);
  std::vector<std::pair<int, int>> social;
  for (int a = 0; a < n_agents; ++a)
    for (int b = a + 1; b < n_agents; ++b)
      if (rng.chance(friend_prob)) social.push_back({a, b});
  auto pin_nodes = rng.sample_distinct(topology.node_count, stubborn);
  std::vector<std::optional<int>> pins(n_agents, std::nullopt);
  for (int i = 0; i < stubborn; ++i) pins[i] = pin_nodes[i];
  return GameInstance(topology, std::move(pins), SocialFriendship{std::move(social)}, model);
}

GameInstance pad_with_singleton_types(const GameInstance& instance, int extra, bool stubborn) {
  require(instance.typed_mode(), "padding applies to typed instances");
  require(extra >= 0, "padding count must be non-negative");
  const auto& typed = std::get<TypedFriendship>(instance.friendship());
  Builder b;
  b.node_count = instance.topology().node_count;
  b.edges = instance.topology().edges;
  b.model = instance.utility_model();
  for (int i = 0; i < instance.agent_count(); ++i) {
    if (auto p = instance.pin(i))
      b.stubborn(typed.type_of[i], *p);
    else
      b.strategic(typed.type_of[i]);
  }
  int fresh = b.add_nodes(extra);
  for (int i = 0; i < extra; ++i) {
    if (stubborn)
      b.stubborn(typed.k + i, fresh + i);
    else
      b.strategic(typed.k + i);
  }
  return b.build(typed.k + extra);
}

}  // namespace schelling::instances
