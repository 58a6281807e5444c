#include "schelling/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace schelling {

namespace {

std::vector<std::pair<int, int>> canonical_edges(std::vector<std::pair<int, int>> edges) {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

Topology::Topology(int nodes, std::vector<std::pair<int, int>> edge_list)
    : node_count(nodes), edges(canonical_edges(std::move(edge_list))) {}

std::vector<std::vector<int>> Topology::adjacency() const {
  std::vector<std::vector<int>> adj(node_count);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    if (u < 0 || v >= node_count) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

int Topology::max_degree() const {
  auto adj = adjacency();
  int d = 0;
  for (const auto& nbrs : adj) d = std::max(d, static_cast<int>(nbrs.size()));
  return d;
}

bool Topology::is_connected() const {
  if (node_count == 0) return true;
  auto adj = adjacency();
  std::vector<bool> seen(node_count, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++visited;
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return visited == node_count;
}

bool Topology::is_tree() const {
  return is_connected() && static_cast<int>(edges.size()) == node_count - 1;
}

std::optional<int> Topology::star_center() const {
  if (node_count < 3) return std::nullopt;
  auto adj = adjacency();
  int center = -1;
  for (int v = 0; v < node_count; ++v) {
    if (static_cast<int>(adj[v].size()) == node_count - 1) {
      center = v;
    } else if (adj[v].size() != 1) {
      return std::nullopt;
    }
  }
  if (center < 0) return std::nullopt;
  return center;
}

GameInstance::GameInstance(Topology topology, std::vector<std::optional<int>> pin,
                           FriendshipSpec friendship, UtilityModel utility)
    : topology_(std::move(topology)),
      pin_(std::move(pin)),
      friendship_(std::move(friendship)),
      utility_model_(utility),
      adjacency_(topology_.adjacency()) {
  if (auto* social = std::get_if<SocialFriendship>(&friendship_)) {
    social->edges = canonical_edges(std::move(social->edges));
    int n = agent_count();
    social_friend_.assign(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : social->edges) {
      if (a == b || a < 0 || b >= n) continue;
      social_friend_[a][b] = social_friend_[b][a] = true;
    }
  }
}

std::vector<int> GameInstance::strategic_agents() const {
  std::vector<int> out;
  for (int i = 0; i < agent_count(); ++i)
    if (is_strategic(i)) out.push_back(i);
  return out;
}

std::vector<int> GameInstance::stubborn_agents() const {
  std::vector<int> out;
  for (int i = 0; i < agent_count(); ++i)
    if (is_stubborn(i)) out.push_back(i);
  return out;
}

bool GameInstance::are_friends(int a, int b) const {
  if (a == b) return false;
  if (const auto* typed = std::get_if<TypedFriendship>(&friendship_))
    return typed->type_of[a] == typed->type_of[b];
  return social_friend_[a][b];
}

std::vector<int> Assignment::occupant_of_nodes(int node_count) const {
  std::vector<int> occ(node_count, -1);
  for (int i = 0; i < static_cast<int>(node_of.size()); ++i) occ[node_of[i]] = i;
  return occ;
}

std::vector<ValidationError> validate(const GameInstance& instance) {
  std::vector<ValidationError> errors;
  const auto& topo = instance.topology();
  int n = instance.agent_count();

  if (topo.node_count <= n)
    errors.push_back({"too-few-nodes", "need node_count > agent count, got " +
                                           std::to_string(topo.node_count) + " nodes for " +
                                           std::to_string(n) + " agents"});

  for (const auto& [u, v] : topo.edges) {
    if (u == v)
      errors.push_back({"self-loop", "edge {" + std::to_string(u) + "," + std::to_string(v) + "}"});
    if (u < 0 || v < 0 || u >= topo.node_count || v >= topo.node_count)
      errors.push_back({"edge-out-of-range",
                        "edge {" + std::to_string(u) + "," + std::to_string(v) + "}"});
  }

  std::vector<int> pin_seen(topo.node_count, -1);
  for (int i = 0; i < n; ++i) {
    if (auto node = instance.pin(i)) {
      if (*node < 0 || *node >= topo.node_count) {
        errors.push_back({"pin-out-of-range", "agent " + std::to_string(i)});
        continue;
      }
      if (pin_seen[*node] >= 0)
        errors.push_back({"non-injective-lambda",
                          "agents " + std::to_string(pin_seen[*node]) + " and " +
                              std::to_string(i) + " pinned to node " + std::to_string(*node)});
      pin_seen[*node] = i;
    }
  }

  if (const auto* typed = std::get_if<TypedFriendship>(&instance.friendship())) {
    if (typed->k < 2)
      errors.push_back({"too-few-types", "typed mode needs k >= 2, got k = " +
                                             std::to_string(typed->k)});
    if (static_cast<int>(typed->type_of.size()) != n) {
      errors.push_back({"type-map-size", "type map does not cover all agents"});
    } else {
      std::vector<int> per_type(std::max(typed->k, 0), 0);
      for (int i = 0; i < n; ++i) {
        int t = typed->type_of[i];
        if (t < 0 || t >= typed->k) {
          errors.push_back({"type-out-of-range", "agent " + std::to_string(i)});
        } else {
          ++per_type[t];
        }
      }
      for (int t = 0; t < typed->k; ++t)
        if (per_type[t] == 0)
          errors.push_back({"empty-type", "type " + std::to_string(t) + " has no agents"});
    }
  } else {
    const auto& social = std::get<SocialFriendship>(instance.friendship());
    for (const auto& [a, b] : social.edges) {
      if (a == b)
        errors.push_back({"self-loop", "social edge {" + std::to_string(a) + "," +
                                           std::to_string(b) + "}"});
      if (a < 0 || b < 0 || a >= n || b >= n)
        errors.push_back({"social-edge-out-of-range",
                          "social edge {" + std::to_string(a) + "," + std::to_string(b) + "}"});
    }
  }
  return errors;
}

bool is_valid_assignment(const GameInstance& instance, const Assignment& assignment) {
  int n = instance.agent_count();
  if (static_cast<int>(assignment.node_of.size()) != n) return false;
  std::vector<bool> used(instance.topology().node_count, false);
  for (int i = 0; i < n; ++i) {
    int v = assignment.node_of[i];
    if (v < 0 || v >= instance.topology().node_count) return false;
    if (used[v]) return false;
    used[v] = true;
    if (auto p = instance.pin(i); p && *p != v) return false;
  }
  return true;
}

std::vector<int> friends(const GameInstance& instance, int agent) {
  if (agent < 0 || agent >= instance.agent_count())
    throw std::out_of_range("friends: unknown agent id " + std::to_string(agent));
  std::vector<int> out;
  for (int j = 0; j < instance.agent_count(); ++j)
    if (instance.are_friends(agent, j)) out.push_back(j);
  return out;
}

NeighborCounts neighbor_counts(const GameInstance& instance, const Assignment& assignment,
                               int agent, int at) {
  auto occ = assignment.occupant_of_nodes(instance.topology().node_count);
  int home = assignment.node_of[agent];
  if (at != home && occ[at] >= 0)
    throw std::invalid_argument("neighbor_counts: node " + std::to_string(at) +
                                " is occupied by another agent");
  NeighborCounts counts;
  for (int w : instance.adjacency()[at]) {
    int other = occ[w];
    if (other < 0 || other == agent) continue;  // agent vacates its old node
    if (instance.are_friends(agent, other))
      ++counts.friends;
    else
      ++counts.enemies;
  }
  return counts;
}

Rational utility_value(const UtilityModel& model, int friend_count, int enemy_count) {
  if (std::holds_alternative<FractionalUtility>(model)) {
    if (friend_count == 0) return Rational(0);
    return Rational(friend_count, friend_count + enemy_count);
  }
  if (std::holds_alternative<ModifiedFractionalUtility>(model))
    return Rational(friend_count + 1, friend_count + enemy_count + 1);
  const auto& linear = std::get<LinearUtility>(model);
  return linear.alpha * Rational(friend_count) - linear.beta * Rational(enemy_count);
}

Rational utility(const GameInstance& instance, const Assignment& assignment, int agent,
                 int at) {
  auto counts = neighbor_counts(instance, assignment, agent, at);
  return utility_value(instance.utility_model(), counts.friends, counts.enemies);
}

Rational social_welfare(const GameInstance& instance, const Assignment& assignment) {
  Rational total(0);
  for (int i = 0; i < instance.agent_count(); ++i)
    if (instance.is_strategic(i)) total += utility(instance, assignment, i);
  return total;
}

std::optional<std::pair<int, Rational>> best_deviation(const GameInstance& instance,
                                                       const Assignment& assignment,
                                                       int agent) {
  if (instance.is_stubborn(agent))
    throw std::invalid_argument("best_deviation: agent " + std::to_string(agent) +
                                " is stubborn");
  auto occ = assignment.occupant_of_nodes(instance.topology().node_count);
  Rational current = utility(instance, assignment, agent);
  std::optional<std::pair<int, Rational>> best;
  for (int z = 0; z < instance.topology().node_count; ++z) {
    if (occ[z] >= 0) continue;
    Rational candidate = utility(instance, assignment, agent, z);
    if (candidate <= current) continue;
    if (!best || candidate > best->second) best = {z, candidate};
  }
  return best;
}

bool is_equilibrium(const GameInstance& instance, const Assignment& assignment) {
  for (int i = 0; i < instance.agent_count(); ++i) {
    if (!instance.is_strategic(i)) continue;
    if (best_deviation(instance, assignment, i)) return false;
  }
  return true;
}

}  // namespace schelling
