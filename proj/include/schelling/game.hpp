#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "schelling/rational.hpp"

namespace schelling {

// Node locations available to the agents. Edges are canonicalized to
// (min,max) order, sorted and deduplicated on construction; self-loops are
// kept so validation can report them.
struct Topology {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;

  Topology() = default;
  Topology(int nodes, std::vector<std::pair<int, int>> edge_list);

  // adjacency()[v] lists neighbors of v in ascending order (self-loops skipped).
  std::vector<std::vector<int>> adjacency() const;

  int max_degree() const;
  bool is_connected() const;
  bool is_tree() const;  // connected and acyclic
  // Center node if the graph is a star with >= 3 nodes (one hub adjacent to
  // every other node, all others degree 1). 1- and 2-node graphs are not
  // reported as stars; they qualify for the degree<=2 path anyway.
  std::optional<int> star_center() const;
};

// Friendship given by a partition into k types: friends = same type.
struct TypedFriendship {
  int k = 0;
  std::vector<int> type_of;  // per agent, in 0..k-1
};

// Friendship given by an explicit symmetric relation over agents.
struct SocialFriendship {
  std::vector<std::pair<int, int>> edges;  // canonicalized like Topology edges
};

using FriendshipSpec = std::variant<TypedFriendship, SocialFriendship>;

struct FractionalUtility {};                     // f/(f+e), 0 when f = 0
struct ModifiedFractionalUtility {};             // (f+1)/(f+e+1)
struct LinearUtility {
  Rational alpha{1};
  Rational beta{1};
};
using UtilityModel =
    std::variant<FractionalUtility, ModifiedFractionalUtility, LinearUtility>;

// A game: topology, agents 0..n-1 split into strategic and stubborn (the
// latter pinned to distinct nodes), a friendship spec and a utility model.
class GameInstance {
 public:
  GameInstance() = default;
  GameInstance(Topology topology, std::vector<std::optional<int>> pin,
               FriendshipSpec friendship, UtilityModel utility);

  const Topology& topology() const { return topology_; }
  const FriendshipSpec& friendship() const { return friendship_; }
  const UtilityModel& utility_model() const { return utility_model_; }

  int agent_count() const { return static_cast<int>(pin_.size()); }
  bool is_stubborn(int agent) const { return pin_[agent].has_value(); }
  bool is_strategic(int agent) const { return !pin_[agent].has_value(); }
  // Pinned node of a stubborn agent; nullopt for strategic agents.
  std::optional<int> pin(int agent) const { return pin_[agent]; }

  std::vector<int> strategic_agents() const;
  std::vector<int> stubborn_agents() const;

  bool typed_mode() const { return std::holds_alternative<TypedFriendship>(friendship_); }
  // Valid only in typed mode.
  int type_count() const { return std::get<TypedFriendship>(friendship_).k; }
  int type_of(int agent) const { return std::get<TypedFriendship>(friendship_).type_of[agent]; }

  bool are_friends(int a, int b) const;

  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

 private:
  Topology topology_;
  std::vector<std::optional<int>> pin_;
  FriendshipSpec friendship_;
  UtilityModel utility_model_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<bool>> social_friend_;  // social mode only
};

// Placement of every agent on a node: injective, stubborn agents at their
// pins.
struct Assignment {
  std::vector<int> node_of;

  // node -> occupying agent, -1 when empty.
  std::vector<int> occupant_of_nodes(int node_count) const;
};

struct ValidationError {
  std::string code;    // stable machine-readable tag, e.g. "too-few-nodes"
  std::string detail;  // human-readable context
};

// Reports every violated structural invariant; empty result means the
// instance is well-formed.
std::vector<ValidationError> validate(const GameInstance& instance);

// Checks an assignment against an instance assumed valid: size, range,
// injectivity, pins.
bool is_valid_assignment(const GameInstance& instance, const Assignment& assignment);

std::vector<int> friends(const GameInstance& instance, int agent);

struct NeighborCounts {
  int friends = 0;
  int enemies = 0;
};

// Friend/enemy counts the agent would see when located at `at`, which must
// be the agent's current node or an empty one. The agent's old node is
// treated as vacated, so a hypothetical move next to the old position does
// not count the agent itself.
NeighborCounts neighbor_counts(const GameInstance& instance, const Assignment& assignment,
                               int agent, int at);

// Utility of `model` at the given friend/enemy counts.
Rational utility_value(const UtilityModel& model, int friend_count, int enemy_count);

Rational utility(const GameInstance& instance, const Assignment& assignment, int agent,
                 int at);
inline Rational utility(const GameInstance& instance, const Assignment& assignment,
                        int agent) {
  return utility(instance, assignment, agent, assignment.node_of[agent]);
}

// Total utility of the strategic agents.
Rational social_welfare(const GameInstance& instance, const Assignment& assignment);

// Best strictly improving move to an empty node for a strategic agent:
// maximum new utility, ties to the smallest node id. nullopt when no empty
// node strictly improves.
std::optional<std::pair<int, Rational>> best_deviation(const GameInstance& instance,
                                                       const Assignment& assignment,
                                                       int agent);

bool is_equilibrium(const GameInstance& instance, const Assignment& assignment);

}  // namespace schelling
