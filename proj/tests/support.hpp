#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "schelling/game.hpp"

namespace schelling::test {

// Typed instance from raw parts; intentionally does not reject invalid
// combinations so validation behavior can be exercised.
inline GameInstance make_typed(int nodes, std::vector<std::pair<int, int>> edges,
                               std::vector<int> type_of,
                               std::vector<std::optional<int>> pins = {},
                               UtilityModel model = FractionalUtility{}, int k = -1) {
  if (k < 0) {
    k = 0;
    for (int t : type_of) k = std::max(k, t + 1);
    k = std::max(k, 2);
  }
  if (pins.empty()) pins.assign(type_of.size(), std::nullopt);
  return GameInstance(Topology(nodes, std::move(edges)), std::move(pins),
                      TypedFriendship{k, std::move(type_of)}, model);
}

inline GameInstance make_social(int nodes, std::vector<std::pair<int, int>> edges,
                                int agent_count, std::vector<std::pair<int, int>> social,
                                std::vector<std::optional<int>> pins = {},
                                UtilityModel model = FractionalUtility{}) {
  if (pins.empty()) pins.assign(agent_count, std::nullopt);
  return GameInstance(Topology(nodes, std::move(edges)), std::move(pins),
                      SocialFriendship{std::move(social)}, model);
}

// Labeled assignment that puts the strategic agents of each type onto the
// listed nodes (ascending agent ids onto the nodes in listed order);
// stubborn agents go to their pins.
inline Assignment place_types(const GameInstance& instance,
                              const std::vector<std::vector<int>>& nodes_per_type) {
  Assignment a;
  a.node_of.assign(instance.agent_count(), -1);
  std::vector<std::size_t> next(nodes_per_type.size(), 0);
  for (int i = 0; i < instance.agent_count(); ++i) {
    if (auto p = instance.pin(i)) {
      a.node_of[i] = *p;
    } else {
      int t = instance.type_of(i);
      a.node_of[i] = nodes_per_type[t][next[t]++];
    }
  }
  return a;
}

}  // namespace schelling::test
