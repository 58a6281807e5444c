#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "schelling/game.hpp"

namespace schelling::treedp {

// Hard capacity of the table layout; the running time is already
// exponential in the number of types, so a small fixed bound costs nothing.
constexpr int kMaxTypes = 4;

// All fractional utilities realizable with n agents:
// {i/j : 1 <= i <= j <= n} plus 0, reduced and deduplicated, ascending.
struct UtilityGrid {
  std::vector<Rational> values;
};
UtilityGrid utility_grid(int n);

// Exact fraction with small components, used inside table keys. A zero
// numerator always normalizes to 0/1 (utilities vanish with zero friends,
// including the 0/0 case).
struct Frac {
  std::int16_t num = 0;
  std::int16_t den = 1;

  Frac() = default;
  Frac(int numerator, int denominator);
  static Frac zero() { return {}; }
  static Frac one() { return Frac(1, 1); }

  Rational to_rational() const { return Rational(num, den); }

  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Frac& a, const Frac& b) {
    return static_cast<int>(a.num) * b.den < static_cast<int>(b.num) * a.den;
  }
  friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
  friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
  friend bool operator>=(const Frac& a, const Frac& b) { return !(a < b); }
};

// Utility of an agent seeing `friends` friends among `total` occupied
// neighbors under the fractional model.
inline Frac frac_utility(int friends, int total) {
  return friends == 0 ? Frac::zero() : Frac(friends, total);
}

// Table index for one node's subtree. Counts are per type; the bound
// vectors hold the tight values realized by a witnessing assignment class:
//  - min_deep / min_child: least utility of a strategic agent of each type
//    strictly below the children / at the children (1/1 when none);
//  - max_in: best utility an outside agent of each type could reach on an
//    empty node strictly inside the subtree (0/1 when none);
//  - max_top: best utility the owner's occupant could reach on an empty
//    node strictly inside (0/1 when none or owner empty).
struct DpKey {
  std::int8_t color = -1;  // -1 = owner node empty
  std::int8_t types = 2;
  std::array<std::int16_t, kMaxTypes> subtree_count{};
  std::array<std::int16_t, kMaxTypes> child_count{};
  std::array<Frac, kMaxTypes> min_deep{};
  std::array<Frac, kMaxTypes> min_child{};
  std::array<Frac, kMaxTypes> max_in{};
  Frac max_top{};

  friend bool operator==(const DpKey& a, const DpKey& b);
  // Lexicographic order used only for deterministic tie-breaking.
  friend bool operator<(const DpKey& a, const DpKey& b);
};

struct DpKeyHash {
  std::size_t operator()(const DpKey& k) const noexcept;
};

struct DpValue {
  Rational welfare{0};      // max welfare of strategic agents below the owner
  std::int32_t bp_prev = -1;   // entry index in the previous partial table
  std::int32_t bp_child = -1;  // entry index in the merged child's table
};

// Sparse table: only realizable tight entries are materialized.
struct DpTable {
  int owner = -1;
  int level = 0;  // number of children already merged into this table
  std::vector<std::pair<DpKey, DpValue>> entries;
  std::unordered_map<DpKey, std::int32_t, DpKeyHash> index;

  // Exact membership of a stored entry.
  bool contains(const DpKey& key) const { return index.count(key) > 0; }
  // Semantic feasibility: some stored entry realizes bounds at least as
  // strong as the requested ones. Monotone in the bound components by
  // construction.
  bool feasible(const DpKey& key) const;

  void upsert(const DpKey& key, const DpValue& value);
};

// Base table of a childless node per the leaf rule: the node is empty or
// carries one agent of its color, child counts zero, caps zero, lower
// bounds vacuous. Stubborn pins restrict the color. Errors when the node
// has children under the lowest-id rooting.
DpTable dp_leaf_table(const GameInstance& instance, int leaf);

// Same single-node base table without the leaf requirement; the level-0
// starting point for merging an internal node's children.
DpTable dp_base_table(const GameInstance& instance, int node);

// Folds the next child's table into a partial table for its parent,
// enforcing the cross-branch stability constraints. Errors when the child
// is not the next unmerged child of the partial table's owner.
DpTable dp_merge_child(const GameInstance& instance, const DpTable& partial,
                       const DpTable& child);

// Scans a fully merged root table for an accepting key: full census and
// root-node stability. Returns the accepting key with maximum welfare
// (ties to the lexicographically smallest key), or nullopt.
std::optional<DpKey> dp_root_accept(const GameInstance& instance, const DpTable& root_table);

// Equilibrium existence on a tree topology with the fractional model;
// returns a witness assignment if one exists.
std::optional<Assignment> tree_decide_equilibrium(const GameInstance& instance);

// Maximum-welfare equilibrium with its exact value, or nullopt.
std::optional<std::pair<Assignment, Rational>> tree_max_welfare_equilibrium(
    const GameInstance& instance);

// Welfare maximization with the stability constraints dropped.
std::pair<Assignment, Rational> tree_optimal_assignment(const GameInstance& instance);

// Largest per-node table materialized by the last engine run, exposed for
// the polynomial-size certificate checks.
struct DpStats {
  std::size_t max_table_entries = 0;
};
DpStats last_run_stats();

}  // namespace schelling::treedp
