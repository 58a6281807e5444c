#include "schelling/treedp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace schelling::treedp {

namespace {

int gcd_int(int a, int b) {
  while (b != 0) {
    int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

DpStats g_last_stats;

}  // namespace

Frac::Frac(int numerator, int denominator) {
  if (numerator == 0) {
    num = 0;
    den = 1;
    return;
  }
  if (numerator < 0 || denominator <= 0)
    throw std::domain_error("treedp::Frac: fractions here are non-negative");
  int g = gcd_int(numerator, denominator);
  numerator /= g;
  denominator /= g;
  if (numerator > INT16_MAX || denominator > INT16_MAX)
    throw std::overflow_error("treedp::Frac: component out of range");
  num = static_cast<std::int16_t>(numerator);
  den = static_cast<std::int16_t>(denominator);
}

UtilityGrid utility_grid(int n) {
  if (n < 1) throw std::invalid_argument("utility_grid: need n >= 1");
  std::vector<Rational> values;
  values.push_back(Rational(0));
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= j; ++i) values.push_back(Rational(i, j));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return {std::move(values)};
}

bool operator==(const DpKey& a, const DpKey& b) {
  return a.color == b.color && a.types == b.types && a.subtree_count == b.subtree_count &&
         a.child_count == b.child_count && a.min_deep == b.min_deep &&
         a.min_child == b.min_child && a.max_in == b.max_in && a.max_top == b.max_top;
}

bool operator<(const DpKey& a, const DpKey& b) {
  auto frac_tuple = [](const Frac& f) { return std::make_pair(f.num, f.den); };
  auto tuple_of = [&](const DpKey& k) {
    std::vector<int> flat;
    flat.push_back(k.color);
    for (int t = 0; t < kMaxTypes; ++t) flat.push_back(k.subtree_count[t]);
    for (int t = 0; t < kMaxTypes; ++t) flat.push_back(k.child_count[t]);
    for (const auto* arr : {&k.min_deep, &k.min_child, &k.max_in})
      for (int t = 0; t < kMaxTypes; ++t) {
        auto [n, d] = frac_tuple((*arr)[t]);
        flat.push_back(n);
        flat.push_back(d);
      }
    auto [n, d] = frac_tuple(k.max_top);
    flat.push_back(n);
    flat.push_back(d);
    return flat;
  };
  return tuple_of(a) < tuple_of(b);
}

std::size_t DpKeyHash::operator()(const DpKey& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::size_t>(k.color + 1));
  for (int t = 0; t < kMaxTypes; ++t) {
    mix(static_cast<std::size_t>(k.subtree_count[t]));
    mix(static_cast<std::size_t>(k.child_count[t]));
    mix((static_cast<std::size_t>(k.min_deep[t].num) << 16) ^ k.min_deep[t].den);
    mix((static_cast<std::size_t>(k.min_child[t].num) << 16) ^ k.min_child[t].den);
    mix((static_cast<std::size_t>(k.max_in[t].num) << 16) ^ k.max_in[t].den);
  }
  mix((static_cast<std::size_t>(k.max_top.num) << 16) ^ k.max_top.den);
  return h;
}

bool DpTable::feasible(const DpKey& key) const {
  for (const auto& [stored, value] : entries) {
    if (stored.color != key.color || stored.subtree_count != key.subtree_count ||
        stored.child_count != key.child_count)
      continue;
    bool ok = stored.max_top <= key.max_top;
    for (int t = 0; ok && t < kMaxTypes; ++t)
      ok = stored.min_deep[t] >= key.min_deep[t] && stored.min_child[t] >= key.min_child[t] &&
           stored.max_in[t] <= key.max_in[t];
    if (ok) return true;
  }
  return false;
}

void DpTable::upsert(const DpKey& key, const DpValue& value) {
  auto [it, inserted] = index.try_emplace(key, static_cast<std::int32_t>(entries.size()));
  if (inserted) {
    entries.push_back({key, value});
  } else if (value.welfare > entries[it->second].second.welfare) {
    entries[it->second].second = value;
  }
}

namespace {

// Color-level summary of the instance the tables operate on. Typed games
// map types to colors directly; social games qualify when the friendship
// graph is a disjoint union of cliques (one color per clique).
struct TypedView {
  int k = 0;
  std::vector<int> census;
  std::vector<int> strategic_census;
  std::vector<int> color_of_agent;
  std::vector<int> pin_color;              // per node, -1 unpinned
  std::vector<int> pinned_agent_of_node;   // per node, -1 unpinned
  std::vector<std::vector<int>> strategic_ids;  // per color, ascending
};

TypedView make_view(const GameInstance& instance) {
  TypedView view;
  int n = instance.agent_count();
  if (instance.typed_mode()) {
    view.k = instance.type_count();
    view.color_of_agent.resize(n);
    for (int i = 0; i < n; ++i) view.color_of_agent[i] = instance.type_of(i);
  } else {
    // Components of the friendship relation, each required to be a clique.
    view.color_of_agent.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (view.color_of_agent[i] >= 0) continue;
      int color = view.k++;
      std::vector<int> stack{i};
      view.color_of_agent[i] = color;
      while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b = 0; b < n; ++b)
          if (instance.are_friends(a, b) && view.color_of_agent[b] < 0) {
            view.color_of_agent[b] = color;
            stack.push_back(b);
          }
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (view.color_of_agent[a] == view.color_of_agent[b] && !instance.are_friends(a, b))
          throw std::invalid_argument(
              "tree dp: social friendship graph is not a union of cliques");
  }
  if (view.k > kMaxTypes)
    throw std::invalid_argument("tree dp: supports at most " + std::to_string(kMaxTypes) +
                                " types, instance has " + std::to_string(view.k));
  view.census.assign(std::max(view.k, 1), 0);
  view.strategic_census.assign(std::max(view.k, 1), 0);
  view.strategic_ids.assign(std::max(view.k, 1), {});
  view.pin_color.assign(instance.topology().node_count, -1);
  view.pinned_agent_of_node.assign(instance.topology().node_count, -1);
  for (int i = 0; i < n; ++i) {
    int c = view.color_of_agent[i];
    ++view.census[c];
    if (auto p = instance.pin(i)) {
      view.pin_color[*p] = c;
      view.pinned_agent_of_node[*p] = i;
    } else {
      ++view.strategic_census[c];
      view.strategic_ids[c].push_back(i);
    }
  }
  return view;
}

struct RootedTree {
  int root = 0;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> postorder;
};

RootedTree root_tree(const Topology& topo) {
  if (!topo.is_tree()) throw std::invalid_argument("tree dp: topology is not a tree");
  RootedTree tree;
  tree.root = 0;
  int v_count = topo.node_count;
  tree.parent.assign(v_count, -1);
  tree.children.assign(v_count, {});
  auto adj = topo.adjacency();
  // Iterative DFS; children end up in ascending order, postorder lists
  // children before parents.
  std::vector<std::pair<int, std::size_t>> stack{{tree.root, 0}};
  std::vector<bool> seen(v_count, false);
  seen[tree.root] = true;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next == adj[v].size()) {
      tree.postorder.push_back(v);
      stack.pop_back();
      continue;
    }
    int w = adj[v][next++];
    if (seen[w]) continue;
    seen[w] = true;
    tree.parent[w] = v;
    tree.children[v].push_back(w);
    stack.push_back({w, 0});
  }
  return tree;
}

struct Ctx {
  const GameInstance* instance = nullptr;
  TypedView view;
  RootedTree tree;
};

Ctx make_ctx(const GameInstance& instance) {
  if (!std::holds_alternative<FractionalUtility>(instance.utility_model()))
    throw std::invalid_argument("tree dp: requires the fractional utility model");
  Ctx ctx;
  ctx.instance = &instance;
  ctx.tree = root_tree(instance.topology());
  ctx.view = make_view(instance);
  return ctx;
}

DpTable base_table(const Ctx& ctx, int node) {
  DpTable table;
  table.owner = node;
  table.level = 0;
  auto add = [&](int color) {
    DpKey key;
    key.color = static_cast<std::int8_t>(color);
    key.types = static_cast<std::int8_t>(ctx.view.k);
    for (int t = 0; t < ctx.view.k; ++t) {
      key.min_deep[t] = Frac::one();
      key.min_child[t] = Frac::one();
    }
    if (color >= 0) key.subtree_count[color] = 1;
    table.upsert(key, DpValue{Rational(0), -1, -1});
  };
  int pin = ctx.view.pin_color[node];
  if (pin >= 0) {
    add(pin);
  } else {
    add(-1);
    for (int c = 0; c < ctx.view.k; ++c)
      if (ctx.view.strategic_census[c] > 0) add(c);
  }
  return table;
}

Frac min_frac(const Frac& a, const Frac& b) { return b < a ? b : a; }
Frac max_frac(const Frac& a, const Frac& b) { return a < b ? b : a; }

// Drops entries realizing weaker bounds than a sibling with the same color
// and counts at no welfare gain; every later comparison is monotone in the
// bound components, so this cannot change any verdict or optimum.
void compact(DpTable& table, int k) {
  auto dominates = [&](const std::pair<DpKey, DpValue>& a, const std::pair<DpKey, DpValue>& b) {
    if (!(a.first.max_top <= b.first.max_top)) return false;
    for (int t = 0; t < k; ++t) {
      if (!(a.first.min_deep[t] >= b.first.min_deep[t])) return false;
      if (!(a.first.min_child[t] >= b.first.min_child[t])) return false;
      if (!(a.first.max_in[t] <= b.first.max_in[t])) return false;
    }
    return a.second.welfare >= b.second.welfare;
  };
  auto bucket_key = [](const DpKey& key) {
    DpKey reduced = key;
    reduced.min_deep = {};
    reduced.min_child = {};
    reduced.max_in = {};
    reduced.max_top = {};
    return reduced;
  };
  std::unordered_map<DpKey, std::vector<std::int32_t>, DpKeyHash> buckets;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(table.entries.size()); ++i)
    buckets[bucket_key(table.entries[i].first)].push_back(i);

  std::vector<bool> dead(table.entries.size(), false);
  for (auto& [key, members] : buckets) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      if (dead[members[a]]) continue;
      for (std::size_t b = 0; b < members.size(); ++b) {
        if (a == b || dead[members[b]]) continue;
        if (dominates(table.entries[members[a]], table.entries[members[b]])) dead[members[b]] = true;
      }
    }
  }
  DpTable packed;
  packed.owner = table.owner;
  packed.level = table.level;
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    if (!dead[i]) packed.upsert(table.entries[i].first, table.entries[i].second);
  table = std::move(packed);
}

DpTable merge_tables(const Ctx& ctx, const DpTable& partial, const DpTable& child,
                     bool enforce_stability) {
  int w = partial.owner;
  const auto& siblings = ctx.tree.children[w];
  if (partial.level >= static_cast<int>(siblings.size()) ||
      siblings[partial.level] != child.owner)
    throw std::invalid_argument("dp merge: table owners inconsistent with the rooted tree");
  if (child.level != static_cast<int>(ctx.tree.children[child.owner].size()))
    throw std::invalid_argument("dp merge: child table is not fully merged");

  int k = ctx.view.k;
  bool child_unpinned = ctx.view.pin_color[child.owner] < 0;

  DpTable out;
  out.owner = w;
  out.level = partial.level + 1;

  for (std::int32_t ai = 0; ai < static_cast<std::int32_t>(partial.entries.size()); ++ai) {
    const auto& [a_key, a_val] = partial.entries[ai];
    int cw = a_key.color;
    for (std::int32_t bi = 0; bi < static_cast<std::int32_t>(child.entries.size()); ++bi) {
      const auto& [b_key, b_val] = child.entries[bi];
      int cc = b_key.color;

      DpKey key;
      key.color = a_key.color;
      key.types = static_cast<std::int8_t>(k);
      bool over_census = false;
      for (int t = 0; t < k; ++t) {
        key.subtree_count[t] =
            static_cast<std::int16_t>(a_key.subtree_count[t] + b_key.subtree_count[t]);
        if (key.subtree_count[t] > ctx.view.census[t]) over_census = true;
        key.child_count[t] =
            static_cast<std::int16_t>(a_key.child_count[t] + (cc == t ? 1 : 0));
      }
      if (over_census) continue;

      int sum_bk = 0;
      for (int t = 0; t < k; ++t) sum_bk += b_key.child_count[t];

      // Utility of the agent sitting on the child node: its own children
      // plus the owner node when occupied.
      Frac child_occupant_u;
      if (cc >= 0)
        child_occupant_u = frac_utility(b_key.child_count[cc] + (cw == cc ? 1 : 0),
                                        sum_bk + (cw >= 0 ? 1 : 0));

      // Deviation value an agent of color t reaches at the child node when
      // it is empty; from_below adjusts for a mover that is one of the
      // child's own children and vacates its slot.
      auto move_to_child = [&](int t, bool from_below) {
        int drop = from_below ? 1 : 0;
        return frac_utility(b_key.child_count[t] - drop + (cw == t ? 1 : 0),
                            sum_bk - drop + (cw >= 0 ? 1 : 0));
      };

      if (enforce_stability) {
        bool ok = true;
        for (int t = 0; t < k && ok; ++t) {
          // Cross-branch moves in both directions.
          ok = b_key.min_child[t] >= a_key.max_in[t] && b_key.min_deep[t] >= a_key.max_in[t] &&
               a_key.min_child[t] >= b_key.max_in[t] && a_key.min_deep[t] >= b_key.max_in[t];
          if (ok && cc < 0) {
            Frac via = move_to_child(t, false);
            ok = a_key.min_child[t] >= via && a_key.min_deep[t] >= via &&
                 b_key.min_deep[t] >= via;
            if (ok && b_key.child_count[t] > 0) ok = b_key.min_child[t] >= move_to_child(t, true);
          }
        }
        if (ok && cc >= 0 && child_unpinned)
          ok = child_occupant_u >= a_key.max_in[cc] && child_occupant_u >= b_key.max_top;
        if (!ok) continue;
      }

      if (enforce_stability) {
        for (int t = 0; t < k; ++t) {
          key.min_child[t] = a_key.min_child[t];
          if (cc == t && child_unpinned)
            key.min_child[t] = min_frac(key.min_child[t], child_occupant_u);
          key.min_deep[t] =
              min_frac(a_key.min_deep[t], min_frac(b_key.min_child[t], b_key.min_deep[t]));
          key.max_in[t] = max_frac(a_key.max_in[t], b_key.max_in[t]);
          if (cc < 0) key.max_in[t] = max_frac(key.max_in[t], move_to_child(t, false));
        }
        if (cw >= 0) {
          key.max_top = max_frac(a_key.max_top, b_key.max_in[cw]);
          if (cc < 0)
            key.max_top = max_frac(key.max_top, frac_utility(b_key.child_count[cw], sum_bk));
        }
      }

      Rational welfare = a_val.welfare + b_val.welfare;
      if (cc >= 0 && child_unpinned) welfare += child_occupant_u.to_rational();
      out.upsert(key, DpValue{welfare, ai, bi});
    }
  }
  if (enforce_stability) compact(out, k);
  return out;
}

struct RootScanHit {
  std::int32_t entry = -1;
  DpKey key;
  Rational total_welfare{0};
};

std::optional<RootScanHit> root_scan(const Ctx& ctx, const DpTable& root_table,
                                     bool enforce_stability) {
  int k = ctx.view.k;
  bool root_unpinned = ctx.view.pin_color[ctx.tree.root] < 0;
  std::optional<RootScanHit> best;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(root_table.entries.size()); ++i) {
    const auto& [key, value] = root_table.entries[i];
    bool census_ok = true;
    for (int t = 0; t < k; ++t)
      if (key.subtree_count[t] != ctx.view.census[t]) census_ok = false;
    if (!census_ok) continue;

    int sum_k = 0;
    for (int t = 0; t < k; ++t) sum_k += key.child_count[t];

    Rational total = value.welfare;
    if (key.color >= 0) {
      Frac root_u = frac_utility(key.child_count[key.color], sum_k);
      if (enforce_stability && root_unpinned && !(root_u >= key.max_top)) continue;
      if (root_unpinned) total += root_u.to_rational();
    } else if (enforce_stability) {
      bool stable = true;
      for (int t = 0; t < k && stable; ++t) {
        stable = key.min_deep[t] >= frac_utility(key.child_count[t], sum_k);
        if (stable && key.child_count[t] > 0)
          stable = key.min_child[t] >= frac_utility(key.child_count[t] - 1, sum_k - 1);
      }
      if (!stable) continue;
    }
    if (!best || total > best->total_welfare ||
        (total == best->total_welfare && key < best->key)) {
      best = RootScanHit{i, key, total};
    }
  }
  return best;
}

struct EngineRun {
  Ctx ctx;
  std::vector<std::vector<DpTable>> chains;
  std::optional<RootScanHit> hit;
};

EngineRun run_engine(const GameInstance& instance, bool enforce_stability) {
  EngineRun run{make_ctx(instance), {}, std::nullopt};
  const auto& tree = run.ctx.tree;
  run.chains.assign(instance.topology().node_count, {});
  g_last_stats = DpStats{};
  for (int node : tree.postorder) {
    auto& chain = run.chains[node];
    chain.push_back(base_table(run.ctx, node));
    for (int child : tree.children[node]) {
      chain.push_back(
          merge_tables(run.ctx, chain.back(), run.chains[child].back(), enforce_stability));
      g_last_stats.max_table_entries =
          std::max(g_last_stats.max_table_entries, chain.back().entries.size());
    }
  }
  run.hit = root_scan(run.ctx, run.chains[tree.root].back(), enforce_stability);
  return run;
}

Assignment reconstruct(const EngineRun& run) {
  const auto& ctx = run.ctx;
  int v_count = ctx.instance->topology().node_count;
  std::vector<int> node_color(v_count, -1);

  std::function<void(int, std::int32_t)> walk = [&](int node, std::int32_t entry_idx) {
    const auto& chain = run.chains[node];
    int level = static_cast<int>(chain.size()) - 1;
    std::int32_t idx = entry_idx;
    while (level > 0) {
      const auto& value = chain[level].entries[idx].second;
      int child = ctx.tree.children[node][level - 1];
      walk(child, value.bp_child);
      idx = value.bp_prev;
      --level;
    }
    node_color[node] = chain[0].entries[idx].first.color;
  };
  walk(ctx.tree.root, run.hit->entry);

  Assignment a;
  a.node_of.assign(ctx.instance->agent_count(), -1);
  std::vector<std::size_t> next(std::max(ctx.view.k, 1), 0);
  for (int v = 0; v < v_count; ++v) {
    int c = node_color[v];
    if (c < 0) continue;
    if (int pinned = ctx.view.pinned_agent_of_node[v]; pinned >= 0) {
      a.node_of[pinned] = v;
    } else {
      a.node_of[ctx.view.strategic_ids[c][next[c]++]] = v;
    }
  }
  return a;
}

}  // namespace

DpTable dp_leaf_table(const GameInstance& instance, int leaf) {
  Ctx ctx = make_ctx(instance);
  if (leaf < 0 || leaf >= instance.topology().node_count)
    throw std::invalid_argument("dp_leaf_table: node out of range");
  if (!ctx.tree.children[leaf].empty())
    throw std::invalid_argument("dp_leaf_table: node " + std::to_string(leaf) +
                                " is not a leaf of the rooted tree");
  return base_table(ctx, leaf);
}

DpTable dp_base_table(const GameInstance& instance, int node) {
  Ctx ctx = make_ctx(instance);
  if (node < 0 || node >= instance.topology().node_count)
    throw std::invalid_argument("dp_base_table: node out of range");
  return base_table(ctx, node);
}

DpTable dp_merge_child(const GameInstance& instance, const DpTable& partial,
                       const DpTable& child) {
  Ctx ctx = make_ctx(instance);
  return merge_tables(ctx, partial, child, /*enforce_stability=*/true);
}

std::optional<DpKey> dp_root_accept(const GameInstance& instance, const DpTable& root_table) {
  Ctx ctx = make_ctx(instance);
  if (root_table.owner != ctx.tree.root)
    throw std::invalid_argument("dp_root_accept: table does not belong to the root");
  auto hit = root_scan(ctx, root_table, /*enforce_stability=*/true);
  if (!hit) return std::nullopt;
  return hit->key;
}

std::optional<Assignment> tree_decide_equilibrium(const GameInstance& instance) {
  auto run = run_engine(instance, /*enforce_stability=*/true);
  if (!run.hit) return std::nullopt;
  return reconstruct(run);
}

std::optional<std::pair<Assignment, Rational>> tree_max_welfare_equilibrium(
    const GameInstance& instance) {
  auto run = run_engine(instance, /*enforce_stability=*/true);
  if (!run.hit) return std::nullopt;
  return {{reconstruct(run), run.hit->total_welfare}};
}

std::pair<Assignment, Rational> tree_optimal_assignment(const GameInstance& instance) {
  auto run = run_engine(instance, /*enforce_stability=*/false);
  if (!run.hit)
    throw std::logic_error("tree_optimal_assignment: no placement found on a valid instance");
  return {reconstruct(run), run.hit->total_welfare};
}

DpStats last_run_stats() { return g_last_stats; }

}  // namespace schelling::treedp
