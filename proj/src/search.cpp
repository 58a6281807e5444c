#include "schelling/search.hpp"

#include <algorithm>
#include <climits>

namespace schelling::search {

namespace {

// Strict comparison of model utilities at two friend/enemy count pairs,
// without allocating rationals in the enumeration hot path.
bool utility_improves(const UtilityModel& model, int f1, int e1, int f2, int e2) {
  if (std::holds_alternative<FractionalUtility>(model)) {
    if (f2 == 0) return false;  // target utility is 0, never a strict gain
    if (f1 == 0) return true;   // current utility is 0, target is positive
    return static_cast<long long>(f1) * (f2 + e2) < static_cast<long long>(f2) * (f1 + e1);
  }
  if (std::holds_alternative<ModifiedFractionalUtility>(model)) {
    return static_cast<long long>(f1 + 1) * (f2 + e2 + 1) <
           static_cast<long long>(f2 + 1) * (f1 + e1 + 1);
  }
  const auto& lin = std::get<LinearUtility>(model);
  __int128 lhs = static_cast<__int128>(lin.alpha.numerator()) * lin.beta.denominator() *
                 (f1 - f2);
  __int128 rhs = static_cast<__int128>(lin.beta.numerator()) * lin.alpha.denominator() *
                 (e1 - e2);
  return lhs < rhs;
}

long long mul_clamped(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > LLONG_MAX / b) return LLONG_MAX;
  return a * b;
}

long long binomial_clamped(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  __int128 acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > LLONG_MAX) return LLONG_MAX;
  }
  return static_cast<long long>(acc);
}

// Shared context for the typed fast path: colors are type ids, -1 = empty.
struct TypedContext {
  const GameInstance& instance;
  int k;
  std::vector<int> free_nodes;           // unpinned nodes, ascending
  std::vector<int> base_color;           // pinned stubborn colors, else -1
  std::vector<int> strategic_per_type;   // counts to place
  std::vector<std::vector<int>> strategic_ids_per_type;

  explicit TypedContext(const GameInstance& inst) : instance(inst) {
    k = inst.type_count();
    int v_count = inst.topology().node_count;
    base_color.assign(v_count, -1);
    std::vector<bool> pinned(v_count, false);
    strategic_per_type.assign(k, 0);
    strategic_ids_per_type.assign(k, {});
    for (int i = 0; i < inst.agent_count(); ++i) {
      if (auto p = inst.pin(i)) {
        pinned[*p] = true;
        base_color[*p] = inst.type_of(i);
      } else {
        ++strategic_per_type[inst.type_of(i)];
        strategic_ids_per_type[inst.type_of(i)].push_back(i);
      }
    }
    for (int v = 0; v < v_count; ++v)
      if (!pinned[v]) free_nodes.push_back(v);
  }

  // Expands a coloring of the free nodes into the canonical labeled
  // assignment: strategic ids ascending onto chosen nodes ascending.
  Assignment expand(const std::vector<int>& color) const {
    Assignment a;
    a.node_of.assign(instance.agent_count(), -1);
    for (int i = 0; i < instance.agent_count(); ++i)
      if (auto p = instance.pin(i)) a.node_of[i] = *p;
    std::vector<int> next(k, 0);
    for (int v : free_nodes) {
      int t = color[v];
      if (t < 0) continue;
      a.node_of[strategic_ids_per_type[t][next[t]++]] = v;
    }
    return a;
  }
};

// Per-coloring statistics over a full node coloring (pins included).
struct ColoringEval {
  bool equilibrium;
  Rational welfare;
};

class TypedEvaluator {
 public:
  explicit TypedEvaluator(const TypedContext& ctx)
      : ctx_(ctx),
        adj_(ctx.instance.adjacency()),
        v_count_(ctx.instance.topology().node_count) {
    adjacent_.assign(v_count_, std::vector<bool>(v_count_, false));
    for (int v = 0; v < v_count_; ++v)
      for (int w : adj_[v]) adjacent_[v][w] = true;
    strategic_node_.assign(v_count_, false);
  }

  ColoringEval evaluate(const std::vector<int>& color) {
    // cnt[v][t]: occupied neighbors of v with color t.
    cnt_.assign(v_count_, std::vector<int>(ctx_.k, 0));
    occupied_nbrs_.assign(v_count_, 0);
    for (int v = 0; v < v_count_; ++v) {
      for (int w : adj_[v]) {
        if (color[w] >= 0) {
          ++cnt_[v][color[w]];
          ++occupied_nbrs_[v];
        }
      }
    }
    std::fill(strategic_node_.begin(), strategic_node_.end(), false);
    for (int v : ctx_.free_nodes)
      if (color[v] >= 0) strategic_node_[v] = true;

    ColoringEval out{true, Rational(0)};
    const auto& model = ctx_.instance.utility_model();
    for (int u = 0; u < v_count_; ++u) {
      if (!strategic_node_[u]) continue;
      int t = color[u];
      int f1 = cnt_[u][t];
      int e1 = occupied_nbrs_[u] - f1;
      out.welfare += utility_value(model, f1, e1);
      if (!out.equilibrium) continue;
      for (int z = 0; z < v_count_; ++z) {
        if (color[z] >= 0) continue;
        int drop = adjacent_[u][z] ? 1 : 0;  // mover vacates its old node
        int f2 = cnt_[z][t] - drop;
        int e2 = occupied_nbrs_[z] - drop - f2;
        if (utility_improves(model, f1, e1, f2, e2)) {
          out.equilibrium = false;
          break;
        }
      }
    }
    return out;
  }

 private:
  const TypedContext& ctx_;
  std::vector<std::vector<int>> adj_;
  int v_count_;
  std::vector<std::vector<bool>> adjacent_;
  std::vector<std::vector<int>> cnt_;
  std::vector<int> occupied_nbrs_;
  std::vector<bool> strategic_node_;
};

// Enumerates colorings: for each type in order, choose an ascending subset
// of the remaining free nodes.
void enumerate_colorings(const TypedContext& ctx,
                         const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> color = ctx.base_color;
  std::vector<bool> taken(ctx.instance.topology().node_count, false);

  std::function<void(int)> place_type = [&](int t) {
    if (t == ctx.k) {
      visit(color);
      return;
    }
    int want = ctx.strategic_per_type[t];
    std::vector<int> chosen;
    std::function<void(std::size_t, int)> choose = [&](std::size_t from, int left) {
      if (left == 0) {
        place_type(t + 1);
        return;
      }
      for (std::size_t i = from; i + left <= ctx.free_nodes.size(); ++i) {
        int v = ctx.free_nodes[i];
        if (taken[v]) continue;
        taken[v] = true;
        color[v] = t;
        choose(i + 1, left - 1);
        taken[v] = false;
        color[v] = -1;
      }
    };
    if (want == 0)
      place_type(t + 1);
    else
      choose(0, want);
  };
  place_type(0);
}

// Social mode: labeled injective placements of the strategic agents onto
// the free nodes, lexicographic in (agent order, node choice).
void enumerate_social(const GameInstance& instance,
                      const std::function<void(const Assignment&)>& visit) {
  int v_count = instance.topology().node_count;
  std::vector<int> free_nodes;
  std::vector<bool> taken(v_count, false);
  Assignment a;
  a.node_of.assign(instance.agent_count(), -1);
  for (int i = 0; i < instance.agent_count(); ++i)
    if (auto p = instance.pin(i)) {
      a.node_of[i] = *p;
      taken[*p] = true;
    }
  for (int v = 0; v < v_count; ++v)
    if (!taken[v]) free_nodes.push_back(v);
  auto strategic = instance.strategic_agents();

  std::function<void(std::size_t)> place = [&](std::size_t idx) {
    if (idx == strategic.size()) {
      visit(a);
      return;
    }
    int agent = strategic[idx];
    for (int v : free_nodes) {
      if (taken[v]) continue;
      taken[v] = true;
      a.node_of[agent] = v;
      place(idx + 1);
      taken[v] = false;
      a.node_of[agent] = -1;
    }
  };
  place(0);
}

void check_budget(const GameInstance& instance, const Budget& budget) {
  long long count = assignment_count(instance);
  if (count > budget.max_units) throw BudgetExceeded(count, budget.max_units);
}

}  // namespace

long long assignment_count(const GameInstance& instance) {
  int free_count = instance.topology().node_count -
                   static_cast<int>(instance.stubborn_agents().size());

  if (instance.typed_mode()) {
    TypedContext ctx(instance);
    long long total = 1;
    int remaining = static_cast<int>(ctx.free_nodes.size());
    for (int t = 0; t < ctx.k; ++t) {
      total = mul_clamped(total, binomial_clamped(remaining, ctx.strategic_per_type[t]));
      remaining -= ctx.strategic_per_type[t];
    }
    return total;
  }
  long long total = 1;
  int strategic = static_cast<int>(instance.strategic_agents().size());
  for (int i = 0; i < strategic; ++i) total = mul_clamped(total, free_count - i);
  return total;
}

void for_each_assignment(const GameInstance& instance, const Budget& budget,
                         const std::function<void(const Assignment&)>& visit) {
  check_budget(instance, budget);
  if (instance.typed_mode()) {
    TypedContext ctx(instance);
    enumerate_colorings(ctx, [&](const std::vector<int>& color) { visit(ctx.expand(color)); });
  } else {
    enumerate_social(instance, visit);
  }
}

std::vector<Assignment> enumerate_assignments(const GameInstance& instance,
                                              const Budget& budget) {
  std::vector<Assignment> out;
  for_each_assignment(instance, budget, [&](const Assignment& a) { out.push_back(a); });
  return out;
}

namespace {

// One pass over the space, optionally collecting the full equilibrium list.
void scan(const GameInstance& instance, const Budget& budget, InstanceAnalysis* analysis,
          std::vector<std::pair<Assignment, Rational>>* all_equilibria) {
  check_budget(instance, budget);
  auto consider = [&](const Assignment& a, bool equilibrium, const Rational& sw) {
    ++analysis->enumerated;
    if (!analysis->optimal || sw > analysis->optimal->second) analysis->optimal = {a, sw};
    if (!equilibrium) return;
    ++analysis->equilibrium_count;
    if (!sw.is_zero()) analysis->all_equilibria_zero_welfare = false;
    if (!analysis->worst_equilibrium || sw < analysis->worst_equilibrium->second)
      analysis->worst_equilibrium = {a, sw};
    if (!analysis->best_equilibrium || sw > analysis->best_equilibrium->second)
      analysis->best_equilibrium = {a, sw};
    if (all_equilibria) all_equilibria->push_back({a, sw});
  };

  if (instance.typed_mode()) {
    TypedContext ctx(instance);
    TypedEvaluator eval(ctx);
    enumerate_colorings(ctx, [&](const std::vector<int>& color) {
      auto res = eval.evaluate(color);
      consider(ctx.expand(color), res.equilibrium, res.welfare);
    });
  } else {
    enumerate_social(instance, [&](const Assignment& a) {
      consider(a, is_equilibrium(instance, a), social_welfare(instance, a));
    });
  }
}

RatioResult ratio_from(const InstanceAnalysis& analysis, bool worst_case) {
  if (analysis.equilibrium_count == 0) return RatioResult::no_equilibrium();
  const Rational& opt = analysis.optimal->second;
  const Rational& denom = worst_case ? analysis.worst_equilibrium->second
                                     : analysis.best_equilibrium->second;
  if (opt.is_zero()) {
    if (analysis.all_equilibria_zero_welfare) return RatioResult::of(Rational(1));
    return RatioResult::undefined_zero_optimum();
  }
  if (denom.is_zero()) return RatioResult::unbounded();
  return RatioResult::of(opt / denom);
}

}  // namespace

InstanceAnalysis analyze(const GameInstance& instance, const Budget& budget) {
  InstanceAnalysis analysis;
  scan(instance, budget, &analysis, nullptr);
  return analysis;
}

std::vector<std::pair<Assignment, Rational>> find_all_equilibria(const GameInstance& instance,
                                                                 const Budget& budget) {
  InstanceAnalysis analysis;
  std::vector<std::pair<Assignment, Rational>> out;
  scan(instance, budget, &analysis, &out);
  return out;
}

std::pair<Assignment, Rational> optimal_welfare(const GameInstance& instance,
                                                const Budget& budget) {
  auto analysis = analyze(instance, budget);
  return *analysis.optimal;
}

RatioResult price_of_anarchy(const GameInstance& instance, const Budget& budget) {
  return ratio_from(analyze(instance, budget), /*worst_case=*/true);
}

RatioResult price_of_stability(const GameInstance& instance, const Budget& budget) {
  return ratio_from(analyze(instance, budget), /*worst_case=*/false);
}

}  // namespace schelling::search
