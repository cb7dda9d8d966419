#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "rgg/arena.hpp"
#include "rgg/strategy.hpp"

namespace rgg {
namespace oracle {

// Brute-force reference computations, written directly from the defining
// formulas. No reductions: any disagreement with a solver is a solver bug.

// A finite play tree with per-player utilities attached to its leaves.
// Either a leaf-target tree arena as-is or a bounded unfolding of a graph.
struct PlayTree {
  std::vector<int> base;                // node -> source arena position
  std::vector<PlayerId> owners;
  std::vector<std::vector<int>> kids;   // in deterministic successor order
  std::vector<ExtendedNat> leaf_u1, leaf_u2;  // inf off-leaves / when losing
  int root = 0;

  std::size_t size() const { return base.size(); }
  bool leaf(int v) const { return kids[v].empty(); }

  static PlayTree from_leaf_twa(const TargetWeightedArena& twa) {
    const Arena& a = twa.arena();
    PlayTree t;
    t.root = a.initial();
    t.base.resize(a.size());
    t.owners.resize(a.size());
    t.kids.resize(a.size());
    t.leaf_u1.assign(a.size(), kInf);
    t.leaf_u2.assign(a.size(), kInf);
    for (int v = 0; v < static_cast<int>(a.size()); ++v) {
      t.base[v] = v;
      t.owners[v] = a.owner(v);
      auto s = a.successors(v);
      t.kids[v].assign(s.begin(), s.end());
      if (s.empty()) {
        t.leaf_u1[v] = twa.target_weight(v, PlayerId::p1);
        t.leaf_u2[v] = twa.target_weight(v, PlayerId::p2);
      }
    }
    return t;
  }

  ExtendedNat leaf_utility(int v, PlayerId p) const {
    return p == PlayerId::p1 ? leaf_u1[v] : leaf_u2[v];
  }
};

// A strategy over a play tree: the chosen child for every own node that is
// reachable under the strategy itself (opponent moves unrestricted).
using TreeStrategy = std::vector<std::pair<int, int>>;

inline int tree_choice(const TreeStrategy& s, int node) {
  auto it = std::lower_bound(
      s.begin(), s.end(), std::make_pair(node, -1),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it == s.end() || it->first != node)
    throw InputError("tree strategy undefined at node " + std::to_string(node));
  return it->second;
}

// Number of compatibility-trimmed strategies (saturating at cap+1).
// allowed(v, c) restricts the player's own choices; opponent branches are
// always all explored.
inline std::uint64_t count_tree_strategies(
    const PlayTree& t, PlayerId player,
    const std::function<bool(int, int)>& allowed, std::uint64_t cap) {
  std::function<std::uint64_t(int)> rec = [&](int v) -> std::uint64_t {
    if (t.leaf(v)) return 1;
    if (t.owners[v] == player) {
      std::uint64_t sum = 0;
      for (int c : t.kids[v]) {
        if (allowed && !allowed(v, c)) continue;
        sum += rec(c);
        if (sum > cap) return cap + 1;
      }
      return sum == 0 ? 1 : sum;  // no allowed move: stuck, single trimming
    }
    std::uint64_t prod = 1;
    for (int c : t.kids[v]) {
      prod *= rec(c);
      if (prod > cap) return cap + 1;
    }
    return prod;
  };
  return rec(t.root);
}

// Explicit enumeration, deterministic (child order, then lexicographic
// merge). Fragment domains are exactly the compatible own nodes.
inline std::vector<TreeStrategy> enumerate_tree_strategies(
    const PlayTree& t, PlayerId player,
    const std::function<bool(int, int)>& allowed = nullptr,
    std::uint64_t cap = 1'000'000) {
  const std::uint64_t n = count_tree_strategies(t, player, allowed, cap);
  if (n > cap)
    throw ResourceError("strategy space too large to enumerate", n, cap);

  std::function<std::vector<TreeStrategy>(int)> rec =
      [&](int v) -> std::vector<TreeStrategy> {
    if (t.leaf(v)) return {{}};
    std::vector<TreeStrategy> out;
    if (t.owners[v] == player) {
      for (int c : t.kids[v]) {
        if (allowed && !allowed(v, c)) continue;
        for (auto& frag : rec(c)) {
          frag.push_back({v, c});
          out.push_back(std::move(frag));
        }
      }
      if (out.empty()) out.push_back({});
      return out;
    }
    out.push_back({});
    for (int c : t.kids[v]) {
      auto sub = rec(c);
      std::vector<TreeStrategy> merged;
      merged.reserve(out.size() * sub.size());
      for (const auto& a : out)
        for (const auto& b : sub) {
          TreeStrategy m = a;
          m.insert(m.end(), b.begin(), b.end());
          merged.push_back(std::move(m));
        }
      out = std::move(merged);
    }
    return out;
  };

  auto result = rec(t.root);
  for (auto& s : result) std::sort(s.begin(), s.end());
  std::sort(result.begin(), result.end());
  return result;
}

// Leaf reached when `own` plays against `opp` from the root.
inline int trace_leaf(const PlayTree& t, PlayerId player,
                      const TreeStrategy& own, const TreeStrategy& opp) {
  int v = t.root;
  while (!t.leaf(v))
    v = tree_choice(t.owners[v] == player ? own : opp, v);
  return v;
}

// reg over explicit strategy sets:
//   min over own of max over opp of (u(own, opp) - min over own' of u(own', opp)).
inline ExtendedNat regret_bruteforce(const PlayTree& t, PlayerId player,
                                     const std::vector<TreeStrategy>& own_set,
                                     const std::vector<TreeStrategy>& opp_set) {
  if (own_set.empty()) throw InputError("empty strategy set for the minimizer");
  if (opp_set.empty()) throw InputError("empty strategy set for the maximizer");

  std::vector<std::vector<ExtendedNat>> u(own_set.size());
  for (std::size_t i = 0; i < own_set.size(); ++i) {
    u[i].reserve(opp_set.size());
    for (const auto& opp : opp_set)
      u[i].push_back(
          t.leaf_utility(trace_leaf(t, player, own_set[i], opp), player));
  }
  std::vector<ExtendedNat> best_response(opp_set.size(), kInf);
  for (std::size_t j = 0; j < opp_set.size(); ++j)
    for (std::size_t i = 0; i < own_set.size(); ++i)
      best_response[j] = min(best_response[j], u[i][j]);

  ExtendedNat reg = kInf;
  for (std::size_t i = 0; i < own_set.size(); ++i) {
    ExtendedNat worst = ExtendedNat(0);
    for (std::size_t j = 0; j < opp_set.size(); ++j)
      worst = max(worst, u[i][j] - best_response[j]);
    reg = min(reg, worst);
  }
  return reg;
}

struct IteratedRank {
  ExtendedNat regret1 = kInf;
  ExtendedNat regret2 = kInf;
  std::vector<std::size_t> survivors1, survivors2;  // indices into spaces
};

struct IteratedBruteforce {
  std::vector<TreeStrategy> space1, space2;
  std::vector<IteratedRank> ranks;
  std::size_t fixpoint_rank = 0;

  const std::vector<std::size_t>& survivors(PlayerId p, std::size_t rank) const {
    const auto& r = ranks.at(rank - 1);
    return p == PlayerId::p1 ? r.survivors1 : r.survivors2;
  }
};

// Explicit iteration of the delete operator on full strategy spaces.
inline IteratedBruteforce iterated_bruteforce(const PlayTree& t,
                                              std::size_t max_rank = 64,
                                              std::uint64_t cap = 1'000'000) {
  IteratedBruteforce out;
  out.space1 = enumerate_tree_strategies(t, PlayerId::p1, nullptr, cap);
  out.space2 = enumerate_tree_strategies(t, PlayerId::p2, nullptr, cap);
  if (out.space1.size() * out.space2.size() > cap)
    throw ResourceError("utility matrix too large",
                        out.space1.size() * out.space2.size(), cap);

  const std::size_t n1 = out.space1.size(), n2 = out.space2.size();
  std::vector<std::vector<ExtendedNat>> u1(n1), u2(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    u1[i].resize(n2);
    u2[i].resize(n2);
    for (std::size_t j = 0; j < n2; ++j) {
      const int leaf1 = trace_leaf(t, PlayerId::p1, out.space1[i], out.space2[j]);
      u1[i][j] = t.leaf_utility(leaf1, PlayerId::p1);
      u2[i][j] = t.leaf_utility(leaf1, PlayerId::p2);
    }
  }

  std::vector<std::size_t> s1(n1), s2(n2);
  for (std::size_t i = 0; i < n1; ++i) s1[i] = i;
  for (std::size_t j = 0; j < n2; ++j) s2[j] = j;

  for (std::size_t rank = 1; rank <= max_rank; ++rank) {
    IteratedRank rec;

    // Player 1 against P2 survivors, best responses within P1 survivors.
    std::map<std::size_t, ExtendedNat> br1;
    for (std::size_t j : s2) {
      ExtendedNat b = kInf;
      for (std::size_t i : s1) b = min(b, u1[i][j]);
      br1[j] = b;
    }
    std::vector<ExtendedNat> reg1;
    for (std::size_t i : s1) {
      ExtendedNat worst = ExtendedNat(0);
      for (std::size_t j : s2) worst = max(worst, u1[i][j] - br1[j]);
      reg1.push_back(worst);
      rec.regret1 = min(rec.regret1, worst);
    }

    std::map<std::size_t, ExtendedNat> br2;
    for (std::size_t i : s1) {
      ExtendedNat b = kInf;
      for (std::size_t j : s2) b = min(b, u2[i][j]);
      br2[i] = b;
    }
    std::vector<ExtendedNat> reg2;
    for (std::size_t j : s2) {
      ExtendedNat worst = ExtendedNat(0);
      for (std::size_t i : s1) worst = max(worst, u2[i][j] - br2[i]);
      reg2.push_back(worst);
      rec.regret2 = min(rec.regret2, worst);
    }

    for (std::size_t k = 0; k < s1.size(); ++k)
      if (reg1[k] == rec.regret1) rec.survivors1.push_back(s1[k]);
    for (std::size_t k = 0; k < s2.size(); ++k)
      if (reg2[k] == rec.regret2) rec.survivors2.push_back(s2[k]);

    const bool stable = rec.survivors1 == s1 && rec.survivors2 == s2;
    s1 = rec.survivors1;
    s2 = rec.survivors2;
    out.ranks.push_back(std::move(rec));
    if (stable) {
      out.fixpoint_rank = rank;
      break;
    }
  }
  if (out.fixpoint_rank == 0)
    throw ResourceError("delete operator did not stabilize within the rank cap",
                        max_rank + 1, max_rank);
  return out;
}

// ---------------------------------------------------------------------------
// Graph-regret oracle: bounded unfolding plus full enumeration.

// Unfolds plays from the initial position, stopping a branch at the first
// visit to the player's target set (its utility is settled there) and
// dropping extensions whose accumulated weight would pass `budget`.
inline PlayTree bounded_unfolding(const Arena& arena, PlayerId player,
                                  std::uint64_t budget,
                                  std::uint64_t node_cap = 200'000) {
  PlayTree t;
  std::vector<std::uint64_t> acc{0};
  auto add_node = [&](int pos) {
    t.base.push_back(pos);
    t.owners.push_back(arena.owner(pos));
    t.kids.emplace_back();
    t.leaf_u1.push_back(kInf);
    t.leaf_u2.push_back(kInf);
    return static_cast<int>(t.base.size()) - 1;
  };
  auto leaf_u = [&](int node) -> ExtendedNat& {
    return player == PlayerId::p1 ? t.leaf_u1[node] : t.leaf_u2[node];
  };

  add_node(arena.initial());
  if (arena.is_target(arena.initial(), player)) {
    leaf_u(0) = ExtendedNat(0);
    return t;
  }

  for (int head = 0; head < static_cast<int>(t.size()); ++head) {
    if (arena.is_target(t.base[head], player)) continue;  // settled branch
    for (int s : arena.successors(t.base[head])) {
      const std::uint64_t a = acc[head] + arena.weight(t.base[head], s, player);
      if (a > budget) continue;  // beyond the winning-strategy budget
      if (t.size() >= node_cap)
        throw ResourceError("bounded unfolding exceeds the node cap",
                            t.size() + 1, node_cap);
      const int node = add_node(s);
      acc.push_back(a);
      t.kids[head].push_back(node);
      if (arena.is_target(s, player)) leaf_u(node) = ExtendedNat(a);
    }
  }
  return t;
}

// Does the player have a winning strategy? Memoryless strategies suffice
// for reachability, so enumerate them and check each by a forced-visit
// sweep over the strategy-restricted graph.
inline bool has_winning_strategy(const Arena& arena, PlayerId player,
                                 std::uint64_t cap = 2'000'000) {
  const int n = static_cast<int>(arena.size());
  std::vector<int> own;
  std::uint64_t combos = 1;
  for (int v = 0; v < n; ++v)
    if (arena.owner(v) == player && arena.out_degree(v) > 0) {
      own.push_back(v);
      combos *= arena.out_degree(v);
      if (combos > cap)
        throw ResourceError("memoryless strategy space too large", combos, cap);
    }

  std::vector<std::size_t> pick(own.size(), 0);
  while (true) {
    // Least fixpoint of "all continuations reach the target" on the
    // restricted graph; cycles and dead ends stay out.
    std::vector<bool> win(n, false);
    bool grew = true;
    while (grew) {
      grew = false;
      for (int v = 0; v < n; ++v) {
        if (win[v]) continue;
        if (arena.is_target(v, player)) {
          win[v] = grew = true;
          continue;
        }
        if (arena.out_degree(v) == 0) continue;
        bool ok;
        if (arena.owner(v) == player) {
          const auto it = std::find(own.begin(), own.end(), v);
          ok = win[arena.successors(v)[pick[it - own.begin()]]];
        } else {
          ok = true;
          for (int s : arena.successors(v)) ok = ok && win[s];
        }
        if (ok) win[v] = grew = true;
      }
    }
    if (win[arena.initial()]) return true;

    std::size_t k = 0;
    while (k < own.size()) {
      if (++pick[k] < arena.out_degree(own[k])) break;
      pick[k++] = 0;
    }
    if (k == own.size()) return false;
  }
}

// Exact regret of `player` computed definitionally on the bounded unfolding
// with budget 2 * M * |S|; exact because winning minimizers and best
// responses both live within that budget.
inline ExtendedNat graph_regret_bruteforce(const Arena& arena, PlayerId player,
                                           std::uint64_t strategy_cap = 1'000'000,
                                           std::uint64_t node_cap = 200'000) {
  if (arena.is_target(arena.initial(), player)) return ExtendedNat(0);
  if (!has_winning_strategy(arena, player)) return kInf;
  const std::uint64_t budget = 2 * arena.max_weight() * arena.size();
  const PlayTree t = bounded_unfolding(arena, player, budget, node_cap);
  const auto own = enumerate_tree_strategies(t, player, nullptr, strategy_cap);
  const auto opp =
      enumerate_tree_strategies(t, opponent(player), nullptr, strategy_cap);
  return regret_bruteforce(t, player, own, opp);
}

// ---------------------------------------------------------------------------
// Witness replay: evaluates a solver witness against every opponent tree
// strategy and returns the worst regret it suffers.

inline ExtendedNat best_response_value(const PlayTree& t, PlayerId player,
                                       const TreeStrategy& opp) {
  std::function<ExtendedNat(int)> rec = [&](int v) -> ExtendedNat {
    if (t.leaf(v)) return t.leaf_utility(v, player);
    if (t.owners[v] == player) {
      ExtendedNat b = kInf;
      for (int c : t.kids[v]) b = min(b, rec(c));
      return b;
    }
    return rec(tree_choice(opp, v));
  };
  return rec(t.root);
}

inline ExtendedNat replay_worst_regret(const Arena& arena, const PlayTree& t,
                                       const Strategy& witness,
                                       const std::vector<TreeStrategy>& opp_set) {
  ExtendedNat worst = ExtendedNat(0);
  for (const auto& opp : opp_set) {
    int v = t.root;
    int mem = witness.initial_memory;
    ExtendedNat u = kInf;
    while (true) {
      if (t.leaf(v)) {
        u = t.leaf_utility(v, witness.player);
        break;
      }
      int next = -1;
      if (t.owners[v] == witness.player) {
        const int pos = *witness.move(arena, mem, t.base[v]);
        for (int c : t.kids[v])
          if (t.base[c] == pos) next = c;
        if (next == -1) break;  // left the bounded tree: utility beyond budget
      } else {
        next = tree_choice(opp, v);
      }
      mem = witness.update(mem, t.base[v], t.base[next]);
      v = next;
    }
    worst = max(worst, u - min(u, best_response_value(t, witness.player, opp)));
  }
  return worst;
}

}  // namespace oracle
}  // namespace rgg
