#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rgg/minmax.hpp"

namespace rgg {

// Per-position value a player can reach with full cooperation from the
// opponent: the weight of the cheapest target reachable without passing
// through an earlier target. Target positions carry their own weight (a
// play arriving there has just paid it).
template <GameGraph G>
std::vector<ExtendedNat> best_values(const G& game, PlayerId player) {
  const int n = static_cast<int>(game.size());
  std::vector<ExtendedNat> best(n, kInf);
  std::vector<std::pair<std::uint64_t, int>> sources;
  for (int v = 0; v < n; ++v) {
    if (game.is_target(v, player)) {
      best[v] = game.target_weight(v, player);
      if (best[v].is_finite()) sources.push_back({best[v].finite_value(), v});
    }
  }
  std::sort(sources.begin(), sources.end());

  // Ascending flood: each non-target position is settled by the cheapest
  // target it can reach through target-free interiors.
  std::vector<bool> settled(n, false);
  std::vector<int> queue;
  for (auto [w, t] : sources) {
    queue.clear();
    queue.push_back(t);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int u : game.predecessors(queue[head])) {
        if (settled[u] || game.is_target(u, player)) continue;
        settled[u] = true;
        best[u] = ExtendedNat(w);
        queue.push_back(u);
      }
    }
  }
  return best;
}

// ba(s, s') for each edge out of a position owned by `player`: the cheapest
// value among the *other* successors (min of the empty set = inf). Edges out
// of opponent positions have ba = inf.
template <GameGraph G>
std::vector<std::vector<ExtendedNat>> edge_best_alternatives(
    const G& game, PlayerId player, const std::vector<ExtendedNat>& best) {
  const int n = static_cast<int>(game.size());
  std::vector<std::vector<ExtendedNat>> ba(n);
  for (int v = 0; v < n; ++v) {
    const auto succs = game.successors(v);
    ba[v].assign(succs.size(), kInf);
    if (game.owner(v) != player) continue;
    ExtendedNat lo = kInf, second = kInf;
    int lo_at = -1;
    for (std::size_t k = 0; k < succs.size(); ++k) {
      const ExtendedNat val = best[succs[k]];
      if (val < lo) {
        second = lo;
        lo = val;
        lo_at = static_cast<int>(k);
      } else if (val < second) {
        second = val;
      }
    }
    for (std::size_t k = 0; k < succs.size(); ++k)
      ba[v][k] = static_cast<int>(k) == lo_at ? second : lo;
  }
  return ba;
}

template <GameGraph G>
ExtendedNat edge_best_alternative(const G& game, PlayerId player, int from,
                                  int to) {
  if (game.owner(from) != player) return kInf;
  const auto best = best_values(game, player);
  ExtendedNat out = kInf;
  for (int s : game.successors(from))
    if (s != to) out = min(out, best[s]);
  return out;
}

// Reachable part of the product that annotates every position with the best
// alternative accumulated along the path used to reach it. Targets keep the
// solved player's flag and carry the reduced weight
//   nu(s, b) = mu(s) - min(mu(s), b).
struct BestAlternativeGraph {
  PlayerId player = PlayerId::p1;
  int initial_node = 0;
  std::vector<int> base;          // product node -> source position
  std::vector<ExtendedNat> alt;   // product node -> b component
  std::vector<PlayerId> owners;
  std::vector<bool> target;
  std::vector<ExtendedNat> nu;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;

  // GameGraph interface.
  std::size_t size() const { return base.size(); }
  int initial() const { return initial_node; }
  PlayerId owner(int v) const { return owners[v]; }
  std::span<const int> successors(int v) const { return succ[v]; }
  std::span<const int> predecessors(int v) const { return pred[v]; }
  bool is_target(int v, PlayerId p) const { return p == player && target[v]; }
  ExtendedNat target_weight(int v, PlayerId p) const {
    return p == player ? nu[v] : kInf;
  }

  int node_of(int base_pos, ExtendedNat b) const {
    auto it = index.find({base_pos, b});
    return it == index.end() ? -1 : it->second;
  }

  std::map<std::pair<int, ExtendedNat>, int> index;
};

template <GameGraph G>
BestAlternativeGraph build_best_alternative_graph(
    const G& game, PlayerId player,
    std::function<ExtendedNat(int, PlayerId)> weight_of,
    const std::vector<std::vector<ExtendedNat>>& ba) {
  BestAlternativeGraph g;
  g.player = player;

  auto intern = [&](int pos, ExtendedNat b) {
    auto it = g.index.find({pos, b});
    if (it != g.index.end()) return it->second;
    const int k = static_cast<int>(g.base.size());
    g.index.insert({{pos, b}, k});
    g.base.push_back(pos);
    g.alt.push_back(b);
    g.owners.push_back(game.owner(pos));
    const bool tgt = game.is_target(pos, player);
    g.target.push_back(tgt);
    if (tgt) {
      const ExtendedNat mu = weight_of(pos, player);
      g.nu.push_back(mu - min(mu, b));
    } else {
      g.nu.push_back(ExtendedNat(0));
    }
    g.succ.emplace_back();
    g.pred.emplace_back();
    return k;
  };

  g.initial_node = intern(game.initial(), kInf);
  for (int k = 0; k < static_cast<int>(g.base.size()); ++k) {
    const int pos = g.base[k];
    const ExtendedNat b = g.alt[k];
    const auto succs = game.successors(pos);
    for (std::size_t i = 0; i < succs.size(); ++i) {
      const ExtendedNat b2 = min(b, ba[pos][i]);
      const int k2 = intern(succs[i], b2);
      g.succ[k].push_back(k2);
      g.pred[k2].push_back(k);
    }
  }
  for (auto& p : g.pred) std::sort(p.begin(), p.end());
  return g;
}

inline BestAlternativeGraph build_best_alternative_graph(
    const TargetWeightedArena& twa, PlayerId player) {
  const auto best = best_values(twa, player);
  const auto ba = edge_best_alternatives(twa, player, best);
  return build_best_alternative_graph(
      twa, player,
      [&](int v, PlayerId p) { return twa.target_weight(v, p); }, ba);
}

// Checks that every stored b equals the best alternative recomputed from the
// path structure: the root carries inf and every product edge satisfies
// b' = min(b, ba(s, s')). Returns the number of violations.
template <GameGraph G>
std::size_t verify_best_alternatives(const BestAlternativeGraph& g,
                                     const G& game,
                                     const std::vector<std::vector<ExtendedNat>>& ba) {
  std::size_t bad = 0;
  if (g.alt[g.initial_node] != kInf) ++bad;
  for (int k = 0; k < static_cast<int>(g.size()); ++k) {
    const int pos = g.base[k];
    const auto succs = game.successors(pos);
    for (std::size_t i = 0; i < g.succ[k].size(); ++i) {
      const int k2 = g.succ[k][i];
      if (g.base[k2] != succs[i]) ++bad;
      if (g.alt[k2] != min(g.alt[k], ba[pos][i])) ++bad;
    }
  }
  return bad;
}

struct RegretReport {
  PlayerId player = PlayerId::p1;
  ExtendedNat regret = kInf;
  bool winning = false;  // regret finite iff a winning strategy exists
  Strategy witness;
};

namespace detail {

inline std::vector<std::string> alt_labels(const std::vector<ExtendedNat>& alts,
                                           std::map<ExtendedNat, int>& index) {
  std::vector<ExtendedNat> distinct(alts);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    index[distinct[i]] = static_cast<int>(i);
    labels.push_back("ba=" + distinct[i].to_string());
  }
  return labels;
}

}  // namespace detail

// Regret minimization on a target-weighted arena: solve a min-max game on
// the nu-weighted graph of best alternatives and pull the memoryless witness
// back through the product. The witness memory is the best alternative seen
// so far along the play.
inline RegretReport regret_twa(const TargetWeightedArena& twa, PlayerId player) {
  RegretReport report;
  report.player = player;

  if (twa.is_target(twa.initial(), player)) {
    // Trivially won: every play has utility 0 by the empty-sum convention.
    report.regret = ExtendedNat(0);
    report.winning = true;
    report.witness = Strategy::smallest_successor(twa.arena(), player);
    return report;
  }

  const auto best = best_values(twa, player);
  const auto ba = edge_best_alternatives(twa, player, best);
  const auto product = build_best_alternative_graph(
      twa, player, [&](int v, PlayerId p) { return twa.target_weight(v, p); },
      ba);
  const auto sol = minmax_solve(product, player);

  report.regret = sol.value;
  report.winning = sol.value.is_finite();

  Strategy& w = report.witness;
  w.player = player;
  std::map<ExtendedNat, int> mem_index;
  w.memory_labels = detail::alt_labels(product.alt, mem_index);
  w.initial_memory = mem_index.at(kInf);
  for (int k = 0; k < static_cast<int>(product.size()); ++k) {
    const int mem = mem_index.at(product.alt[k]);
    const int pos = product.base[k];
    if (product.owners[k] == player && sol.choice[k] != -1)
      w.move_table[{mem, pos}] = product.base[sol.choice[k]];
    for (int k2 : product.succ[k]) {
      const int mem2 = mem_index.at(product.alt[k2]);
      if (mem2 != mem)
        w.update_table[{mem, pos, product.base[k2]}] = mem2;
    }
  }
  return report;
}

inline RegretReport regret_twa(const Arena& arena, PlayerId player) {
  return regret_twa(TargetWeightedArena::from_edge_weights(arena), player);
}

}  // namespace rgg
