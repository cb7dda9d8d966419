#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rgg/best_alternative.hpp"

namespace rgg {

// Winning strategies that minimize regret never accumulate more than this
// utility, so the product below may stop summing at B.
inline std::uint64_t strategy_bound(const Arena& arena) {
  return 2 * arena.max_weight() * arena.size();
}

// Product of the arena with the solved player's accumulated utility, cut at
// B. A position is duplicated once per distinct path utility <= B reaching
// it; targets carry their accumulated utility as target weight.
//
// Moves whose sum would pass B are redirected to an absorbing losing sink
// rather than dropped. Dropping them would strengthen the solved player:
// an opponent trap that merely accumulates weight would eventually leave
// the opponent nothing but target edges inside the product, fabricating a
// forced win that the source game does not have.
struct UtilityGraph {
  PlayerId player = PlayerId::p1;
  std::uint64_t bound = 0;
  int initial_node = 0;
  int sink = -1;                    // absorbing overflow node, -1 if unused
  std::vector<int> base;            // node -> source position (-1 at the sink)
  std::vector<std::uint64_t> acc;   // node -> accumulated utility
  std::vector<PlayerId> owners;
  std::vector<bool> target;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
  std::map<std::pair<int, std::uint64_t>, int> index;

  std::size_t size() const { return base.size(); }
  int initial() const { return initial_node; }
  PlayerId owner(int v) const { return owners[v]; }
  std::span<const int> successors(int v) const { return succ[v]; }
  std::span<const int> predecessors(int v) const { return pred[v]; }
  bool is_target(int v, PlayerId p) const { return p == player && target[v]; }
  ExtendedNat target_weight(int v, PlayerId p) const {
    return p == player && target[v] ? ExtendedNat(acc[v]) : kInf;
  }

  int node_of(int pos, std::uint64_t u) const {
    auto it = index.find({pos, u});
    return it == index.end() ? -1 : it->second;
  }
};

inline UtilityGraph build_utility_graph(const Arena& arena, PlayerId player,
                                        std::uint64_t bound) {
  UtilityGraph g;
  g.player = player;
  g.bound = bound;

  auto intern = [&](int pos, std::uint64_t u) {
    auto it = g.index.find({pos, u});
    if (it != g.index.end()) return it->second;
    const int k = static_cast<int>(g.base.size());
    g.index.insert({{pos, u}, k});
    g.base.push_back(pos);
    g.acc.push_back(u);
    g.owners.push_back(arena.owner(pos));
    g.target.push_back(arena.is_target(pos, player));
    g.succ.emplace_back();
    g.pred.emplace_back();
    return k;
  };
  auto sink = [&] {
    if (g.sink == -1) {
      g.sink = static_cast<int>(g.base.size());
      g.base.push_back(-1);
      g.acc.push_back(bound + 1);
      g.owners.push_back(PlayerId::p2);
      g.target.push_back(false);
      g.succ.push_back({g.sink});
      g.pred.push_back({g.sink});
    }
    return g.sink;
  };

  g.initial_node = intern(arena.initial(), 0);
  for (int k = 0; k < static_cast<int>(g.base.size()); ++k) {
    if (g.base[k] == -1) continue;
    const int pos = g.base[k];
    for (int s : arena.successors(pos)) {
      const std::uint64_t u = g.acc[k] + arena.weight(pos, s, player);
      const int k2 = u > bound ? sink() : intern(s, u);
      g.succ[k].push_back(k2);
      g.pred[k2].push_back(k);
    }
  }
  for (auto& p : g.pred) std::sort(p.begin(), p.end());
  return g;
}

// Every node's utility annotation must equal the generating path sum.
inline std::size_t verify_utility_graph(const UtilityGraph& g, const Arena& arena) {
  std::size_t bad = 0;
  if (g.acc[g.initial_node] != 0) ++bad;
  for (int k = 0; k < static_cast<int>(g.size()); ++k) {
    if (g.base[k] == -1) continue;
    for (int k2 : g.succ[k]) {
      if (g.base[k2] == -1) continue;
      if (g.acc[k2] !=
          g.acc[k] + arena.weight(g.base[k], g.base[k2], g.player))
        ++bad;
    }
  }
  return bad;
}

// Regret minimization on an edge-weighted arena: reduce to the graph of
// utility, solve it as a target-weighted arena, and pull the witness back.
// The witness memory is (accumulated utility up to B, best alternative seen),
// plus one overflow state once the accumulated utility passes B; past the
// cap the witness plays the smallest-id successor.
inline RegretReport regret_edge(const Arena& arena, PlayerId player) {
  RegretReport report;
  report.player = player;

  if (arena.is_target(arena.initial(), player)) {
    report.regret = ExtendedNat(0);
    report.winning = true;
    report.witness = Strategy::smallest_successor(arena, player);
    return report;
  }

  const std::uint64_t B = strategy_bound(arena);
  const UtilityGraph util = build_utility_graph(arena, player, B);
  const auto best = best_values(util, player);
  const auto ba = edge_best_alternatives(util, player, best);
  const auto product = build_best_alternative_graph(
      util, player,
      [&](int v, PlayerId p) { return util.target_weight(v, p); }, ba);
  const auto sol = minmax_solve(product, player);

  report.regret = sol.value;
  report.winning = sol.value.is_finite();

  Strategy& w = report.witness;
  w.player = player;

  // Memory states: distinct (utility, alternative) pairs plus an overflow
  // sink for histories that passed the bound.
  std::map<std::pair<std::uint64_t, ExtendedNat>, int> mem_index;
  for (int k = 0; k < static_cast<int>(product.size()); ++k)
    if (util.base[product.base[k]] != -1)
      mem_index.insert({{util.acc[product.base[k]], product.alt[k]}, 0});
  int next = 0;
  for (auto& [key, idx] : mem_index) idx = next++;
  const int overflow = next;
  w.memory_labels.assign(next + 1, "");
  for (const auto& [key, idx] : mem_index)
    w.memory_labels[idx] =
        "u=" + std::to_string(key.first) + ",ba=" + key.second.to_string();
  w.memory_labels[overflow] = "overflow";
  w.initial_memory = mem_index.at({0, kInf});

  for (int k = 0; k < static_cast<int>(product.size()); ++k) {
    const int unode = product.base[k];
    const int pos = util.base[unode];
    if (pos == -1) continue;  // overflow sink, handled below
    const std::uint64_t u = util.acc[unode];
    const int mem = mem_index.at({u, product.alt[k]});
    if (product.owners[k] == player) {
      const int pick = sol.choice[k];
      if (pick != -1 && util.base[product.base[pick]] != -1)
        w.move_table[{mem, pos}] = util.base[product.base[pick]];
      else if (arena.out_degree(pos) > 0)
        w.move_table[{mem, pos}] = arena.successors(pos).front();
    }
    for (int k2 : product.succ[k]) {
      const int unode2 = product.base[k2];
      if (util.base[unode2] == -1) continue;
      const int mem2 = mem_index.at({util.acc[unode2], product.alt[k2]});
      if (mem2 != mem)
        w.update_table[{mem, pos, util.base[unode2]}] = mem2;
    }
    // Moves whose accumulated utility passes B send the memory to the
    // overflow state.
    for (int s : arena.successors(pos))
      if (u + arena.weight(pos, s, player) > B)
        w.update_table[{mem, pos, s}] = overflow;
  }
  for (int v = 0; v < static_cast<int>(arena.size()); ++v)
    if (arena.owner(v) == player && arena.out_degree(v) > 0)
      w.move_table[{overflow, v}] = arena.successors(v).front();

  return report;
}

// Solves the regret minimization problem, picking the target-weighted route
// when the arena already has that shape.
inline RegretReport solve_regret(const Arena& arena, PlayerId player) {
  if (TargetWeightedArena::twa_violations(arena).empty())
    return regret_twa(TargetWeightedArena::from_edge_weights(arena), player);
  return regret_edge(arena, player);
}

}  // namespace rgg
