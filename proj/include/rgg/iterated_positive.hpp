#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rgg/iterated_tree.hpp"

namespace rgg {

struct UnfoldConfig {
  std::size_t node_cap = 1'000'000;
  // Testing hook: replaces the derived unfolding depth. Real solves use the
  // bound from bounds().
  std::optional<std::uint64_t> bound_override;
};

struct PositiveBounds {
  std::uint64_t winning_bound = 0;   // caps the accumulated utilities of
  std::uint64_t unfolding_bound = 0; // ...survivors / of their best responses
};

// Valid only for arenas whose weights are all strictly positive.
inline PositiveBounds positive_bounds(const Arena& arena) {
  if (!arena.all_weights_positive())
    throw InputError("bounds require strictly positive weights for both players");
  PositiveBounds b;
  const std::uint64_t m = arena.max_weight();
  b.winning_bound = 6 * m * m * m * arena.size();
  b.unfolding_bound = b.winning_bound * m;
  return b;
}

struct Unfolding {
  Arena tree;                    // play tree, node ids in discovery order
  std::vector<int> base;         // tree position -> source position
  std::vector<std::uint64_t> acc1, acc2;  // accumulated sums per tree position
  std::uint64_t bound = 0;
};

// Tree of all plays whose accumulated weights stay within `bound` for both
// players. Finite for strictly positive arenas since every step adds at
// least one to each sum.
inline Unfolding unfold(const Arena& arena, std::uint64_t bound,
                        const UnfoldConfig& config = {}) {
  struct Node {
    int pos;
    std::uint64_t a1, a2;
    int parent;
  };
  std::vector<Node> nodes{{arena.initial(), 0, 0, -1}};
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const Node cur = nodes[head];
    for (int s : arena.successors(cur.pos)) {
      const std::uint64_t a1 = cur.a1 + arena.weight(cur.pos, s, PlayerId::p1);
      const std::uint64_t a2 = cur.a2 + arena.weight(cur.pos, s, PlayerId::p2);
      if (a1 > bound || a2 > bound) continue;
      if (nodes.size() >= config.node_cap)
        throw ResourceError("unfolding exceeds the node cap", nodes.size() + 1,
                            config.node_cap);
      nodes.push_back({s, a1, a2, static_cast<int>(head)});
    }
  }

  // Zero-padded discovery-order ids keep the arena's sorted-id indexing
  // aligned with discovery order.
  int digits = 1;
  for (std::size_t v = nodes.size(); v >= 10; v /= 10) ++digits;
  auto name = [&](std::size_t k) {
    std::string s = std::to_string(k);
    return "n" + std::string(digits - s.size(), '0') + s;
  };

  ArenaData data;
  data.initial = name(0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    data.positions.push_back({name(k), arena.owner(nodes[k].pos),
                              arena.is_target(nodes[k].pos, PlayerId::p1),
                              arena.is_target(nodes[k].pos, PlayerId::p2)});
    if (nodes[k].parent >= 0) {
      const Node& p = nodes[nodes[k].parent];
      data.edges.push_back({name(nodes[k].parent), name(k),
                            arena.weight(p.pos, nodes[k].pos, PlayerId::p1),
                            arena.weight(p.pos, nodes[k].pos, PlayerId::p2)});
    }
  }

  Unfolding out{Arena::from_data(data), {}, {}, {}, bound};
  out.base.resize(nodes.size());
  out.acc1.resize(nodes.size());
  out.acc2.resize(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int idx = out.tree.index_of(name(k));
    out.base[idx] = nodes[k].pos;
    out.acc1[idx] = nodes[k].a1;
    out.acc2[idx] = nodes[k].a2;
  }
  return out;
}

struct PositiveIrmReport {
  PositiveBounds bounds;
  std::uint64_t bound_used = 0;
  IteratedReport tree;           // ranks transfer to the arena rank-by-rank
  Strategy witness1, witness2;   // finite-memory strategies on the arena
};

namespace positive_detail {

// Memory state of a mapped-back witness: both running sums, both settled
// utilities (inf while the target set is unvisited) and both best
// alternatives seen so far. Plays agreeing on these and on the current
// position have isomorphic futures in the unfolding, so the tree witness
// factors through them.
struct MemKey {
  std::uint64_t u1, u2;
  ExtendedNat settled1, settled2;
  ExtendedNat b1, b2;
  auto operator<=>(const MemKey&) const = default;
};

inline std::vector<ExtendedNat> settled_utilities(const Unfolding& unf,
                                                  PlayerId p) {
  const Arena& tree = unf.tree;
  std::vector<ExtendedNat> out(tree.size(), kInf);
  std::vector<int> order{tree.initial()};
  if (tree.is_target(tree.initial(), p)) out[tree.initial()] = ExtendedNat(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int v = order[head];
    for (int c : tree.successors(v)) {
      out[c] = out[v];
      if (out[c].is_infinite() && tree.is_target(c, p))
        out[c] = ExtendedNat(p == PlayerId::p1 ? unf.acc1[c] : unf.acc2[c]);
      order.push_back(c);
    }
  }
  return out;
}

inline Strategy map_back_witness(const Arena& arena, const Unfolding& unf,
                                 const IteratedReport& tree_report,
                                 const DualBATree& rank1, PlayerId player) {
  const Arena& tree = unf.tree;
  Strategy w;
  w.player = player;

  const auto settled1 = settled_utilities(unf, PlayerId::p1);
  const auto settled2 = settled_utilities(unf, PlayerId::p2);
  std::map<MemKey, int> mem_index;
  auto key_of = [&](int node) {
    return MemKey{unf.acc1[node], unf.acc2[node], settled1[node],
                  settled2[node], rank1.b1[node], rank1.b2[node]};
  };
  for (int v = 0; v < static_cast<int>(tree.size()); ++v)
    mem_index.insert({key_of(v), 0});
  int next = 0;
  for (auto& [k, idx] : mem_index) idx = next++;
  const int overflow = next;
  w.memory_labels.assign(next + 1, "");
  for (const auto& [k, idx] : mem_index)
    w.memory_labels[idx] = "u1=" + std::to_string(k.u1) +
                           ",u2=" + std::to_string(k.u2) +
                           ",won1=" + k.settled1.to_string() +
                           ",won2=" + k.settled2.to_string() +
                           ",ba1=" + k.b1.to_string() +
                           ",ba2=" + k.b2.to_string();
  w.memory_labels[overflow] = "overflow";
  w.initial_memory = mem_index.at(key_of(tree.initial()));

  const Strategy& tree_witness =
      player == PlayerId::p1 ? tree_report.witness1 : tree_report.witness2;

  for (int v = 0; v < static_cast<int>(tree.size()); ++v) {
    const int mem = mem_index.at(key_of(v));
    const int pos = unf.base[v];
    if (tree.owner(v) == player) {
      auto it = tree_witness.move_table.find({0, v});
      if (it != tree_witness.move_table.end())
        w.move_table.insert({{mem, pos}, unf.base[it->second]});
      else if (arena.out_degree(pos) > 0)
        w.move_table.insert({{mem, pos}, arena.successors(pos).front()});
    }
    for (int c : tree.successors(v)) {
      const int mem2 = mem_index.at(key_of(c));
      if (mem2 != mem) w.update_table.insert({{mem, pos, unf.base[c]}, mem2});
    }
    // Arena moves that leave the unfolding exceed the bound.
    for (int s : arena.successors(pos)) {
      bool in_tree = false;
      for (int c : tree.successors(v))
        if (unf.base[c] == s) in_tree = true;
      if (!in_tree) w.update_table.insert({{mem, pos, s}, overflow});
    }
  }
  // Past the bound any move is allowed; play the smallest successor.
  for (int v = 0; v < static_cast<int>(arena.size()); ++v)
    if (arena.owner(v) == player && arena.out_degree(v) > 0)
      w.move_table.insert({{overflow, v}, arena.successors(v).front()});
  return w;
}

}  // namespace positive_detail

// Iterated regret on a strictly positive arena: unfold up to the bound,
// solve the tree, and map the witnesses back with finite memory.
inline PositiveIrmReport iterated_regret_positive(const Arena& arena,
                                                  const UnfoldConfig& config = {}) {
  PositiveIrmReport report;
  report.bounds = positive_bounds(arena);
  report.bound_used = config.bound_override.value_or(report.bounds.unfolding_bound);

  const Unfolding unf = unfold(arena, report.bound_used, config);
  const TargetWeightedArena leaf_twa = edge_tree_to_leaf_twa(unf.tree);
  report.tree = iterated_regret_tree(leaf_twa);

  const DualBATree rank1 = dual_ba_tree(leaf_twa);
  report.witness1 = positive_detail::map_back_witness(arena, unf, report.tree,
                                                      rank1, PlayerId::p1);
  report.witness2 = positive_detail::map_back_witness(arena, unf, report.tree,
                                                      rank1, PlayerId::p2);
  return report;
}

}  // namespace rgg
