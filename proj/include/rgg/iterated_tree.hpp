#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rgg/arena.hpp"
#include "rgg/strategy.hpp"

namespace rgg {

// Both players' best alternatives along every root path of a leaf-target
// tree, plus the reduced leaf weights nu_i = mu_i - min(mu_i, b_i). The
// tree is isomorphic to its source, so everything is stored per position.
struct DualBATree {
  std::vector<ExtendedNat> b1, b2;
  std::vector<ExtendedNat> nu1, nu2;  // meaningful at leaves only

  ExtendedNat alt(int v, PlayerId p) const {
    return p == PlayerId::p1 ? b1[v] : b2[v];
  }
  ExtendedNat reduced_weight(int v, PlayerId p) const {
    return p == PlayerId::p1 ? nu1[v] : nu2[v];
  }
};

struct RankRecord {
  ExtendedNat regret1 = kInf;
  ExtendedNat regret2 = kInf;
  std::size_t edges_removed = 0;
};

struct IteratedReport {
  std::vector<RankRecord> ranks;  // ranks[j-1] = rank-j regrets
  std::size_t fixpoint_rank = 0;  // ranks.size()
  // Edge (parent, child) -> rank at which it was deleted; absent = survived.
  std::map<std::pair<int, int>, std::size_t> deleted_at;
  Strategy witness1, witness2;
  std::size_t node_visits = 0;  // instrumentation, O(|S|^2) budget

  ExtendedNat fixpoint_regret(PlayerId p) const {
    const auto& r = ranks.back();
    return p == PlayerId::p1 ? r.regret1 : r.regret2;
  }
  bool edge_survives(int parent, int child, std::size_t rank) const {
    auto it = deleted_at.find({parent, child});
    return it == deleted_at.end() || it->second > rank;
  }
};

namespace tree_detail {

inline void require_leaf_target_tree(const TargetWeightedArena& twa) {
  if (!twa.arena().is_tree())
    throw InputError("expected a tree rooted at the initial position");
  for (int v = 0; v < static_cast<int>(twa.size()); ++v) {
    const bool leaf = twa.arena().out_degree(v) == 0;
    if (twa.is_target(v, PlayerId::p1) != leaf ||
        twa.is_target(v, PlayerId::p2) != leaf)
      throw InputError("target sets must be exactly the leaves");
  }
}

// Positions of the alive component in root-first (topological) order.
inline std::vector<int> alive_order(const Arena& tree,
                                    const std::vector<bool>& edge_alive) {
  std::vector<int> order{tree.initial()};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int c : tree.successors(order[head]))
      if (edge_alive[c]) order.push_back(c);
  return order;
}

struct RankComputation {
  DualBATree dual;
  std::vector<ExtendedNat> value1, value2;  // backward min-max per node
  std::vector<int> order;                   // alive component, root first
  std::size_t visits = 0;
};

// One full pass over the surviving subtree: best values bottom-up, running
// best alternatives top-down, reduced leaf weights, then backward min-max
// for both players.
inline RankComputation compute_rank(const TargetWeightedArena& twa,
                                    const std::vector<bool>& edge_alive) {
  const Arena& tree = twa.arena();
  const int n = static_cast<int>(tree.size());
  RankComputation rc;
  rc.order = alive_order(tree, edge_alive);
  rc.dual.b1.assign(n, kInf);
  rc.dual.b2.assign(n, kInf);
  rc.dual.nu1.assign(n, kInf);
  rc.dual.nu2.assign(n, kInf);
  rc.value1.assign(n, kInf);
  rc.value2.assign(n, kInf);

  std::vector<ExtendedNat> best1(n, kInf), best2(n, kInf);
  for (auto it = rc.order.rbegin(); it != rc.order.rend(); ++it) {
    const int v = *it;
    ++rc.visits;
    bool leaf = true;
    ExtendedNat m1 = kInf, m2 = kInf;
    for (int c : tree.successors(v)) {
      if (!edge_alive[c]) continue;
      leaf = false;
      m1 = min(m1, best1[c]);
      m2 = min(m2, best2[c]);
    }
    if (leaf) {
      best1[v] = twa.target_weight(v, PlayerId::p1);
      best2[v] = twa.target_weight(v, PlayerId::p2);
    } else {
      best1[v] = m1;
      best2[v] = m2;
    }
  }

  // Top-down accumulation of the running best alternative of the root path;
  // the sibling-exclusive minimum comes from the two smallest child values.
  for (int v : rc.order) {
    ++rc.visits;
    const PlayerId who = tree.owner(v);
    const auto& bests = who == PlayerId::p1 ? best1 : best2;
    ExtendedNat lo = kInf, second = kInf;
    int lo_at = -1;
    for (int c : tree.successors(v)) {
      if (!edge_alive[c]) continue;
      if (bests[c] < lo) {
        second = lo;
        lo = bests[c];
        lo_at = c;
      } else if (bests[c] < second) {
        second = bests[c];
      }
    }
    for (int c : tree.successors(v)) {
      if (!edge_alive[c]) continue;
      const ExtendedNat sibling_min = c == lo_at ? second : lo;
      if (who == PlayerId::p1) {
        rc.dual.b1[c] = min(rc.dual.b1[v], sibling_min);
        rc.dual.b2[c] = rc.dual.b2[v];
      } else {
        rc.dual.b1[c] = rc.dual.b1[v];
        rc.dual.b2[c] = min(rc.dual.b2[v], sibling_min);
      }
    }
  }

  for (auto it = rc.order.rbegin(); it != rc.order.rend(); ++it) {
    const int v = *it;
    ++rc.visits;
    bool leaf = true;
    ExtendedNat min1 = kInf, max1 = ExtendedNat(0);
    ExtendedNat min2 = kInf, max2 = ExtendedNat(0);
    for (int c : tree.successors(v)) {
      if (!edge_alive[c]) continue;
      leaf = false;
      min1 = min(min1, rc.value1[c]);
      max1 = max(max1, rc.value1[c]);
      min2 = min(min2, rc.value2[c]);
      max2 = max(max2, rc.value2[c]);
    }
    if (leaf) {
      const ExtendedNat mu1 = twa.target_weight(v, PlayerId::p1);
      const ExtendedNat mu2 = twa.target_weight(v, PlayerId::p2);
      rc.dual.nu1[v] = mu1 - min(mu1, rc.dual.b1[v]);
      rc.dual.nu2[v] = mu2 - min(mu2, rc.dual.b2[v]);
      rc.value1[v] = rc.dual.nu1[v];
      rc.value2[v] = rc.dual.nu2[v];
    } else {
      rc.value1[v] = tree.owner(v) == PlayerId::p1 ? min1 : max1;
      rc.value2[v] = tree.owner(v) == PlayerId::p2 ? min2 : max2;
    }
  }
  return rc;
}

}  // namespace tree_detail

// Rank-1 tree of best alternatives over the whole tree.
inline DualBATree dual_ba_tree(const TargetWeightedArena& twa) {
  tree_detail::require_leaf_target_tree(twa);
  std::vector<bool> alive(twa.size(), true);
  return tree_detail::compute_rank(twa, alive).dual;
}

// Backward induction value per node: reduced leaf weight at leaves, min over
// children at the player's nodes, max at the opponent's. The root value is
// the player's regret on the tree.
inline std::vector<ExtendedNat> backward_minmax(const TargetWeightedArena& twa,
                                                PlayerId player) {
  tree_detail::require_leaf_target_tree(twa);
  std::vector<bool> alive(twa.size(), true);
  auto rc = tree_detail::compute_rank(twa, alive);
  return player == PlayerId::p1 ? rc.value1 : rc.value2;
}

// One application of the delete operator on the alive subtree: drop every
// edge whose owner could guarantee strictly less than the child offers, then
// keep the root component. Returns the number of edges removed.
inline std::size_t delete_step(const TargetWeightedArena& twa,
                               std::vector<bool>& edge_alive,
                               std::size_t* visits = nullptr) {
  const Arena& tree = twa.arena();
  const auto rc = tree_detail::compute_rank(twa, edge_alive);
  if (visits) *visits += rc.visits;
  const ExtendedNat root1 = rc.value1[tree.initial()];
  const ExtendedNat root2 = rc.value2[tree.initial()];
  std::size_t removed = 0;
  for (int v : rc.order) {
    const PlayerId who = tree.owner(v);
    for (int c : tree.successors(v)) {
      if (!edge_alive[c]) continue;
      const ExtendedNat child =
          who == PlayerId::p1 ? rc.value1[c] : rc.value2[c];
      const ExtendedNat root = who == PlayerId::p1 ? root1 : root2;
      if (child > root) {
        edge_alive[c] = false;
        ++removed;
      }
    }
  }
  return removed;
}

// Iterated regret minimization on a leaf-target tree: recompute best
// alternatives and backward values on the surviving subtree, delete, and
// repeat until no edge is removed.
inline IteratedReport iterated_regret_tree(const TargetWeightedArena& twa) {
  tree_detail::require_leaf_target_tree(twa);
  const Arena& tree = twa.arena();
  const int n = static_cast<int>(tree.size());
  IteratedReport report;
  std::vector<bool> alive(n, true);
  std::vector<int> parent(n, -1);
  for (int v = 0; v < n; ++v)
    for (int c : tree.successors(v)) parent[c] = v;

  for (std::size_t rank = 1;; ++rank) {
    const auto rc = tree_detail::compute_rank(twa, alive);
    report.node_visits += rc.visits;
    RankRecord rec;
    rec.regret1 = rc.value1[tree.initial()];
    rec.regret2 = rc.value2[tree.initial()];

    std::vector<bool> next = alive;
    const ExtendedNat root1 = rec.regret1, root2 = rec.regret2;
    for (int v : rc.order) {
      const PlayerId who = tree.owner(v);
      for (int c : tree.successors(v)) {
        if (!alive[c]) continue;
        const ExtendedNat child =
            who == PlayerId::p1 ? rc.value1[c] : rc.value2[c];
        if (child > (who == PlayerId::p1 ? root1 : root2)) {
          next[c] = false;
          report.deleted_at[{v, c}] = rank;
          ++rec.edges_removed;
        }
      }
    }
    report.ranks.push_back(rec);
    if (rec.edges_removed == 0) {
      report.fixpoint_rank = rank;
      break;
    }
    alive = std::move(next);
  }

  // Witness strategies follow never-deleted edges, smallest child id first.
  for (PlayerId p : {PlayerId::p1, PlayerId::p2}) {
    Strategy w;
    w.player = p;
    for (int v = 0; v < n; ++v) {
      if (tree.owner(v) != p || tree.out_degree(v) == 0) continue;
      for (int c : tree.successors(v)) {
        if (!report.deleted_at.count({v, c})) {
          w.move_table[{0, v}] = c;
          break;
        }
      }
    }
    (p == PlayerId::p1 ? report.witness1 : report.witness2) = std::move(w);
  }
  return report;
}

// Entry point for edge-weighted trees: convert to the leaf-target view first.
inline IteratedReport iterated_regret_tree(const Arena& tree) {
  return iterated_regret_tree(edge_tree_to_leaf_twa(tree));
}

}  // namespace rgg
