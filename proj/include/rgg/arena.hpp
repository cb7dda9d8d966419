#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rgg/errors.hpp"
#include "rgg/extended_nat.hpp"

namespace rgg {

enum class PlayerId : int { p1 = 1, p2 = 2 };

constexpr PlayerId opponent(PlayerId p) {
  return p == PlayerId::p1 ? PlayerId::p2 : PlayerId::p1;
}

// Raw arena description, as parsed from a document or assembled by hand.
// Validation happens when an Arena is built from it.
struct ArenaData {
  struct Position {
    std::string id;
    PlayerId owner = PlayerId::p1;
    bool target1 = false;
    bool target2 = false;
  };
  struct Edge {
    std::string from;
    std::string to;
    std::uint64_t w1 = 0;
    std::uint64_t w2 = 0;
  };

  std::vector<Position> positions;
  std::string initial;
  std::vector<Edge> edges;
};

struct Violation {
  std::string subject;  // offending position id or "from->to" edge
  std::string message;
};

inline std::vector<Violation> validate(const ArenaData& data) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (const auto& p : data.positions) {
    if (!ids.insert(p.id).second)
      out.push_back({p.id, "duplicate position id"});
  }
  if (data.positions.empty()) out.push_back({"", "arena has no positions"});
  if (!ids.count(data.initial))
    out.push_back({data.initial, "initial position missing"});
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& e : data.edges) {
    const std::string subject = e.from + "->" + e.to;
    if (!ids.count(e.from))
      out.push_back({subject, "edge source is not a declared position"});
    if (!ids.count(e.to))
      out.push_back({subject, "edge destination is not a declared position"});
    if (!seen_edges.insert({e.from, e.to}).second)
      out.push_back({subject, "duplicate edge"});
  }
  return out;
}

// Validated immutable game arena. Positions are indexed 0..size()-1 in
// sorted id order so every iteration order derived from indices is the
// deterministic by-id order.
class Arena {
public:
  static Arena from_data(const ArenaData& data) {
    auto violations = validate(data);
    if (!violations.empty()) {
      std::string msg = "invalid arena:";
      for (const auto& v : violations) msg += " [" + v.subject + "] " + v.message + ";";
      throw InputError(msg);
    }
    return Arena(data);
  }

  std::size_t size() const { return owners_.size(); }
  std::size_t edge_count() const { return edge_dst_.size(); }

  int initial() const { return initial_; }
  PlayerId owner(int v) const { return owners_[v]; }
  const std::string& id(int v) const { return ids_[v]; }

  int index_of(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) throw InputError("unknown position id: " + id);
    return static_cast<int>(it - ids_.begin());
  }

  bool is_target(int v, PlayerId p) const {
    return p == PlayerId::p1 ? target1_[v] : target2_[v];
  }

  // Successors of v, in ascending index (= id) order.
  std::span<const int> successors(int v) const {
    return {edge_dst_.data() + out_begin_[v],
            out_begin_[v + 1] - out_begin_[v]};
  }
  std::span<const int> predecessors(int v) const {
    return {in_src_.data() + in_begin_[v], in_begin_[v + 1] - in_begin_[v]};
  }
  std::size_t out_degree(int v) const { return out_begin_[v + 1] - out_begin_[v]; }

  bool has_edge(int from, int to) const {
    auto s = successors(from);
    return std::binary_search(s.begin(), s.end(), to);
  }

  std::uint64_t weight(int from, int to, PlayerId p) const {
    const auto& w = p == PlayerId::p1 ? w1_ : w2_;
    auto s = successors(from);
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it == s.end() || *it != to)
      throw InputError("no edge " + ids_[from] + "->" + ids_[to]);
    return w[out_begin_[from] + (it - s.begin())];
  }

  std::uint64_t max_weight(PlayerId p) const {
    return p == PlayerId::p1 ? max_w1_ : max_w2_;
  }
  // M^G: maximum edge weight over both players.
  std::uint64_t max_weight() const { return std::max(max_w1_, max_w2_); }

  std::vector<int> targets(PlayerId p) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(size()); ++v)
      if (is_target(v, p)) out.push_back(v);
    return out;
  }

  bool all_weights_positive() const {
    for (auto w : w1_)
      if (w == 0) return false;
    for (auto w : w2_)
      if (w == 0) return false;
    return true;
  }

  // Tree check: every non-root has in-degree 1, the root has in-degree 0,
  // and every position is reachable from the root.
  bool is_tree() const {
    for (int v = 0; v < static_cast<int>(size()); ++v) {
      const auto in = predecessors(v).size();
      if (v == initial_ ? in != 0 : in != 1) return false;
    }
    std::vector<bool> seen(size(), false);
    std::vector<int> stack{initial_};
    seen[initial_] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int s : successors(v)) {
        if (seen[s]) return false;  // joins or cycles
        seen[s] = true;
        ++count;
        stack.push_back(s);
      }
    }
    return count == size();
  }

  ArenaData to_data() const {
    ArenaData d;
    d.initial = ids_[initial_];
    for (int v = 0; v < static_cast<int>(size()); ++v)
      d.positions.push_back({ids_[v], owners_[v], target1_[v], target2_[v]});
    for (int v = 0; v < static_cast<int>(size()); ++v) {
      auto s = successors(v);
      for (std::size_t k = 0; k < s.size(); ++k) {
        std::size_t e = out_begin_[v] + k;
        d.edges.push_back({ids_[v], ids_[s[k]], w1_[e], w2_[e]});
      }
    }
    return d;
  }

private:
  explicit Arena(const ArenaData& data) {
    const std::size_t n = data.positions.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return data.positions[a].id < data.positions[b].id;
    });
    ids_.reserve(n);
    for (auto i : order) {
      const auto& p = data.positions[i];
      ids_.push_back(p.id);
      owners_.push_back(p.owner);
      target1_.push_back(p.target1);
      target2_.push_back(p.target2);
    }
    initial_ = index_of(data.initial);

    struct E {
      int from, to;
      std::uint64_t w1, w2;
    };
    std::vector<E> es;
    es.reserve(data.edges.size());
    for (const auto& e : data.edges)
      es.push_back({index_of(e.from), index_of(e.to), e.w1, e.w2});
    std::sort(es.begin(), es.end(), [](const E& a, const E& b) {
      return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });

    out_begin_.assign(n + 1, 0);
    for (const auto& e : es) ++out_begin_[e.from + 1];
    for (std::size_t v = 0; v < n; ++v) out_begin_[v + 1] += out_begin_[v];
    for (const auto& e : es) {
      edge_dst_.push_back(e.to);
      w1_.push_back(e.w1);
      w2_.push_back(e.w2);
      max_w1_ = std::max(max_w1_, e.w1);
      max_w2_ = std::max(max_w2_, e.w2);
    }

    in_begin_.assign(n + 1, 0);
    for (const auto& e : es) ++in_begin_[e.to + 1];
    for (std::size_t v = 0; v < n; ++v) in_begin_[v + 1] += in_begin_[v];
    std::vector<std::size_t> cursor(in_begin_.begin(), in_begin_.end() - 1);
    in_src_.resize(es.size());
    for (const auto& e : es) in_src_[cursor[e.to]++] = e.from;
  }

  std::vector<std::string> ids_;
  std::vector<PlayerId> owners_;
  std::vector<bool> target1_, target2_;
  int initial_ = 0;
  std::vector<std::size_t> out_begin_, in_begin_;
  std::vector<int> edge_dst_, in_src_;
  std::vector<std::uint64_t> w1_, w2_;
  std::uint64_t max_w1_ = 0, max_w2_ = 0;
};

// A finite play. `kind` records why tracing stopped:
//   DeadEnd  - the last position has no outgoing edge,
//   Lasso    - a position/memory pair repeated; the play cycles forever,
//   Prefix   - tracing stopped early (e.g. both targets already visited).
struct Play {
  enum class Kind { DeadEnd, Lasso, Prefix };
  std::vector<int> positions;
  Kind kind = Kind::Prefix;
  // For Lasso: index in `positions` where the repeated state first occurred.
  std::size_t loop_start = 0;
};

inline void check_play(const Arena& arena, const Play& play) {
  if (play.positions.empty()) throw InputError("empty play");
  if (play.positions.front() != arena.initial())
    throw InputError("play does not start at the initial position");
  for (std::size_t i = 0; i + 1 < play.positions.size(); ++i)
    if (!arena.has_edge(play.positions[i], play.positions[i + 1]))
      throw InputError("play uses a missing edge at step " + std::to_string(i));
}

// Sum of player `p` edge weights up to (excluding edges after) the first
// visit to p's target set; inf if the play never visits it. A play that
// starts inside the target set has utility 0 (empty sum).
inline ExtendedNat utility(const Arena& arena, const Play& play, PlayerId p) {
  check_play(arena, play);
  if (arena.is_target(play.positions[0], p)) return ExtendedNat(0);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i + 1 < play.positions.size(); ++i) {
    sum += arena.weight(play.positions[i], play.positions[i + 1], p);
    if (arena.is_target(play.positions[i + 1], p)) return ExtendedNat(sum);
  }
  return kInf;
}

// Arena together with explicit per-player target weight maps. For arenas
// whose edge weights already have the target-weighted shape the maps are
// derived from the edges; leaf-target trees construct them directly and
// may carry infinite weights.
class TargetWeightedArena {
public:
  static std::vector<Violation> twa_violations(const Arena& a) {
    std::vector<Violation> out;
    for (PlayerId p : {PlayerId::p1, PlayerId::p2}) {
      const char* tag = p == PlayerId::p1 ? " (player 1)" : " (player 2)";
      std::vector<std::optional<std::uint64_t>> seen(a.size());
      for (int v = 0; v < static_cast<int>(a.size()); ++v) {
        for (int s : a.successors(v)) {
          const std::uint64_t w = a.weight(v, s, p);
          if (!a.is_target(s, p)) {
            if (w != 0)
              out.push_back({a.id(v) + "->" + a.id(s),
                             std::string("nonzero weight into a non-target") + tag});
          } else if (seen[s] && *seen[s] != w) {
            out.push_back({a.id(v) + "->" + a.id(s),
                           std::string("edges into the same target disagree") + tag});
          } else {
            seen[s] = w;
          }
        }
      }
    }
    return out;
  }

  static TargetWeightedArena from_edge_weights(Arena arena) {
    auto violations = twa_violations(arena);
    if (!violations.empty()) {
      std::string msg = "not target-weighted:";
      for (const auto& v : violations) msg += " [" + v.subject + "] " + v.message + ";";
      throw InputError(msg);
    }
    std::vector<ExtendedNat> w1(arena.size(), ExtendedNat(0));
    std::vector<ExtendedNat> w2(arena.size(), ExtendedNat(0));
    for (int v = 0; v < static_cast<int>(arena.size()); ++v) {
      for (int s : arena.successors(v)) {
        if (arena.is_target(s, PlayerId::p1))
          w1[s] = ExtendedNat(arena.weight(v, s, PlayerId::p1));
        if (arena.is_target(s, PlayerId::p2))
          w2[s] = ExtendedNat(arena.weight(v, s, PlayerId::p2));
      }
    }
    return TargetWeightedArena(std::move(arena), std::move(w1), std::move(w2));
  }

  static TargetWeightedArena with_weights(Arena arena,
                                          std::vector<ExtendedNat> w1,
                                          std::vector<ExtendedNat> w2) {
    if (w1.size() != arena.size() || w2.size() != arena.size())
      throw InputError("target weight maps must cover every position");
    return TargetWeightedArena(std::move(arena), std::move(w1), std::move(w2));
  }

  const Arena& arena() const { return arena_; }

  ExtendedNat target_weight(int v, PlayerId p) const {
    return p == PlayerId::p1 ? w1_[v] : w2_[v];
  }

  // Largest finite target weight of player p (0 when p has no finite target).
  std::uint64_t max_target_weight(PlayerId p) const {
    std::uint64_t m = 0;
    for (int v = 0; v < static_cast<int>(arena_.size()); ++v)
      if (arena_.is_target(v, p) && target_weight(v, p).is_finite())
        m = std::max(m, target_weight(v, p).finite_value());
    return m;
  }

  // GameGraph interface (shared with the product constructions).
  std::size_t size() const { return arena_.size(); }
  int initial() const { return arena_.initial(); }
  PlayerId owner(int v) const { return arena_.owner(v); }
  std::span<const int> successors(int v) const { return arena_.successors(v); }
  std::span<const int> predecessors(int v) const { return arena_.predecessors(v); }
  bool is_target(int v, PlayerId p) const { return arena_.is_target(v, p); }

private:
  TargetWeightedArena(Arena arena, std::vector<ExtendedNat> w1,
                      std::vector<ExtendedNat> w2)
      : arena_(std::move(arena)), w1_(std::move(w1)), w2_(std::move(w2)) {}

  Arena arena_;
  std::vector<ExtendedNat> w1_, w2_;
};

// Turns an edge-weighted tree into the leaf-target view: both players'
// target sets become the set of leaves and each leaf carries the utility of
// the unique root-to-leaf path (inf when the path misses that player's
// original target set). Internal weights are erased.
inline TargetWeightedArena edge_tree_to_leaf_twa(const Arena& tree) {
  if (!tree.is_tree()) throw InputError("arena is not a tree rooted at the initial position");
  const int n = static_cast<int>(tree.size());
  std::vector<ExtendedNat> u1(n, kInf), u2(n, kInf);
  ArenaData data;
  data.initial = tree.id(tree.initial());

  // Root-down accumulation of both players' utilities-so-far.
  struct Item {
    int v;
    ExtendedNat a1, a2;  // settled utility, inf while target unseen
    std::uint64_t s1, s2;  // running sums while unsettled
  };
  std::vector<Item> stack;
  const int root = tree.initial();
  Item init{root, kInf, kInf, 0, 0};
  if (tree.is_target(root, PlayerId::p1)) init.a1 = ExtendedNat(0);
  if (tree.is_target(root, PlayerId::p2)) init.a2 = ExtendedNat(0);
  stack.push_back(init);
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (tree.out_degree(it.v) == 0) {
      u1[it.v] = it.a1;
      u2[it.v] = it.a2;
    }
    for (int s : tree.successors(it.v)) {
      Item next = it;
      next.v = s;
      if (next.a1.is_infinite()) {
        next.s1 += tree.weight(it.v, s, PlayerId::p1);
        if (tree.is_target(s, PlayerId::p1)) next.a1 = ExtendedNat(next.s1);
      }
      if (next.a2.is_infinite()) {
        next.s2 += tree.weight(it.v, s, PlayerId::p2);
        if (tree.is_target(s, PlayerId::p2)) next.a2 = ExtendedNat(next.s2);
      }
      stack.push_back(next);
    }
  }

  for (int v = 0; v < n; ++v) {
    const bool leaf = tree.out_degree(v) == 0;
    data.positions.push_back({tree.id(v), tree.owner(v), leaf, leaf});
  }
  for (int v = 0; v < n; ++v)
    for (int s : tree.successors(v))
      data.edges.push_back({tree.id(v), tree.id(s), 0, 0});

  Arena shape = Arena::from_data(data);
  // Index order is preserved (same ids), so weight maps carry over.
  return TargetWeightedArena::with_weights(std::move(shape), std::move(u1),
                                           std::move(u2));
}

}  // namespace rgg
