#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "rgg/arena.hpp"
#include "rgg/matrix_game.hpp"

namespace rgg {

// Deterministic PRNG with explicit range mapping so generated instances are
// identical across platforms and standard libraries.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {  // inclusive
    return lo + below(hi - lo + 1);
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
  std::uint64_t state_;
};

namespace gen {

inline std::string pos_name(std::size_t k) {
  std::string s = std::to_string(k);
  return "p" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

struct TwaOptions {
  std::size_t positions = 6;
  std::size_t max_targets = 3;     // player 1 targets
  std::uint64_t max_weight = 3;
  bool opponent_targets = false;   // also mark some player 2 targets
  // When set, every cycle passes through a target of the solved player, so
  // plays truncated at the first target visit form a finite tree.
  bool cycles_through_targets = true;
};

// Random target-weighted arena over a position order. Only edges leaving
// targets may point backwards, which confines every cycle to pass through a
// target. Uniformly random shapes almost always collapse to regret 0 or
// inf, so about half the instances get a planted commitment dilemma: a
// choice between a mid-priced target and an adversary fork spanning a
// cheaper and a dearer one.
inline ArenaData random_twa(SplitMix64& rng, const TwaOptions& opt) {
  ArenaData d;
  const std::size_t n = opt.positions;
  std::vector<bool> target1(n, false), target2(n, false);
  std::vector<std::uint64_t> weight1(n, 0), weight2(n, 0);
  std::vector<PlayerId> owner(n);
  for (std::size_t v = 0; v < n; ++v)
    owner[v] = rng.chance(1, 2) ? PlayerId::p1 : PlayerId::p2;

  const bool plant = n >= 6 && opt.max_weight >= 2 && rng.chance(1, 2);
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::size_t target_count = 0;
  if (plant) {
    // x -> safe(mid) and x -> fork -> {lo, hi} with lo < mid < hi.
    const std::size_t x = n - 5, safe = n - 4, fork = n - 3, lo = n - 2,
                      hi = n - 1;
    owner[x] = PlayerId::p1;
    owner[fork] = PlayerId::p2;
    const std::uint64_t mid = rng.range(1, opt.max_weight - 1);
    target1[safe] = target1[lo] = target1[hi] = true;
    target_count = 3;
    weight1[safe] = mid;
    weight1[lo] = rng.below(mid);
    weight1[hi] = rng.range(mid + 1, opt.max_weight);
    for (auto [f, t] : {std::pair{x, safe}, {x, fork}, {fork, lo}, {fork, hi}})
      used.insert({f, t});
  } else {
    target1[n - 1] = true;
    target_count = 1;
    weight1[n - 1] = rng.range(0, opt.max_weight);
  }
  const std::size_t room = opt.max_targets > target_count
                               ? opt.max_targets - target_count
                               : 0;
  for (std::size_t k = rng.below(room + 1); k > 0; --k) {
    const std::size_t v = rng.range(n / 2, n - 1);
    if (!target1[v]) {
      target1[v] = true;
      weight1[v] = rng.range(0, opt.max_weight);
    }
  }
  if (opt.opponent_targets)
    for (std::size_t v = 1; v < n; ++v)
      if (rng.chance(1, 4)) {
        target2[v] = true;
        weight2[v] = rng.range(0, opt.max_weight);
      }

  for (std::size_t v = 0; v < n; ++v)
    d.positions.push_back({pos_name(v), owner[v], target1[v], target2[v]});
  d.initial = pos_name(0);

  auto add_edge = [&](std::size_t from, std::size_t to) {
    if (!used.insert({from, to}).second) return;
    d.edges.push_back({pos_name(from), pos_name(to), weight1[to], weight2[to]});
  };
  for (const auto& [f, t] : used)
    d.edges.push_back({pos_name(f), pos_name(t), weight1[t], weight2[t]});

  // Short forward hops keep plays deep; occasional longer skips.
  auto forward_of = [&](std::size_t from) {
    const std::size_t hop = rng.chance(4, 5) ? 1 + rng.below(2) : 1 + rng.below(4);
    return std::min(from + hop, n - 1);
  };
  const std::size_t spine_end = plant ? n - 5 : n - 1;
  for (std::size_t v = 0; v < spine_end; ++v)
    if (plant || rng.chance(9, 10))
      add_edge(v, plant ? std::min(forward_of(v), n - 5) : forward_of(v));
  const std::size_t extra = n / 2 + rng.below(n);
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t from = rng.below(n - 1);
    if (opt.cycles_through_targets && !target1[from]) {
      add_edge(from, forward_of(from));
    } else {
      add_edge(from, rng.below(n));  // leaving a target may point anywhere
    }
  }
  return d;
}

struct EdgeArenaOptions {
  std::size_t positions = 6;
  std::uint64_t max_weight = 3;
  std::uint64_t min_weight1 = 1;  // solved player's weights stay positive
  std::size_t max_targets = 2;
};

// Random edge-weighted arena with arbitrary cycles. Player 1 weights are at
// least min_weight1 so bounded unfoldings stay finite.
inline ArenaData random_edge_arena(SplitMix64& rng, const EdgeArenaOptions& opt) {
  ArenaData d;
  const std::size_t n = opt.positions;
  std::vector<bool> target1(n, false);
  std::vector<PlayerId> owner(n);
  for (std::size_t v = 0; v < n; ++v)
    owner[v] = rng.chance(1, 2) ? PlayerId::p1 : PlayerId::p2;

  // Planted commitment dilemma, as in random_twa, with route sums
  // lo-total < safe < hi-total.
  const bool plant =
      n >= 6 && opt.max_weight >= 3 && opt.min_weight1 <= 1 && rng.chance(1, 2);
  std::set<std::pair<std::size_t, std::size_t>> used;
  if (plant) {
    const std::size_t x = n - 5, safe = n - 4, fork = n - 3, lo = n - 2,
                      hi = n - 1;
    owner[x] = PlayerId::p1;
    owner[fork] = PlayerId::p2;
    target1[safe] = target1[lo] = target1[hi] = true;
    auto put = [&](std::size_t f, std::size_t t, std::uint64_t w1) {
      used.insert({f, t});
      d.edges.push_back({pos_name(f), pos_name(t), w1, rng.range(0, opt.max_weight)});
    };
    put(x, safe, 3);
    put(x, fork, 1);
    put(fork, lo, 1);
    put(fork, hi, 3);
  } else {
    target1[n - 1] = true;
  }
  const std::size_t targets =
      rng.below(std::min<std::uint64_t>(opt.max_targets, n - 1));
  for (std::size_t k = 0; k < targets; ++k) target1[rng.range(1, n - 1)] = true;

  for (std::size_t v = 0; v < n; ++v)
    d.positions.push_back({pos_name(v), owner[v], target1[v], false});
  d.initial = pos_name(0);

  auto add_edge = [&](std::size_t from, std::size_t to) {
    if (!used.insert({from, to}).second) return;
    d.edges.push_back({pos_name(from), pos_name(to),
                       rng.range(opt.min_weight1, opt.max_weight),
                       rng.range(0, opt.max_weight)});
  };
  const std::size_t spine_end = plant ? n - 5 : n - 1;
  for (std::size_t v = 0; v < spine_end; ++v)
    if (plant || rng.chance(9, 10))
      add_edge(v, std::min(v + 1 + rng.below(2), plant ? n - 5 : n - 1));
  const std::size_t extra = n / 2 + rng.below(n + 1);
  for (std::size_t k = 0; k < extra; ++k) add_edge(rng.below(n), rng.below(n));
  return d;
}

struct TreeOptions {
  std::size_t max_leaves = 10;
  std::uint64_t max_weight = 5;
  std::uint64_t min_weight = 0;
  unsigned target_num = 2, target_den = 5;  // per-node target probability
};

// Random edge-weighted tree arena; any node may carry target flags.
inline ArenaData random_tree(SplitMix64& rng, const TreeOptions& opt) {
  ArenaData d;
  std::size_t leaves = 1;
  std::vector<std::size_t> open{0};
  std::size_t next_id = 1;
  d.positions.push_back({pos_name(0),
                         rng.chance(1, 2) ? PlayerId::p1 : PlayerId::p2,
                         rng.chance(opt.target_num, opt.target_den),
                         rng.chance(opt.target_num, opt.target_den)});
  d.initial = pos_name(0);

  while (!open.empty()) {
    const std::size_t v = open.back();
    open.pop_back();
    std::size_t children = rng.below(4);  // 0..3, 0 closes the branch
    if (leaves + children > opt.max_leaves) children = 0;
    if (children > 0) leaves += children - 1;
    for (std::size_t k = 0; k < children; ++k) {
      const std::size_t c = next_id++;
      d.positions.push_back({pos_name(c),
                             rng.chance(1, 2) ? PlayerId::p1 : PlayerId::p2,
                             rng.chance(opt.target_num, opt.target_den),
                             rng.chance(opt.target_num, opt.target_den)});
      d.edges.push_back({pos_name(v), pos_name(c),
                         rng.range(opt.min_weight, opt.max_weight),
                         rng.range(opt.min_weight, opt.max_weight)});
      open.push_back(c);
    }
  }
  return d;
}

struct PositiveOptions {
  std::size_t positions = 4;
  std::uint64_t max_weight = 2;
};

// Strictly positive arena for the unfolding-based solver.
inline ArenaData random_positive_arena(SplitMix64& rng,
                                       const PositiveOptions& opt) {
  ArenaData d;
  const std::size_t n = opt.positions;
  for (std::size_t v = 0; v < n; ++v)
    d.positions.push_back({pos_name(v),
                           rng.chance(1, 2) ? PlayerId::p1 : PlayerId::p2,
                           v > 0 && rng.chance(1, 3),
                           v > 0 && rng.chance(1, 3)});
  d.initial = pos_name(0);
  std::set<std::pair<std::size_t, std::size_t>> used;
  auto add_edge = [&](std::size_t from, std::size_t to) {
    if (!used.insert({from, to}).second) return;
    d.edges.push_back({pos_name(from), pos_name(to),
                       rng.range(1, opt.max_weight),
                       rng.range(1, opt.max_weight)});
  };
  for (std::size_t v = 0; v + 1 < n; ++v) add_edge(v, v + 1);
  const std::size_t extra = rng.below(n + 2);
  for (std::size_t k = 0; k < extra; ++k) add_edge(rng.below(n), rng.below(n));
  return d;
}

inline MatrixGame random_matrix(SplitMix64& rng, std::size_t rows,
                                std::size_t cols, std::uint64_t max_penalty) {
  MatrixGame m;
  m.cells.resize(rows);
  for (auto& row : m.cells) {
    row.resize(cols);
    for (auto& cell : row)
      cell = {rng.range(0, max_penalty), rng.range(0, max_penalty)};
  }
  return m;
}

}  // namespace gen
}  // namespace rgg
