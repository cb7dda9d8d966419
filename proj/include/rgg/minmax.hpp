#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <vector>

#include "rgg/arena.hpp"
#include "rgg/strategy.hpp"

namespace rgg {

// Anything the min-max solver needs from a game: position ownership,
// adjacency both ways, and per-player target weights. Satisfied by
// TargetWeightedArena and by the product graphs built for regret solving.
template <class G>
concept GameGraph = requires(const G& g, int v, PlayerId p) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.initial() } -> std::convertible_to<int>;
  { g.owner(v) } -> std::same_as<PlayerId>;
  { g.successors(v) };
  { g.predecessors(v) };
  { g.is_target(v, p) } -> std::convertible_to<bool>;
  { g.target_weight(v, p) } -> std::convertible_to<ExtendedNat>;
};

// Result of one reachability fixpoint: the winning set, one witness
// successor per winning player position, and the instrumented number of
// counter updates (decrements plus insertions, bounded by |S| + |T|).
struct AttractorResult {
  std::vector<bool> winning;
  std::vector<int> choice;  // -1 where unset
  std::size_t counter_updates = 0;

  bool initial_winning = false;
};

// Positions from which `player` can force a first target visit of weight
// <= K while never passing through a target of weight > K.
template <GameGraph G>
AttractorResult attract(const G& game, PlayerId player, std::uint64_t K) {
  const int n = static_cast<int>(game.size());
  AttractorResult res;
  res.winning.assign(n, false);
  res.choice.assign(n, -1);

  std::vector<std::size_t> counter(n);
  std::vector<bool> excluded(n, false);  // targets heavier than K
  std::vector<int> queue;
  queue.reserve(n);

  for (int v = 0; v < n; ++v) {
    counter[v] = game.successors(v).size();
    if (game.is_target(v, player)) {
      if (game.target_weight(v, player) <= ExtendedNat(K)) {
        res.winning[v] = true;
        queue.push_back(v);
        ++res.counter_updates;
      } else {
        excluded[v] = true;
      }
    }
  }

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int w = queue[head];
    for (int u : game.predecessors(w)) {
      if (res.winning[u] || excluded[u]) continue;
      ++res.counter_updates;
      --counter[u];
      bool add = false;
      if (game.owner(u) == player) {
        add = true;
      } else if (counter[u] == 0) {
        add = true;  // every successor already absorbed
      }
      if (add) {
        // Pick the witness move before marking u, so it points to a strictly
        // earlier member of the winning set (no self-loops, no cycles).
        if (game.owner(u) == player) {
          for (int s : game.successors(u)) {
            if (res.winning[s]) {
              res.choice[u] = s;
              break;
            }
          }
        }
        res.winning[u] = true;
        queue.push_back(u);
      }
    }
  }

  res.initial_winning = res.winning[game.initial()];
  return res;
}

template <GameGraph G>
bool can_achieve(const G& game, PlayerId player, std::uint64_t K) {
  return attract(game, player, K).initial_winning;
}

// Sorted distinct finite target weights of `player`; the only possible
// finite min-max values.
template <GameGraph G>
std::vector<std::uint64_t> candidate_values(const G& game, PlayerId player) {
  std::vector<std::uint64_t> ws;
  for (int v = 0; v < static_cast<int>(game.size()); ++v)
    if (game.is_target(v, player) && game.target_weight(v, player).is_finite())
      ws.push_back(game.target_weight(v, player).finite_value());
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

struct MinmaxSolution {
  ExtendedNat value = kInf;
  // Witness successor per position owned by the solved player (-1 where the
  // position is a dead end). Achieves `value` against every opponent
  // strategy; when value is inf this is just some total legal choice.
  std::vector<int> choice;
};

// min over player's strategies of max over the opponent's of the player's
// utility. The dichotomy runs over the distinct target weights: the value
// is always one of them, inf, or 0 when the game starts inside the target
// set (empty-sum utility; such games are trivially won).
template <GameGraph G>
MinmaxSolution minmax_solve(const G& game, PlayerId player) {
  const int n = static_cast<int>(game.size());
  MinmaxSolution out;
  out.choice.assign(n, -1);
  auto fill_default = [&] {
    for (int v = 0; v < n; ++v)
      if (game.owner(v) == player && out.choice[v] == -1 &&
          !game.successors(v).empty())
        out.choice[v] = game.successors(v)[0];
  };

  if (game.is_target(game.initial(), player)) {
    out.value = ExtendedNat(0);
    fill_default();
    return out;
  }

  const auto candidates = candidate_values(game, player);
  if (candidates.empty() || !can_achieve(game, player, candidates.back())) {
    fill_default();
    return out;  // inf: any strategy achieves the value
  }

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (can_achieve(game, player, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  out.value = ExtendedNat(candidates[lo]);

  const auto att = attract(game, player, candidates[lo]);
  for (int v = 0; v < n; ++v)
    if (game.owner(v) == player && att.choice[v] != -1)
      out.choice[v] = att.choice[v];
  fill_default();
  return out;
}

inline ExtendedNat minmax_value(const TargetWeightedArena& twa, PlayerId player) {
  return minmax_solve(twa, player).value;
}

// Memoryless witness achieving the min-max value (total on every non-dead-end
// position of the player; when the value is inf the strategy is merely legal).
inline Strategy minmax_strategy(const TargetWeightedArena& twa, PlayerId player) {
  const auto sol = minmax_solve(twa, player);
  Strategy s;
  s.player = player;
  for (int v = 0; v < static_cast<int>(twa.size()); ++v)
    if (twa.owner(v) == player && sol.choice[v] != -1)
      s.move_table[{0, v}] = sol.choice[v];
  return s;
}

}  // namespace rgg
