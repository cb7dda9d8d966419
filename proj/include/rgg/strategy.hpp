#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rgg/arena.hpp"
#include "rgg/errors.hpp"

namespace rgg {

// Move function with optional finite memory (Mealy style). A memoryless
// strategy has a single memory state. The move table holds an entry for
// every reachable (memory, own position) pair with outgoing edges; the
// update table is keyed by the traversed edge since observations are edges
// of the play. Missing update entries leave the memory unchanged.
struct Strategy {
  PlayerId player = PlayerId::p1;
  std::vector<std::string> memory_labels = {"-"};
  int initial_memory = 0;
  std::map<std::pair<int, int>, int> move_table;          // (mem, pos) -> succ
  std::map<std::tuple<int, int, int>, int> update_table;  // (mem, from, to) -> mem

  bool memoryless() const { return memory_labels.size() == 1; }

  // Successor choice at `pos` with memory `mem`; nullopt exactly when `pos`
  // is a dead end.
  std::optional<int> move(const Arena& arena, int mem, int pos) const {
    if (arena.owner(pos) != player)
      throw ContractError("strategy consulted on opponent position " + arena.id(pos));
    if (arena.out_degree(pos) == 0) return std::nullopt;
    auto it = move_table.find({mem, pos});
    if (it == move_table.end())
      throw ContractError("strategy undefined at position " + arena.id(pos) +
                          " with memory state " + memory_labels[mem]);
    return it->second;
  }

  int update(int mem, int from, int to) const {
    auto it = update_table.find({mem, from, to});
    return it == update_table.end() ? mem : it->second;
  }

  static Strategy memoryless_from(PlayerId player,
                                  const std::map<int, int>& moves) {
    Strategy s;
    s.player = player;
    for (auto [pos, succ] : moves) s.move_table[{0, pos}] = succ;
    return s;
  }

  // Total legal memoryless strategy: smallest-id successor everywhere.
  static Strategy smallest_successor(const Arena& arena, PlayerId player) {
    Strategy s;
    s.player = player;
    for (int v = 0; v < static_cast<int>(arena.size()); ++v)
      if (arena.owner(v) == player && arena.out_degree(v) > 0)
        s.move_table[{0, v}] = arena.successors(v).front();
    return s;
  }
};

// The unique play induced by a pair of strategies. Tracing stops at a dead
// end, or once both target sets have been visited (utilities are settled),
// or when a (position, memory, memory) state repeats, which certifies that
// the play loops forever.
inline Play outcome(const Arena& arena, const Strategy& s1, const Strategy& s2) {
  if (s1.player == s2.player) throw InputError("strategies belong to the same player");
  const Strategy& p1 = s1.player == PlayerId::p1 ? s1 : s2;
  const Strategy& p2 = s1.player == PlayerId::p2 ? s1 : s2;

  Play play;
  int pos = arena.initial();
  int m1 = p1.initial_memory, m2 = p2.initial_memory;
  bool seen1 = arena.is_target(pos, PlayerId::p1);
  bool seen2 = arena.is_target(pos, PlayerId::p2);
  std::map<std::tuple<int, int, int>, std::size_t> visited;
  play.positions.push_back(pos);
  visited[{pos, m1, m2}] = 0;

  while (true) {
    if (seen1 && seen2) {
      play.kind = Play::Kind::Prefix;
      return play;
    }
    if (arena.out_degree(pos) == 0) {
      play.kind = Play::Kind::DeadEnd;
      return play;
    }
    const Strategy& mover = arena.owner(pos) == PlayerId::p1 ? p1 : p2;
    const int mem = arena.owner(pos) == PlayerId::p1 ? m1 : m2;
    const int next = *mover.move(arena, mem, pos);
    if (!arena.has_edge(pos, next))
      throw ContractError("strategy chose a missing edge from " + arena.id(pos));
    m1 = p1.update(m1, pos, next);
    m2 = p2.update(m2, pos, next);
    pos = next;
    play.positions.push_back(pos);
    seen1 = seen1 || arena.is_target(pos, PlayerId::p1);
    seen2 = seen2 || arena.is_target(pos, PlayerId::p2);
    auto [it, inserted] = visited.insert({{pos, m1, m2}, play.positions.size() - 1});
    if (!inserted) {
      play.kind = Play::Kind::Lasso;
      play.loop_start = it->second;
      return play;
    }
  }
}

inline ExtendedNat utility(const Arena& arena, const Strategy& s1,
                           const Strategy& s2, PlayerId p) {
  return utility(arena, outcome(arena, s1, s2), p);
}

}  // namespace rgg
