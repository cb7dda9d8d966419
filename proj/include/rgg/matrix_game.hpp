#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "rgg/errors.hpp"

namespace rgg {

// Strategic game given by an explicit penalty matrix. Entry (r, c) holds the
// pair of penalties when Player 1 picks row r and Player 2 picks column c.
// Minimization semantics throughout.
struct MatrixGame {
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> cells;

  std::size_t rows() const { return cells.size(); }
  std::size_t cols() const { return cells.empty() ? 0 : cells[0].size(); }

  void check() const {
    if (cells.empty() || cells[0].empty())
      throw InputError("penalty matrix must be nonempty");
    for (const auto& row : cells)
      if (row.size() != cells[0].size())
        throw InputError("penalty matrix must be rectangular");
  }

  std::uint64_t penalty(std::size_t r, std::size_t c, int player) const {
    return player == 1 ? cells[r][c].first : cells[r][c].second;
  }
};

struct SurvivorSets {
  std::vector<std::size_t> rows;  // Player 1 strategies still alive
  std::vector<std::size_t> cols;  // Player 2 strategies still alive

  static SurvivorSets full(const MatrixGame& m) {
    SurvivorSets s;
    for (std::size_t r = 0; r < m.rows(); ++r) s.rows.push_back(r);
    for (std::size_t c = 0; c < m.cols(); ++c) s.cols.push_back(c);
    return s;
  }
  bool operator==(const SurvivorSets&) const = default;
};

// Regret of one strategy against the current opposing survivors: the worst
// gap between its penalty and the best surviving reply in that column/row.
inline std::uint64_t strategy_regret(const MatrixGame& m, int player,
                                     std::size_t index,
                                     const SurvivorSets& survivors) {
  m.check();
  std::uint64_t worst = 0;
  if (player == 1) {
    for (std::size_t c : survivors.cols) {
      std::uint64_t best = m.penalty(survivors.rows.at(0), c, 1);
      for (std::size_t r : survivors.rows)
        best = std::min(best, m.penalty(r, c, 1));
      worst = std::max(worst, m.penalty(index, c, 1) - best);
    }
  } else {
    for (std::size_t r : survivors.rows) {
      std::uint64_t best = m.penalty(r, survivors.cols.at(0), 2);
      for (std::size_t c : survivors.cols)
        best = std::min(best, m.penalty(r, c, 2));
      worst = std::max(worst, m.penalty(r, index, 2) - best);
    }
  }
  return worst;
}

// One application of the delete operator: each player keeps exactly the
// strategies attaining her minimal regret against the current opponents.
// All minimizers survive on ties.
inline SurvivorSets delete_dominated(const MatrixGame& m,
                                     const SurvivorSets& survivors) {
  SurvivorSets out;
  std::uint64_t best1 = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t best2 = best1;
  std::vector<std::uint64_t> reg1, reg2;
  for (std::size_t r : survivors.rows) {
    reg1.push_back(strategy_regret(m, 1, r, survivors));
    best1 = std::min(best1, reg1.back());
  }
  for (std::size_t c : survivors.cols) {
    reg2.push_back(strategy_regret(m, 2, c, survivors));
    best2 = std::min(best2, reg2.back());
  }
  for (std::size_t k = 0; k < survivors.rows.size(); ++k)
    if (reg1[k] == best1) out.rows.push_back(survivors.rows[k]);
  for (std::size_t k = 0; k < survivors.cols.size(); ++k)
    if (reg2[k] == best2) out.cols.push_back(survivors.cols[k]);
  return out;
}

struct MatrixIrmRank {
  std::uint64_t regret1 = 0, regret2 = 0;
  SurvivorSets survivors;  // after this rank's deletion
};

struct MatrixIrmResult {
  std::vector<MatrixIrmRank> ranks;
  std::size_t fixpoint_rank = 0;

  const SurvivorSets& fixpoint() const { return ranks.back().survivors; }
};

// Iterate the delete operator to its fixpoint. Survivor sets shrink or
// stabilize, so this ends within rows + cols ranks.
inline MatrixIrmResult iterate_matrix(const MatrixGame& m) {
  m.check();
  MatrixIrmResult out;
  SurvivorSets cur = SurvivorSets::full(m);
  for (std::size_t rank = 1;; ++rank) {
    MatrixIrmRank rec;
    rec.regret1 = strategy_regret(m, 1, cur.rows[0], cur);
    for (std::size_t r : cur.rows)
      rec.regret1 = std::min(rec.regret1, strategy_regret(m, 1, r, cur));
    rec.regret2 = strategy_regret(m, 2, cur.cols[0], cur);
    for (std::size_t c : cur.cols)
      rec.regret2 = std::min(rec.regret2, strategy_regret(m, 2, c, cur));
    rec.survivors = delete_dominated(m, cur);
    const bool stable = rec.survivors == cur;
    cur = rec.survivors;
    out.ranks.push_back(std::move(rec));
    if (stable) {
      out.fixpoint_rank = rank;
      return out;
    }
  }
}

}  // namespace rgg
