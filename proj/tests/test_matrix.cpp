#include <doctest.h>

#include "rgg/generator.hpp"
#include "rgg/matrix_game.hpp"

using namespace rgg;

namespace {

// Two rows (A1, B1), two columns (A2, B2) of penalty pairs.
MatrixGame coordination() {
  MatrixGame m;
  m.cells = {{{2, 1}, {3, 4}}, {{1, 2}, {4, 3}}};
  return m;
}

}  // namespace

TEST_CASE("per-strategy regrets on the 2x2 game") {
  const auto m = coordination();
  const auto full = SurvivorSets::full(m);
  CHECK(strategy_regret(m, 1, 0, full) == 1);  // A1
  CHECK(strategy_regret(m, 1, 1, full) == 1);  // B1
  CHECK(strategy_regret(m, 2, 0, full) == 0);  // A2
  CHECK(strategy_regret(m, 2, 1, full) == 3);  // B2
}

TEST_CASE("regret of the single cell game is zero") {
  MatrixGame m;
  m.cells = {{{4, 9}}};
  CHECK(strategy_regret(m, 1, 0, SurvivorSets::full(m)) == 0);
  CHECK(strategy_regret(m, 2, 0, SurvivorSets::full(m)) == 0);
}

TEST_CASE("one deletion keeps both rows and drops the dominated column") {
  const auto m = coordination();
  const auto next = delete_dominated(m, SurvivorSets::full(m));
  CHECK(next.rows == std::vector<std::size_t>{0, 1});
  CHECK(next.cols == std::vector<std::size_t>{0});
}

TEST_CASE("the second deletion settles on (B1, A2)") {
  const auto m = coordination();
  const auto second = delete_dominated(m, delete_dominated(m, SurvivorSets::full(m)));
  CHECK(second.rows == std::vector<std::size_t>{1});
  CHECK(second.cols == std::vector<std::size_t>{0});
}

TEST_CASE("a fixpoint is left unchanged") {
  const auto m = coordination();
  SurvivorSets fix;
  fix.rows = {1};
  fix.cols = {0};
  CHECK(delete_dominated(m, fix) == fix);
}

TEST_CASE("iteration reports ranks and the second-rank regret of B1 is 0") {
  const auto m = coordination();
  const auto result = iterate_matrix(m);
  CHECK(result.fixpoint().rows == std::vector<std::size_t>{1});
  CHECK(result.fixpoint().cols == std::vector<std::size_t>{0});
  REQUIRE(result.ranks.size() >= 2);
  CHECK(result.ranks[0].regret1 == 1);
  CHECK(result.ranks[0].regret2 == 0);
  CHECK(result.ranks[1].regret1 == 0);
}

TEST_CASE("a constant matrix is a rank-1 fixpoint with full sets") {
  MatrixGame m;
  m.cells = {{{2, 2}, {2, 2}}, {{2, 2}, {2, 2}}};
  const auto result = iterate_matrix(m);
  CHECK(result.fixpoint_rank == 1);
  CHECK(result.fixpoint().rows.size() == 2);
  CHECK(result.fixpoint().cols.size() == 2);
}

TEST_CASE("random matrices: survivors nest, regrets fall, fixpoint is stable") {
  SplitMix64 rng(8);
  for (int round = 0; round < 60; ++round) {
    const auto m = gen::random_matrix(rng, 1 + rng.below(4), 1 + rng.below(4), 6);
    const auto result = iterate_matrix(m);
    for (std::size_t j = 1; j < result.ranks.size(); ++j) {
      const auto& prev = result.ranks[j - 1].survivors;
      const auto& cur = result.ranks[j].survivors;
      CHECK(std::includes(prev.rows.begin(), prev.rows.end(),
                          cur.rows.begin(), cur.rows.end()));
      CHECK(std::includes(prev.cols.begin(), prev.cols.end(),
                          cur.cols.begin(), cur.cols.end()));
      CHECK(result.ranks[j].regret1 <= result.ranks[j - 1].regret1);
      CHECK(result.ranks[j].regret2 <= result.ranks[j - 1].regret2);
    }
    CHECK(delete_dominated(m, result.fixpoint()) == result.fixpoint());
    CHECK(result.fixpoint_rank <= m.rows() + m.cols());
  }
}

TEST_CASE("malformed matrices are rejected") {
  MatrixGame empty;
  CHECK_THROWS_AS(iterate_matrix(empty), InputError);
  MatrixGame ragged;
  ragged.cells = {{{1, 1}, {2, 2}}, {{3, 3}}};
  CHECK_THROWS_AS(iterate_matrix(ragged), InputError);
}
