#include <doctest.h>

#include "rgg/generator.hpp"
#include "rgg/iterated_positive.hpp"
#include "rgg/oracle.hpp"
#include "test_support.hpp"

using namespace rgg;
using test::Build;

TEST_CASE("bound formulas") {
  const Arena a = Build()
                      .pos("x", 1)
                      .pos("y", 2)
                      .edge("x", "y", 1, 1)
                      .edge("y", "x", 1, 1)
                      .arena();
  const auto b = positive_bounds(a);
  CHECK(b.winning_bound == 12);    // 6 * 1 * 2
  CHECK(b.unfolding_bound == 12);

  const Arena c = Build()
                      .pos("x", 1)
                      .pos("y", 2)
                      .pos("z", 1)
                      .edge("x", "y", 2, 1)
                      .edge("y", "z", 1, 2)
                      .edge("z", "x", 1, 1)
                      .arena();
  const auto bc = positive_bounds(c);
  CHECK(bc.winning_bound == 144);  // 6 * 8 * 3
  CHECK(bc.unfolding_bound == 288);
}

TEST_CASE("bounds reject zero weights") {
  const Arena a = Build().pos("x", 1).pos("y", 2).edge("x", "y", 0, 1).arena();
  CHECK_THROWS_AS(positive_bounds(a), InputError);
}

TEST_CASE("a single edge unfolds to two nodes") {
  const Arena a = Build()
                      .pos("s", 1)
                      .pos("t", 2, true, true)
                      .edge("s", "t", 2, 3)
                      .arena();
  const auto unf = unfold(a, 5);
  CHECK(unf.tree.size() == 2);
  CHECK(unf.base[unf.tree.initial()] == a.initial());
}

TEST_CASE("a self-loop unrolls at most bound times") {
  const Arena a = Build()
                      .pos("s", 1, false, false)
                      .pos("t", 2, true, true)
                      .edge("s", "s", 1, 1)
                      .edge("s", "t", 1, 1)
                      .arena();
  const auto unf = unfold(a, 3);
  // Plays: s, ss, sss, ssss cut at accumulated 3; each prefix also exits to t.
  std::size_t s_nodes = 0, t_nodes = 0;
  for (std::size_t v = 0; v < unf.tree.size(); ++v)
    (unf.base[v] == a.initial() ? s_nodes : t_nodes)++;
  CHECK(s_nodes == 4);
  CHECK(t_nodes == 3);
  for (std::size_t v = 0; v < unf.tree.size(); ++v) {
    CHECK(unf.acc1[v] <= 3);
    CHECK(unf.acc2[v] <= 3);
  }
}

TEST_CASE("unfolding respects the node cap") {
  const Arena a = Build()
                      .pos("s", 1)
                      .pos("u", 2)
                      .edge("s", "u", 1, 1)
                      .edge("u", "s", 1, 1)
                      .edge("u", "u", 1, 1)
                      .arena();
  UnfoldConfig config;
  config.node_cap = 5;
  CHECK_THROWS_AS(unfold(a, 100, config), ResourceError);
}

TEST_CASE("unfolded accumulations replay the root paths") {
  SplitMix64 rng(3);
  for (int round = 0; round < 25; ++round) {
    gen::PositiveOptions opt;
    opt.positions = 4;
    const Arena a = Arena::from_data(gen::random_positive_arena(rng, opt));
    const auto unf = unfold(a, 9);
    for (std::size_t v = 0; v < unf.tree.size(); ++v) {
      // Recompute both sums along the parent chain.
      std::uint64_t s1 = 0, s2 = 0;
      int node = static_cast<int>(v);
      while (node != unf.tree.initial()) {
        const int parent = unf.tree.predecessors(node)[0];
        s1 += a.weight(unf.base[parent], unf.base[node], PlayerId::p1);
        s2 += a.weight(unf.base[parent], unf.base[node], PlayerId::p2);
        node = parent;
      }
      CHECK(s1 == unf.acc1[v]);
      CHECK(s2 == unf.acc2[v]);
      CHECK(s1 <= 9);
      CHECK(s2 <= 9);
    }
  }
}

TEST_CASE("two forced positions give a rank-1 fixpoint with zero regrets") {
  const Arena a = Build()
                      .pos("s", 1)
                      .pos("t", 2, true, true)
                      .edge("s", "t", 1, 1)
                      .arena();
  const auto report = iterated_regret_positive(a);
  CHECK(report.tree.fixpoint_rank == 1);
  CHECK(report.tree.ranks[0].regret1 == ExtendedNat(0));
  CHECK(report.tree.ranks[0].regret2 == ExtendedNat(0));
}

TEST_CASE("per-rank regrets match the oracle on the same unfolding") {
  SplitMix64 rng(1234);
  int checked = 0;
  for (int round = 0; round < 40; ++round) {
    gen::PositiveOptions opt;
    opt.positions = 3 + rng.below(2);
    opt.max_weight = 2;
    const Arena a = Arena::from_data(gen::random_positive_arena(rng, opt));

    UnfoldConfig config;
    config.bound_override = 6;  // keep the tree enumerable for the oracle
    config.node_cap = 100'000;
    const auto report = iterated_regret_positive(a, config);

    const auto unf = unfold(a, 6, config);
    const auto play =
        oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(unf.tree));
    oracle::IteratedBruteforce brute;
    try {
      brute = oracle::iterated_bruteforce(play, 64, 200'000);
    } catch (const ResourceError&) {
      continue;
    }
    REQUIRE(report.tree.ranks.size() == brute.ranks.size());
    for (std::size_t j = 0; j < brute.ranks.size(); ++j) {
      CHECK(report.tree.ranks[j].regret1 == brute.ranks[j].regret1);
      CHECK(report.tree.ranks[j].regret2 == brute.ranks[j].regret2);
    }
    ++checked;
  }
  CHECK(checked > 15);
}

TEST_CASE("mapped-back witnesses replay the surviving tree play") {
  SplitMix64 rng(88);
  for (int round = 0; round < 20; ++round) {
    gen::PositiveOptions opt;
    opt.positions = 3;
    opt.max_weight = 2;
    const Arena a = Arena::from_data(gen::random_positive_arena(rng, opt));
    UnfoldConfig config;
    config.bound_override = 8;
    const auto report = iterated_regret_positive(a, config);

    // The two mapped-back witnesses, played against each other in the
    // arena, follow exactly the tree witnesses' surviving play.
    const auto unf = unfold(a, 8, config);
    const Play arena_play = outcome(a, report.witness1, report.witness2);
    const Play tree_play =
        outcome(unf.tree, report.tree.witness1, report.tree.witness2);
    REQUIRE(arena_play.positions.size() >= tree_play.positions.size());
    for (std::size_t i = 0; i < tree_play.positions.size(); ++i)
      CHECK(arena_play.positions[i] == unf.base[tree_play.positions[i]]);
  }
}

TEST_CASE("positive centipede variant reaches fixpoint regrets (0,0)") {
  // The centipede chain shifted to strictly positive weights: continue
  // edges cost (1,1); stop penalties keep the stopper/stopped tension.
  const Arena tree = Build()
                         .pos("A", 1)
                         .pos("B", 2)
                         .pos("C", 1)
                         .pos("D", 2)
                         .pos("E", 1)
                         .pos("sA", 1, true, true)
                         .pos("sB", 2, true, true)
                         .pos("sC", 1, true, true)
                         .pos("sD", 2, true, true)
                         .pos("S", 1, true, true)
                         .pos("Z", 1, true, true)
                         .edge("A", "sA", 5, 7)
                         .edge("A", "B", 1, 1)
                         .edge("B", "sB", 5, 4)
                         .edge("B", "C", 1, 1)
                         .edge("C", "sC", 1, 4)
                         .edge("C", "D", 1, 1)
                         .edge("D", "sD", 1, 2)
                         .edge("D", "E", 1, 1)
                         .edge("E", "S", 1, 1)
                         .edge("E", "Z", 3, 4)
                         .arena();
  UnfoldConfig config;
  config.bound_override = 24;  // the tree itself fits well within
  const auto report = iterated_regret_positive(tree, config);
  CHECK(report.tree.fixpoint_regret(PlayerId::p1) == ExtendedNat(0));
  CHECK(report.tree.fixpoint_regret(PlayerId::p2) == ExtendedNat(0));

  // Cross-check every rank against the oracle on the unfolding.
  const auto unf = unfold(tree, 24, config);
  const auto play =
      oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(unf.tree));
  const auto brute = oracle::iterated_bruteforce(play, 64, 200'000);
  REQUIRE(report.tree.ranks.size() == brute.ranks.size());
  for (std::size_t j = 0; j < brute.ranks.size(); ++j) {
    CHECK(report.tree.ranks[j].regret1 == brute.ranks[j].regret1);
    CHECK(report.tree.ranks[j].regret2 == brute.ranks[j].regret2);
  }
}

TEST_CASE("a player who can never win keeps infinite regret at every rank") {
  // Player 1 has no target anywhere; player 2 wins trivially.
  const Arena a = Build()
                      .pos("s", 1)
                      .pos("m", 2, false, true)
                      .pos("t", 1, false, true)
                      .edge("s", "m", 1, 1)
                      .edge("m", "t", 1, 1)
                      .edge("t", "s", 1, 1)
                      .arena();
  UnfoldConfig config;
  config.bound_override = 8;
  const auto report = iterated_regret_positive(a, config);
  for (const auto& rank : report.tree.ranks) {
    CHECK(rank.regret1 == kInf);
    CHECK(rank.regret2 == ExtendedNat(0));
  }

  const auto unf = unfold(a, 8, config);
  const auto play =
      oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(unf.tree));
  const auto brute = oracle::iterated_bruteforce(play, 64, 200'000);
  REQUIRE(report.tree.ranks.size() == brute.ranks.size());
  for (std::size_t j = 0; j < brute.ranks.size(); ++j) {
    CHECK(report.tree.ranks[j].regret1 == brute.ranks[j].regret1);
    CHECK(report.tree.ranks[j].regret2 == brute.ranks[j].regret2);
  }
}
