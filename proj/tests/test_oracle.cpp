#include <doctest.h>

#include "rgg/generator.hpp"
#include "rgg/minmax.hpp"
#include "rgg/oracle.hpp"
#include "test_support.hpp"

using namespace rgg;
using test::Build;

TEST_CASE("strategy spaces have the closed-form product size") {
  // Root (P1) with three children; middle child is a P2 node with two
  // grandchildren: P1 strategies = 3 (choices at root, trimmed), P2 = 2.
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("a", 2, true, true)
                         .pos("m", 2)
                         .pos("c", 1, true, true)
                         .pos("g1", 1, true, true)
                         .pos("g2", 1, true, true)
                         .edge("r", "a", 1, 1)
                         .edge("r", "m", 0, 0)
                         .edge("r", "c", 2, 2)
                         .edge("m", "g1", 1, 1)
                         .edge("m", "g2", 3, 3)
                         .arena();
  const auto play = oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(tree));
  CHECK(oracle::count_tree_strategies(play, PlayerId::p1, nullptr, 1000) == 3);
  CHECK(oracle::count_tree_strategies(play, PlayerId::p2, nullptr, 1000) == 2);
  const auto own = oracle::enumerate_tree_strategies(play, PlayerId::p1);
  const auto opp = oracle::enumerate_tree_strategies(play, PlayerId::p2);
  CHECK(own.size() == 3);
  CHECK(opp.size() == 2);
  // Enumeration is duplicate-free.
  for (std::size_t i = 1; i < own.size(); ++i) CHECK(own[i - 1] < own[i]);
}

TEST_CASE("single-strategy spaces give regret 0 when winning") {
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("l", 2, true, true)
                         .edge("r", "l", 3, 3)
                         .arena();
  const auto play = oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(tree));
  const auto own = oracle::enumerate_tree_strategies(play, PlayerId::p1);
  const auto opp = oracle::enumerate_tree_strategies(play, PlayerId::p2);
  CHECK(oracle::regret_bruteforce(play, PlayerId::p1, own, opp) == ExtendedNat(0));
}

TEST_CASE("a two-leaf choice gives regret 0 by picking the cheaper leaf") {
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("a", 2, true, true)
                         .pos("b", 2, true, true)
                         .edge("r", "a", 5, 0)
                         .edge("r", "b", 2, 0)
                         .arena();
  const auto play = oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(tree));
  const auto own = oracle::enumerate_tree_strategies(play, PlayerId::p1);
  const auto opp = oracle::enumerate_tree_strategies(play, PlayerId::p2);
  CHECK(oracle::regret_bruteforce(play, PlayerId::p1, own, opp) == ExtendedNat(0));
}

TEST_CASE("empty own set is rejected") {
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("l", 2, true, true)
                         .edge("r", "l", 1, 1)
                         .arena();
  const auto play = oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(tree));
  const auto opp = oracle::enumerate_tree_strategies(play, PlayerId::p2);
  CHECK_THROWS_AS(oracle::regret_bruteforce(play, PlayerId::p1, {}, opp),
                  InputError);
}

TEST_CASE("the demo arena's regret is 3 by brute force") {
  const Arena a = test::load_fixture("best_alternative_demo.json");
  CHECK(oracle::graph_regret_bruteforce(a, PlayerId::p1) == ExtendedNat(3));
}

TEST_CASE("no winning strategy gives inf; forced path gives 0") {
  const Arena blocked = Build()
                            .pos("s", 1)
                            .pos("b", 2)
                            .pos("t", 1, true, false)
                            .edge("s", "b")
                            .edge("b", "s")
                            .edge("b", "t", 1, 0)
                            .arena();
  CHECK_FALSE(oracle::has_winning_strategy(blocked, PlayerId::p1));
  CHECK(oracle::graph_regret_bruteforce(blocked, PlayerId::p1) == kInf);

  const Arena forced = Build()
                           .pos("s", 1)
                           .pos("t", 2, true, false)
                           .edge("s", "t", 2, 0)
                           .arena();
  CHECK(oracle::graph_regret_bruteforce(forced, PlayerId::p1) ==
        ExtendedNat(0));
}

TEST_CASE("winning detection agrees with the attractor probe") {
  SplitMix64 rng(2718);
  for (int round = 0; round < 60; ++round) {
    gen::TwaOptions opt;
    opt.positions = 3 + rng.below(5);
    opt.cycles_through_targets = false;
    const Arena a = Arena::from_data(gen::random_twa(rng, opt));
    const auto twa = TargetWeightedArena::from_edge_weights(a);
    const bool probe =
        twa.is_target(a.initial(), PlayerId::p1) ||
        can_achieve(twa, PlayerId::p1, twa.max_target_weight(PlayerId::p1));
    CHECK(oracle::has_winning_strategy(a, PlayerId::p1) == probe);
  }
}

TEST_CASE("depth-1 trees reach the iterated fixpoint at rank 1") {
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("a", 2, true, true)
                         .pos("b", 2, true, true)
                         .edge("r", "a", 1, 1)
                         .edge("r", "b", 1, 1)
                         .arena();
  const auto play = oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(tree));
  const auto brute = oracle::iterated_bruteforce(play);
  CHECK(brute.fixpoint_rank == 1);
}

TEST_CASE("centipede fixture by brute force") {
  const Arena tree = test::load_fixture("centipede.json");
  const auto play = oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(tree));
  const auto brute = oracle::iterated_bruteforce(play);
  REQUIRE(brute.ranks.size() == 2);
  CHECK(brute.ranks[0].regret1 == ExtendedNat(1));
  CHECK(brute.ranks[0].regret2 == ExtendedNat(1));
  CHECK(brute.ranks[1].regret1 == ExtendedNat(0));
  CHECK(brute.ranks[1].regret2 == ExtendedNat(0));
  // Unique surviving pair; its outcome pays (1, 3).
  REQUIRE(brute.survivors(PlayerId::p1, 2).size() == 1);
  REQUIRE(brute.survivors(PlayerId::p2, 2).size() == 1);
  const auto& s1 = brute.space1[brute.survivors(PlayerId::p1, 2)[0]];
  const auto& s2 = brute.space2[brute.survivors(PlayerId::p2, 2)[0]];
  const int leaf = oracle::trace_leaf(play, PlayerId::p1, s1, s2);
  CHECK(play.leaf_utility(leaf, PlayerId::p1) == ExtendedNat(1));
  CHECK(play.leaf_utility(leaf, PlayerId::p2) == ExtendedNat(3));
}

TEST_CASE("resource guards trip on oversized spaces") {
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("a", 2, true, true)
                         .pos("b", 2, true, true)
                         .pos("c", 2, true, true)
                         .edge("r", "a", 1, 1)
                         .edge("r", "b", 1, 1)
                         .edge("r", "c", 1, 1)
                         .arena();
  const auto play = oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(tree));
  CHECK_THROWS_AS(oracle::enumerate_tree_strategies(play, PlayerId::p1, nullptr, 1),
                  ResourceError);
  CHECK(oracle::count_tree_strategies(play, PlayerId::p1, nullptr, 1) == 2);
}
