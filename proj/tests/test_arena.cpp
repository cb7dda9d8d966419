#include <doctest.h>

#include "rgg/arena.hpp"
#include "rgg/oracle.hpp"
#include "rgg/strategy.hpp"
#include "test_support.hpp"

using namespace rgg;
using test::Build;

namespace {

ArenaData two_node() {
  return Build()
      .pos("a", 1)
      .pos("t", 2, true, false)
      .edge("a", "t", 2, 0)
      .data;
}

}  // namespace

TEST_CASE("validate accepts a small arena") {
  CHECK(validate(two_node()).empty());
}

TEST_CASE("validate names the offending edge") {
  auto data = two_node();
  data.edges.push_back({"a", "ghost", 0, 0});
  const auto violations = validate(data);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].subject == "a->ghost");
}

TEST_CASE("validate reports a missing initial position") {
  auto data = two_node();
  data.initial = "nowhere";
  const auto violations = validate(data);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].message == "initial position missing");
}

TEST_CASE("validate rejects duplicate edges and ids") {
  auto data = two_node();
  data.edges.push_back({"a", "t", 2, 0});
  data.positions.push_back({"a", PlayerId::p2, false, false});
  CHECK(validate(data).size() == 2);
}

TEST_CASE("positions are indexed in id order") {
  const Arena a = Build()
                      .pos("zz", 1)
                      .pos("aa", 2)
                      .pos("mm", 1)
                      .start("zz")
                      .edge("zz", "aa")
                      .edge("zz", "mm")
                      .arena();
  CHECK(a.id(0) == "aa");
  CHECK(a.id(2) == "zz");
  CHECK(a.initial() == 2);
  const auto succ = a.successors(a.index_of("zz"));
  CHECK(succ[0] == a.index_of("aa"));
  CHECK(succ[1] == a.index_of("mm"));
}

TEST_CASE("utility sums weights up to the first target visit") {
  const Arena a = Build()
                      .pos("s", 1)
                      .pos("a", 2)
                      .pos("t", 1, true, false)
                      .edge("s", "a", 2, 1)
                      .edge("a", "t", 3, 1)
                      .edge("t", "s", 9, 9)
                      .arena();
  Play play;
  play.positions = {a.index_of("s"), a.index_of("a"), a.index_of("t")};
  CHECK(utility(a, play, PlayerId::p1) == ExtendedNat(5));
  CHECK(utility(a, play, PlayerId::p2) == kInf);  // no player-2 target

  // Continuing past the first visit does not change the utility.
  play.positions.push_back(a.index_of("s"));
  play.positions.push_back(a.index_of("a"));
  CHECK(utility(a, play, PlayerId::p1) == ExtendedNat(5));
}

TEST_CASE("utility of a play starting inside the target set is 0") {
  const Arena a = Build().pos("s", 1, true, true).arena();
  Play play;
  play.positions = {0};
  CHECK(utility(a, play, PlayerId::p1) == ExtendedNat(0));
}

TEST_CASE("utility rejects invalid plays") {
  const Arena a = Build().pos("s", 1).pos("u", 2).edge("s", "u").arena();
  Play bad;
  bad.positions = {a.index_of("u")};
  CHECK_THROWS_AS(utility(a, bad, PlayerId::p1), InputError);
  Play skip;
  skip.positions = {a.index_of("s"), a.index_of("s")};
  CHECK_THROWS_AS(utility(a, skip, PlayerId::p1), InputError);
}

TEST_CASE("outcome follows both strategies down a line") {
  const Arena a = Build()
                      .pos("s", 1)
                      .pos("m", 2)
                      .pos("t", 1, true, true)
                      .edge("s", "m", 1, 1)
                      .edge("m", "t", 1, 1)
                      .arena();
  const auto s1 = Strategy::smallest_successor(a, PlayerId::p1);
  const auto s2 = Strategy::smallest_successor(a, PlayerId::p2);
  const Play play = outcome(a, s1, s2);
  CHECK(play.positions ==
        std::vector<int>{a.index_of("s"), a.index_of("m"), a.index_of("t")});
  CHECK(play.kind == Play::Kind::Prefix);  // both targets visited
  CHECK(outcome(a, s1, s2).positions == play.positions);  // deterministic
}

TEST_CASE("outcome certifies a lasso when no target can be reached") {
  const Arena a = Build()
                      .pos("s", 1)
                      .pos("b", 2)
                      .pos("t", 1, true, false)
                      .edge("s", "b")
                      .edge("b", "s")
                      .edge("b", "t")
                      .arena();
  // Player 2 insists on looping back to s.
  const auto s1 = Strategy::smallest_successor(a, PlayerId::p1);
  const auto s2 = Strategy::memoryless_from(
      PlayerId::p2, {{a.index_of("b"), a.index_of("s")}});
  const Play play = outcome(a, s1, s2);
  CHECK(play.kind == Play::Kind::Lasso);
  CHECK(utility(a, play, PlayerId::p1) == kInf);
}

TEST_CASE("outcome ends at a dead end") {
  const Arena a = Build().pos("s", 1).pos("d", 2).edge("s", "d").arena();
  const auto s1 = Strategy::smallest_successor(a, PlayerId::p1);
  const auto s2 = Strategy::smallest_successor(a, PlayerId::p2);
  const Play play = outcome(a, s1, s2);
  CHECK(play.kind == Play::Kind::DeadEnd);
  CHECK(play.positions.size() == 2);
}

TEST_CASE("outcome reproduces the demo arena narrative") {
  const Arena a = test::load_fixture("best_alternative_demo.json");
  const auto s1 = Strategy::memoryless_from(
      PlayerId::p1, {{a.index_of("B"), a.index_of("C")},
                     {a.index_of("C"), a.index_of("E")}});
  const auto s2 = Strategy::memoryless_from(
      PlayerId::p2, {{a.index_of("A"), a.index_of("B")},
                     {a.index_of("D"), a.index_of("H")},
                     {a.index_of("F"), a.index_of("J")}});
  const Play play = outcome(a, s1, s2);
  std::vector<int> expected{a.index_of("A"), a.index_of("B"), a.index_of("C"),
                            a.index_of("E")};
  CHECK(play.positions == expected);
  CHECK(utility(a, play, PlayerId::p1) == ExtendedNat(3));
}

TEST_CASE("leaf view of a single edge tree keeps both weights") {
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("leaf", 2, true, true)
                         .edge("r", "leaf", 2, 7)
                         .arena();
  const auto twa = edge_tree_to_leaf_twa(tree);
  const int leaf = tree.index_of("leaf");
  CHECK(twa.is_target(leaf, PlayerId::p1));
  CHECK(twa.is_target(leaf, PlayerId::p2));
  CHECK(twa.target_weight(leaf, PlayerId::p1) == ExtendedNat(2));
  CHECK(twa.target_weight(leaf, PlayerId::p2) == ExtendedNat(7));
  CHECK_FALSE(twa.is_target(tree.index_of("r"), PlayerId::p1));
}

TEST_CASE("leaf view marks unreachable objectives as inf") {
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("leaf", 2, false, true)
                         .edge("r", "leaf", 4, 6)
                         .arena();
  const auto twa = edge_tree_to_leaf_twa(tree);
  CHECK(twa.target_weight(tree.index_of("leaf"), PlayerId::p1) == kInf);
  CHECK(twa.target_weight(tree.index_of("leaf"), PlayerId::p2) == ExtendedNat(6));
}

TEST_CASE("leaf view rejects non-trees") {
  const Arena graph = Build()
                          .pos("r", 1)
                          .pos("x", 2)
                          .pos("y", 1)
                          .edge("r", "x")
                          .edge("r", "y")
                          .edge("x", "y")
                          .arena();
  CHECK_THROWS_AS(edge_tree_to_leaf_twa(graph), InputError);
}

TEST_CASE("leaf view preserves utilities for every strategy pair") {
  // Hand-built five-leaf tree with mid-path targets for both players.
  const Arena tree = Build()
                         .pos("r", 1)
                         .pos("x", 2, true, false)
                         .pos("y", 2)
                         .pos("l1", 1, true, true)
                         .pos("l2", 1, false, true)
                         .pos("l3", 2, true, false)
                         .pos("l4", 1, true, true)
                         .pos("l5", 2, false, false)
                         .edge("r", "x", 1, 2)
                         .edge("r", "y", 0, 1)
                         .edge("x", "l1", 3, 1)
                         .edge("x", "l2", 2, 2)
                         .edge("y", "l3", 5, 0)
                         .edge("y", "l4", 1, 4)
                         .edge("y", "l5", 0, 0)
                         .arena();
  const auto twa = edge_tree_to_leaf_twa(tree);
  const auto play_tree = oracle::PlayTree::from_leaf_twa(twa);
  const auto own = oracle::enumerate_tree_strategies(play_tree, PlayerId::p1);
  const auto opp = oracle::enumerate_tree_strategies(play_tree, PlayerId::p2);
  for (const auto& l1 : own) {
    for (const auto& l2 : opp) {
      const int leaf = oracle::trace_leaf(play_tree, PlayerId::p1, l1, l2);
      Play play;  // root-to-leaf path in the source tree
      play.positions = {tree.initial()};
      // Rebuild the path by walking parents.
      std::vector<int> rev;
      for (int v = leaf; v != tree.initial();
           v = tree.predecessors(v)[0])
        rev.push_back(v);
      for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        play.positions.push_back(*it);
      for (PlayerId p : {PlayerId::p1, PlayerId::p2}) {
        CHECK(utility(tree, play, p) == twa.target_weight(leaf, p));
      }
    }
  }
}

TEST_CASE("an undefined strategy move is a contract error") {
  const Arena a = Build()
                      .pos("s", 1)
                      .pos("x", 2)
                      .edge("s", "x")
                      .edge("x", "s")
                      .arena();
  Strategy empty;  // player 1, no move entries
  empty.player = PlayerId::p1;
  const auto s2 = Strategy::smallest_successor(a, PlayerId::p2);
  CHECK_THROWS_AS(outcome(a, empty, s2), ContractError);
}
