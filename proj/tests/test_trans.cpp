#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "oracle_ref.hpp"
#include "qpebble/strategies.hpp"
#include "qpebble/verify.hpp"

using namespace qpebble;

namespace {

const LegalityRegime kQP{Model::quantum, Schedule::parallel, false};

NodeSet set(Node n, std::vector<Node> ids) { return NodeSet::from_sorted(n, ids); }

PebbleTrace make(Node n, std::vector<std::vector<Node>> cfgs, std::vector<Node> target) {
  std::vector<NodeSet> sets;
  for (auto& c : cfgs) sets.push_back(NodeSet::from_sorted(n, c));
  return PebbleTrace::create(n, std::move(sets), NodeSet::from_sorted(n, target));
}

}  // namespace

TEST_CASE("inner fixture: chunked 6-line, chunk 3") {
  PebbleTrace p = chunked_line_strategy(6, 3);
  std::vector<std::vector<Node>> want = {
      {},        {1},          {1, 2},        {1, 2, 3}, {1, 3, 4}, {3, 4, 5},
      {3, 4, 5, 6}, {1, 3, 4, 6}, {1, 2, 3, 6}, {1, 2, 6}, {1, 6},    {6},
  };
  REQUIRE(p.configs.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) CHECK(p.configs[i] == set(6, want[i]));
  CHECK(p.time() == 11);
}

TEST_CASE("scheduling anchors on the inner fixture") {
  PebbleTrace p = chunked_line_strategy(6, 3);
  CHECK(last_add(p) == 6);
  CHECK(last_delete(p, 5) == 6);
  CHECK(last_delete(p, 4) == 7);
  CHECK(last_delete(p, 3) == 8);
  CHECK(last_delete(p, 2) == 9);
  CHECK(last_delete(p, 1) == 10);
  CHECK(last_delete(p, 6) == 11);

  PebbleTrace tiny = make(2, {{}, {1}}, {1});
  CHECK_THROWS_AS(last_delete(tiny, 2), std::invalid_argument);
  CHECK_THROWS_AS(last_add(tiny), std::invalid_argument);
}

TEST_CASE("block translation of the fixed 18-node example") {
  Dag g = fixed_example_trans();
  PebbleTrace p = chunked_line_strategy(6, 3);
  PebbleTrace t = trans(g, p, 3);
  CHECK(t.configs.size() == 36);  // P_0 plus rounds P_1..P_35
  CHECK(t.time() == 35);
  CHECK(t.time() <= 3 * (p.time() + 1));
  CHECK(verify(t, g, kQP).ok());
  CHECK(t.last() == set(18, {18}));

  CostReport outer = cost(t);
  CostReport inner = cost(p);
  uint64_t num_skip = block_plan(g, 3).num_skip;
  CHECK(outer.space_time <= 2 * 9 * inner.space_time + 2 * 3 * inner.time * num_skip);
}

TEST_CASE("degenerate block sizes") {
  Dag g = fixed_example_trans();

  // one block: the whole graph is placed then stripped to the sink
  std::vector<NodeSet> one;
  one.emplace_back(1);
  one.push_back(NodeSet::of(1, {1}));
  PebbleTrace p1 = PebbleTrace::create(1, std::move(one), NodeSet::of(1, {1}));
  PebbleTrace whole = trans(g, p1, 18);
  CHECK(whole.time() == 35);  // 18 adds, 17 strip rounds
  CHECK(verify(whole, g, kQP).ok());

  // unit blocks: translation keeps the inner schedule's round count
  PebbleTrace p18 = chunked_line_strategy(18, 4);
  PebbleTrace unit = trans(g, p18, 1);
  CHECK(unit.time() == p18.time());
  CHECK(verify(unit, g, kQP).ok());
  CHECK(unit.last() == set(18, {18}));
}

TEST_CASE("skip nodes survive a non-final block deletion") {
  // path on 9 nodes plus (2,9): node 2 must outlive block 1's first deletion
  std::vector<std::pair<Node, Node>> edges;
  for (Node v = 2; v <= 9; ++v) edges.push_back({static_cast<Node>(v - 1), v});
  edges.push_back({2, 9});
  Dag g = Dag::from_edges(9, edges);
  BlockPlan plan = block_plan(g, 3);
  CHECK(plan.num_skip == 1);
  CHECK(plan.skips[0] == std::vector<Node>{2});

  // inner schedule deletes abstract node 1, then rebuilds it
  PebbleTrace p = make(3, {{}, {1}, {1, 2}, {2}, {1, 2}, {1, 2, 3}, {1, 3}, {3}}, {3});
  REQUIRE(verify(p, line_graph(3), kQP).ok());

  PebbleTrace t = trans(g, p, 3);
  CHECK(t.time() == 7 * 3 + 3 - 1);
  CHECK(verify(t, g, kQP).ok());
  CHECK(t.last() == set(9, {9}));
  // after round j=3's three sub-steps block 1 is gone except its skip node
  CHECK(t.configs[9] == set(9, {2, 4, 5, 6}));
}

TEST_CASE("translation rejects mismatched inputs") {
  Dag g = fixed_example_trans();
  PebbleTrace p = chunked_line_strategy(6, 3);
  CHECK_THROWS_AS(trans(g, p, 0), std::invalid_argument);
  CHECK_THROWS_AS(trans(g, p, 4), std::invalid_argument);  // needs a 5-node inner line

  PebbleTrace wrong_target = chunked_line_strategy(6, 3);
  wrong_target.target = NodeSet::of(6, {5});
  CHECK_THROWS_AS(trans(g, wrong_target, 3), std::invalid_argument);

  PebbleTrace illegal = make(6, {{}, {2}, {1, 2}, {1, 2, 3}, {1, 2, 3, 4}, {1, 2, 3, 4, 5},
                                 {1, 2, 3, 4, 5, 6}, {6}},
                             {6});
  CHECK_THROWS_AS(trans(g, illegal, 3), std::invalid_argument);
}

TEST_CASE("translation cost bound holds on sampled instances") {
  for (auto [n, seed] : std::vector<std::pair<Node, uint64_t>>{{96, 4}, {200, 9}, {333, 1}}) {
    Dag g = sample_drsample(n, seed);
    for (Node b : {2u, 5u, 16u}) {
      Node c = (n + b - 1) / b;
      PebbleTrace inner = chunked_line_strategy(c, 3 <= c ? 3 : c);
      PebbleTrace t = trans(g, inner, b);
      CHECK(t.time() == inner.time() * b + (n - (c - 1) * b) - 1);
      CHECK(verify(t, g, kQP).ok());
      CostReport outer = cost(t);
      CostReport in = cost(inner);
      uint64_t num_skip = block_plan(g, b).num_skip;
      uint64_t bound = 2 * static_cast<uint64_t>(b) * b * in.space_time +
                       2 * static_cast<uint64_t>(b) * in.time * num_skip;
      CHECK(outer.space_time <= bound);
    }
  }
}
