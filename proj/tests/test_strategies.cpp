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

void check_line_trace(const PebbleTrace& t, Node n) {
  CHECK(verify(t, line_graph(n), kQP).ok());
  CHECK(t.last() == set(n, {n}));
}

}  // namespace

TEST_CASE("chunked sweep on the 9-line, chunk 3: exact schedule") {
  PebbleTrace t = chunked_line_strategy(9, 3);
  std::vector<std::vector<Node>> want = {
      {},
      {1},
      {1, 2},
      {1, 2, 3},
      {1, 3, 4},
      {3, 4, 5},
      {3, 4, 5, 6},
      {3, 4, 6, 7},
      {3, 6, 7, 8},
      {3, 6, 7, 8, 9},
      {3, 4, 6, 7, 9},
      {3, 4, 5, 6, 9},
      {3, 4, 5, 9},
      {1, 3, 4, 9},
      {1, 2, 3, 9},
      {1, 2, 9},
      {1, 9},
      {9},
  };
  REQUIRE(t.configs.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) CHECK(t.configs[i] == set(9, want[i]));

  CostReport r = cost(t);
  CHECK(r.time == 17);
  CHECK(r.space == 5);
  CHECK(r.space_time == 85);
  CHECK(verify(t, line_graph(9), kQP).ok());
}

TEST_CASE("chunked sweep: bounds and legality across all chunk sizes") {
  for (Node n = 1; n <= 32; ++n) {
    for (Node k = 1; k <= n; ++k) {
      PebbleTrace t = chunked_line_strategy(n, k);
      CHECK(t.time() == 2 * static_cast<size_t>(n) - 1);
      CHECK(cost(t).space <= k + (n + k - 1) / k);
      check_line_trace(t, n);
    }
  }
  CostReport big = chunked_line_cost(256, 16);
  CHECK(big.time == 511);
  CHECK(big.space <= 32);
  CHECK(big.space == cost(chunked_line_strategy(256, 16)).space);
  CHECK_THROWS_AS(chunked_line_strategy(5, 6), std::invalid_argument);
  CHECK_THROWS_AS(chunked_line_strategy(5, 0), std::invalid_argument);
}

TEST_CASE("naive sweep works on any graph") {
  PebbleTrace t = naive_strategy(line_graph(5));
  CHECK(t.time() == 9);
  CHECK(cost(t).space == 5);
  check_line_trace(t, 5);

  Dag g = fixed_example_ed();
  PebbleTrace e = naive_strategy(g);
  CHECK(e.time() == 31);
  CHECK(cost(e).space == 16);
  CHECK(verify(e, g, kQP).ok());
  CHECK(e.last() == set(16, {16}));

  Dag fork = Dag::from_edges(3, {{1, 2}, {1, 3}});
  PebbleTrace f = naive_strategy(fork);
  CHECK(f.time() == 4);  // 2n minus one round per sink
  CHECK(f.last() == set(3, {2, 3}));
  CHECK(verify(f, fork, kQP).ok());
}

TEST_CASE("recursion plans validate") {
  CHECK_THROWS_AS(RecursionPlan{}.validate(4), std::invalid_argument);
  CHECK_THROWS_AS((RecursionPlan{{2, 1}}.validate(2)), std::invalid_argument);
  CHECK_THROWS_AS((RecursionPlan{{2, 2}}.validate(5)), std::invalid_argument);
  RecursionPlan{{3, 2}}.validate(6);
  RecursionPlan{{3, 2}}.validate(5);  // product may overshoot

  CHECK(RecursionPlan::power(3, 2).chunk_sizes == std::vector<Node>{3, 3});
  CHECK(RecursionPlan::uniform(8, 3).chunk_sizes == std::vector<Node>{2, 2, 2});
  CHECK(RecursionPlan::uniform(100, 2).chunk_sizes == std::vector<Node>{10, 10});
  CHECK(RecursionPlan::uniform(37, 3).chunk_sizes == std::vector<Node>{4, 4, 4});
}

TEST_CASE("recursive cleaner meets its time and space bounds") {
  for (Node k = 2; k <= 5; ++k) {
    for (uint32_t c = 2; c <= 3; ++c) {
      Node n = 1;
      for (uint32_t i = 0; i < c; ++i) n *= k;
      PebbleTrace t = recursive_line_strategy(n, RecursionPlan::power(k, c));
      CostReport r = cost(t);
      CHECK(r.time <= (uint64_t{1} << (c - 1)) * n);
      CHECK(r.space <= static_cast<uint64_t>(c) * k);
      check_line_trace(t, n);
    }
  }
}

TEST_CASE("recursive cleaner handles ragged lengths") {
  for (auto [n, plan] : std::vector<std::pair<Node, RecursionPlan>>{
           {10, RecursionPlan{{4, 3}}},
           {10, RecursionPlan::uniform(10, 3)},
           {1, RecursionPlan{{2}}},
           {7, RecursionPlan{{7}}},
           {29, RecursionPlan{{2, 4, 4}}},
       }) {
    PebbleTrace t = recursive_line_strategy(n, plan);
    check_line_trace(t, n);
    CostReport streamed = recursive_line_cost(n, plan);
    CostReport direct = cost(t);
    CHECK(streamed.time == direct.time);
    CHECK(streamed.space == direct.space);
    CHECK(streamed.cumulative == direct.cumulative);
  }
}

TEST_CASE("leveled strategy: level 0 is the naive sweep") {
  for (Node n : {1u, 2u, 7u, 20u}) {
    PebbleTrace a = leveled_line_strategy(n, 0);
    PebbleTrace b = naive_strategy(line_graph(n));
    CHECK(a.configs == b.configs);
  }
}

TEST_CASE("leveled strategy: exact time, legality, space growth") {
  for (Node n : {4u, 16u, 37u, 64u}) {
    for (uint32_t level = 1; level <= 4; ++level) {
      PebbleTrace t = leveled_line_strategy(n, level);
      CHECK(t.time() == (uint64_t{1} << (level + 1)) * n);
      check_line_trace(t, n);

      Node q = 1;
      while (true) {
        uint64_t p = 1;
        for (uint32_t i = 0; i < level && p < n; ++i) p *= q;
        if (p >= n) break;
        ++q;
      }
      CHECK(cost(t).space <= static_cast<uint64_t>(level) * (q - 1) + 2);

      CostReport streamed = leveled_line_cost(n, level);
      CostReport direct = cost(t);
      CHECK(streamed.time == direct.time);
      CHECK(streamed.space == direct.space);
      CHECK(streamed.cumulative == direct.cumulative);
    }
  }
}

TEST_CASE("window strategy on the fixed example") {
  Dag g = fixed_example_ed();
  std::vector<Node> s{1, 5, 9, 13};
  PebbleTrace t = ed_strategy(g, s, 3);
  CostReport r = cost(t);
  CHECK(r.time == 32);
  CHECK(r.space == 9);
  CHECK(r.space_time == 288);
  CHECK(t.configs[8] == set(16, {1, 2, 5, 6, 7, 8}));
  CHECK(verify(t, g, kQP).ok());
  CHECK(t.last() == set(16, {16}));
  for (size_t j = 1; j <= 16; ++j) {
    NodeSet want = t.configs[16 - j];
    want.add(16);
    CHECK(t.configs[16 + j] == want);
  }
}

TEST_CASE("window strategy on lines and random reducible graphs") {
  PebbleTrace t = ed_strategy(line_graph(8), std::vector<Node>{}, 8);
  CHECK(t.time() == 16);
  check_line_trace(t, 8);

  PebbleTrace u = ed_strategy(line_graph(8), std::vector<Node>{4}, 4);
  CHECK(u.time() == 16);
  check_line_trace(u, 8);

  for (uint64_t seed = 0; seed < 10; ++seed) {
    Dag g = ref::random_path_dag(24, seed);
    // every third node cut: in-layer runs of two plus one crossing
    std::vector<Node> s;
    for (Node v = 3; v <= 24; v += 3) s.push_back(v);
    NodeSet rem = NodeSet::from_sorted(24, s);
    uint32_t d = ref::depth(g, rem);
    if (d > 0) {
      PebbleTrace w = ed_strategy(g, s, d);
      CHECK(w.time() == 48);
      CHECK(verify(w, g, kQP).ok());
      CHECK(w.last() == set(24, {24}));
    }
  }
}

TEST_CASE("window strategy rejects bad inputs") {
  Dag fork = Dag::from_edges(3, {{1, 2}, {1, 3}});
  CHECK_THROWS_AS(ed_strategy(fork, std::vector<Node>{}, 3), std::invalid_argument);

  Dag wide = Dag::from_edges(5, {{1, 5}, {2, 5}, {3, 5}, {4, 5}, {1, 2}, {2, 3}, {3, 4}});
  CHECK_THROWS_AS(ed_strategy(wide, std::vector<Node>{}, 5), std::invalid_argument);

  try {
    ed_strategy(line_graph(6), std::vector<Node>{3}, 2);  // 4,5,6 is a 3-path
    FAIL_CHECK("expected a depth-bound error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("witness") != std::string::npos);
  }
}

TEST_CASE("block-translation attack end to end") {
  for (auto [n, seed] : std::vector<std::pair<Node, uint64_t>>{{64, 1}, {200, 2}, {512, 3}}) {
    Dag g = sample_drsample(n, seed);
    DrsampleAttack atk = drsample_attack(g);
    double lg = std::log2(static_cast<double>(n));
    CHECK(atk.b == static_cast<Node>(std::ceil(n / (lg * lg))));
    CHECK(atk.num_skip == block_plan(g, atk.b).num_skip);
    CHECK(verify(atk.trace, g, kQP).ok());
    CHECK(atk.trace.last() == set(n, {n}));

    CostReport outer = cost(atk.trace);
    CostReport inner = cost(atk.p_prime);
    uint64_t bound = 2 * static_cast<uint64_t>(atk.b) * atk.b * inner.space_time +
                     2 * static_cast<uint64_t>(atk.b) * inner.time * atk.num_skip;
    CHECK(outer.space_time <= bound);
  }
}
