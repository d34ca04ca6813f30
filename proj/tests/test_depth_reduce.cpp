#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <vector>

#include "doctest.h"
#include "oracle_ref.hpp"
#include "qpebble/depth_reduce.hpp"
#include "qpebble/strategies.hpp"
#include "qpebble/verify.hpp"

using namespace qpebble;

namespace {

// Straight re-derivation of the layered rule for cross-checking.
std::vector<Node> layered_by_hand(const Dag& g, uint32_t lambda, uint32_t d_prime) {
  Node n = g.size();
  Node layer = (n + lambda - 1) / lambda;
  std::set<Node> s;
  for (Node v = 1; v <= n; ++v) {
    Node lo = ((v - 1) / layer) * layer + 1;
    for (Node u : g.parents(v)) {
      if (u != v - 1 && u >= lo) {
        s.insert(v);
        break;
      }
    }
    if ((v - lo + 1) % d_prime == 0) s.insert(v);
  }
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("layered reduction on a line keeps only the spaced deletions") {
  Dag g = line_graph(100);
  DepthReducingSet s = reduce_layered(g, 4, 5);
  CHECK(s.e == 20);
  CHECK(s.lambda == 4);
  CHECK(s.d_prime == 5);
  CHECK(s.d == 20);
  CHECK(s.verified);
  std::vector<Node> want;
  for (Node v = 5; v <= 100; v += 5) want.push_back(v);
  CHECK(s.nodes == want);
  NodeSet rem = NodeSet::from_sorted(100, s.nodes);
  CHECK(ref::depth(g, rem) == 4);
  CHECK(depth(g, rem) == 4);
}

TEST_CASE("in-layer back-edge parents force removal, cross-layer ones do not") {
  Dag g = Dag::from_edges(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9},
                               {9, 10}, {2, 4}, {2, 7}});
  // one layer: both (2,4) and (2,7) are in-layer
  DepthReducingSet one = reduce_layered(g, 1, 10);
  CHECK(one.nodes == std::vector<Node>{4, 7, 10});
  // two layers of five: (2,4) stays in-layer, (2,7) crosses
  DepthReducingSet two = reduce_layered(g, 2, 5);
  CHECK(two.nodes == std::vector<Node>{4, 5, 10});
  CHECK(two.d == 10);
  CHECK(two.verified);
}

TEST_CASE("layered reduction matches the by-hand rule on sampled graphs") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    Dag g = sample_argon2i_a(200, seed);
    for (auto [lambda, dp] : {std::pair<uint32_t, uint32_t>{3, 3}, {4, 2}, {1, 5}, {7, 1}}) {
      DepthReducingSet s = reduce_layered(g, lambda, dp);
      CHECK(s.nodes == layered_by_hand(g, lambda, dp));
      CHECK(s.e == s.nodes.size());
      CHECK(s.d == lambda * dp);
      CHECK(s.verified);
      CHECK(ref::depth(g, NodeSet::from_sorted(200, s.nodes)) <= s.d);
    }
  }
}

TEST_CASE("layered reduction feeds the window strategy") {
  Dag g = sample_argon2i_b(256, 11);
  LayerParams p = corollary_params(Family::argon2i_a, 256);
  DepthReducingSet s = reduce_layered(g, p.lambda, p.d_prime);
  CHECK(s.verified);
  PebbleTrace t = ed_strategy(g, s.nodes, s.d);
  CHECK(t.time() == 512);
  CHECK(verify(t, g, {Model::quantum, Schedule::parallel, false}).ok());
}

TEST_CASE("layered reduction input rules") {
  Dag wide = Dag::from_edges(4, {{1, 4}, {2, 4}, {3, 4}, {1, 2}, {2, 3}});
  CHECK_THROWS_AS(reduce_layered(wide, 1, 1), std::invalid_argument);
  Dag g = line_graph(10);
  CHECK_THROWS_AS(reduce_layered(g, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_layered(g, 11, 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_layered(g, 2, 0), std::invalid_argument);
}

TEST_CASE("tuned parameters, frozen values") {
  auto a16 = corollary_params(Family::argon2i_a, 1u << 16);
  CHECK(a16.lambda == 4);
  CHECK(a16.d_prime == 3);
  auto b16 = corollary_params(Family::argon2i_b, 1u << 16);
  CHECK(b16.lambda == 7);
  CHECK(b16.d_prime == 2);
  auto a14 = corollary_params(Family::argon2i_a, 1u << 14);
  CHECK(a14.lambda == 4);
  CHECK(a14.d_prime == 3);
  auto b14 = corollary_params(Family::argon2i_b, 1u << 14);
  CHECK(b14.lambda == 6);
  CHECK(b14.d_prime == 2);
  auto a = corollary_params(Family::argon2i_a, 16);
  CHECK(a.lambda == 2);
  CHECK(a.d_prime == 3);
  auto b = corollary_params(Family::argon2i_b, 16);
  CHECK(b.lambda == 3);
  CHECK(b.d_prime == 1);
  CHECK_THROWS_AS(corollary_params(Family::line, 64), std::invalid_argument);
  CHECK_THROWS_AS(corollary_params(Family::argon2i_a, 8), std::invalid_argument);
}

TEST_CASE("reducibility checker returns honest witnesses") {
  Dag g = line_graph(5);
  CHECK(!verify_reducible(g, NodeSet::of(5, {3}), 2).has_value());
  auto w = verify_reducible(g, NodeSet::of(5, {3}), 1);
  REQUIRE(w.has_value());
  CHECK(w->size() > 1);
  NodeSet s = NodeSet::of(5, {3});
  for (size_t i = 0; i < w->size(); ++i) {
    CHECK(!s.contains((*w)[i]));
    if (i > 0) {
      bool edge = false;
      for (Node p : g.parents((*w)[i])) edge |= p == (*w)[i - 1];
      CHECK(edge);
    }
  }

  Dag e = fixed_example_ed();
  CHECK(!verify_reducible(e, NodeSet::of(16, {1, 5, 9, 13}), 3).has_value());
  auto w2 = verify_reducible(e, NodeSet::of(16, {1, 5, 9, 13}), 2);
  REQUIRE(w2.has_value());
  CHECK(w2->size() == 3);
}
