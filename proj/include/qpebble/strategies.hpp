#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpebble/dag.hpp"
#include "qpebble/trace.hpp"

namespace qpebble {

// Strategies are generators: they emit one round of additions/deletions at a
// time into a sink. Sinks materialize traces, accumulate costs, or stream to
// disk, so large schedules never need to live in memory.
struct RoundSink {
  virtual ~RoundSink() = default;
  virtual void round(std::span<const Node> adds, std::span<const Node> dels) = 0;
};

// Builds a PebbleTrace from emitted rounds.
class TraceBuilder : public RoundSink {
 public:
  explicit TraceBuilder(Node n);
  void round(std::span<const Node> adds, std::span<const Node> dels) override;
  PebbleTrace take(NodeSet target);

 private:
  Node n_;
  NodeSet cur_;
  std::vector<NodeSet> configs_;
};

// Streams costs without storing configurations.
class CostSink : public RoundSink {
 public:
  void round(std::span<const Node> adds, std::span<const Node> dels) override {
    size_ += adds.size();
    size_ -= dels.size();
    acc_.step(static_cast<uint32_t>(size_));
  }
  CostReport report() const { return acc_.report(); }

 private:
  int64_t size_ = 0;
  CostAccumulator acc_;
};

// Pebble 1..n in order, then delete non-sinks top-down. Works on any DAG;
// time = 2n - #sinks, space = n.
void gen_naive(const Dag& g, RoundSink& sink);

// Line strategy with chunk size k: forward sweep keeping one pebble per chunk
// endpoint, finished chunk interiors deleted top-down while the next chunk
// fills, then a mirrored cleanup. When k does not divide n the FIRST chunk is
// the short one; that alignment lets every interior deletion finish in time,
// so time = 2n - 1 and space <= k + ceil(n/k) for all 1 <= k <= n.
void gen_chunked_line(Node n, Node k, RoundSink& sink);

// Recursion plan for the line cleaner: chunk_sizes[0] is the top split, the
// last entry the leaf chunk size. Product must reach n; every size >= 2.
struct RecursionPlan {
  std::vector<Node> chunk_sizes;

  static RecursionPlan uniform(Node n, uint32_t levels);  // levels copies of ceil(n^(1/levels))
  static RecursionPlan power(Node k, uint32_t c);         // c copies of k
  void validate(Node n) const;
};

// Recursive line cleaner. Plans of length 1 and 2 run the overlapped chunked
// sweep (chunk size = last entry); longer plans cut the line into segments of
// size prod(tail), clean them left to right, and unwind all but the last by a
// mirrored replay. For plan [k] * c on n = k^c: time <= 2^(c-1) k^c,
// space <= c * k.
void gen_recursive_line(Node n, const RecursionPlan& plan, RoundSink& sink);

// Level-parameterized line strategy used by the cost sweeps. Level 0 is the
// naive sweep. Level l >= 1 cuts recursively with arity q = ceil(n^(1/l)) down
// to single-node leaves, and every segment (leaves included) is unwound by a
// full, non-deduplicated mirror of its own history. Time is exactly
// 2^(l+1) * n; space grows like l * n^(1/l). Costlier in time than the plan
// recursion above, cheaper in space at the same depth.
void gen_leveled_line(Node n, uint32_t level, RoundSink& sink);

// Convenience wrappers materializing full traces (target = sinks).
PebbleTrace naive_strategy(const Dag& g);
PebbleTrace chunked_line_strategy(Node n, Node k);
PebbleTrace recursive_line_strategy(Node n, const RecursionPlan& plan);
PebbleTrace leveled_line_strategy(Node n, uint32_t level);

CostReport chunked_line_cost(Node n, Node k);
CostReport recursive_line_cost(Node n, const RecursionPlan& plan);
CostReport leveled_line_cost(Node n, uint32_t level);

// Pebbles a graph that is (|s|, d)-depth-reducible in time exactly 2n using
// space <= |s| + window overhead. Requires unique sink n, indegree <= 2, and
// depth(g - s) <= d (error carries a witness path otherwise). Round v pebbles
// s up to v plus a radius-d dependency window around v; rounds past n mirror
// the climb with the sink held.
PebbleTrace ed_strategy(const Dag& g, std::span<const Node> s, uint32_t d);

// Largest i with v in P_i. Error if v never appears.
size_t last_delete(const PebbleTrace& p, Node v);
// Largest i whose transition adds p.n (the sink of the abstract line).
// Error if the trace never pebbles it.
size_t last_add(const PebbleTrace& p);

// Block translation: expands a legal trace p_prime for the line on
// ceil(n/b) nodes into a trace for g, replacing each abstract pebble by a
// block of b consecutive nodes (last block ragged). Skip nodes, the nodes
// feeding blocks at distance >= 2 ahead, are retained until their block's
// final deletion. time = t' * b + (ragged size) - 1,
// space <= b * space' + num_skip.
PebbleTrace trans(const Dag& g, const PebbleTrace& p_prime, Node b);

// End-to-end attack for sampled graphs: b = ceil(n / log2(n)^2), the inner
// line on ceil(n/b) nodes pebbled by the best-st recursion plan of depth
// 1..3, then block translation.
struct DrsampleAttack {
  Node b = 0;
  uint64_t num_skip = 0;
  PebbleTrace p_prime;  // inner line trace
  PebbleTrace trace;    // translated trace on g
};
DrsampleAttack drsample_attack(const Dag& g);

}  // namespace qpebble
