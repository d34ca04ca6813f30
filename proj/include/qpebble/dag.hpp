#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpebble/nodeset.hpp"
#include "qpebble/rng.hpp"

namespace qpebble {

// Immutable DAG on nodes 1..n. Every edge (u, v) has u < v, so the identity
// order is topological and node n is the last node. Safe for concurrent
// reads once constructed.
class Dag {
 public:
  // Validates: 1 <= u < v <= n, no duplicate edges. Edges may arrive in any
  // order; they are stored sorted by (u, v).
  static Dag from_edges(Node n, std::vector<std::pair<Node, Node>> edges);

  Node size() const { return n_; }
  size_t edge_count() const { return edges_.size(); }
  std::span<const std::pair<Node, Node>> edges() const { return edges_; }

  std::span<const Node> parents(Node v) const {
    return {parent_data_.data() + parent_off_[v], parent_off_[v + 1] - parent_off_[v]};
  }
  std::span<const Node> children(Node v) const {
    return {child_data_.data() + child_off_[v], child_off_[v + 1] - child_off_[v]};
  }

  Node max_indegree() const;
  std::vector<Node> sinks() const;  // ascending

 private:
  Dag() = default;
  Node n_ = 0;
  std::vector<std::pair<Node, Node>> edges_;
  std::vector<Node> parent_data_, child_data_;
  std::vector<uint32_t> parent_off_, child_off_;  // CSR offsets, indexed by node id
};

enum class Family {
  line,
  argon2i_a,
  argon2i_b,
  drsample,
  fixed_example_ed,
  fixed_example_trans,
};
const char* to_string(Family f);
bool family_from_string(const std::string& s, Family& out);

// Path 1 -> 2 -> ... -> n.
Dag line_graph(Node n);

// Path plus one uniform back-edge (r(i), i) per node i >= 3, r(i) ~ U[1, i-2].
Dag sample_argon2i_a(Node n, uint64_t seed);

// Path plus one sqrt-skewed back-edge per node i >= 3:
// Pr[r(i) = j] = sqrt(1 - (j-1)/i) - sqrt(1 - j/i), clamped to [1, max(1, i-2)].
Dag sample_argon2i_b(Node n, uint64_t seed);

// Path plus one bucketed back-edge per node i >= 3: bucket t ~ U{1..floor(log2(i-1))},
// parent ~ U[max(1, i - 2^t), i - 2^(t-1) - 1].
Dag sample_drsample(Node n, uint64_t seed);

// 16-node graph: path, fan-outs 1->{3..6}, 5->{7..10}, 9->{11..14}, plus
// (13,15) and (13,16). Unique sink 16, indegree <= 2; removing {1,5,9,13}
// leaves depth 3.
Dag fixed_example_ed();

// Fixed 18-node DRSample instance (pinned seed), unique sink 18.
Dag fixed_example_trans();

// Single-edge samplers behind the families above, exposed for
// distribution tests and tooling. All require i >= 3.
Node argon2i_a_parent(Node i, Rng& rng);
Node argon2i_b_parent(Node i, Rng& rng);
Node drsample_parent(Node i, Rng& rng);
double argon2i_b_pmf(Node i, Node j);  // pre-clamp edge mass Pr[r(i) = j]

// Sample a graph of the given family. `seed` is ignored for deterministic
// families. fixed_example_* ignore n (sizes 16 and 18).
Dag make_graph(Family f, Node n, uint64_t seed);

// Longest path ending at w in g minus `removed`, counted in nodes
// (result[w] == 1 when w survives). result[v] == 0 means v is removed or has
// no surviving path to w. w itself is never treated as removed.
// Indexed by node id; slot 0 unused.
std::vector<uint32_t> longest_path_to(const Dag& g, Node w, const NodeSet& removed);

// Nodes on the longest directed path of g minus `removed`; 0 iff all removed.
uint32_t depth(const Dag& g, const NodeSet& removed);
uint32_t depth(const Dag& g);

// Partition of [1, n] into blocks of b consecutive nodes (last block ragged).
// skips[i] lists the nodes of block i+1 with an edge into block i+3 or later
// (block indices 1-based): exactly the nodes a block-respecting schedule must
// retain after its block would otherwise be dropped.
struct BlockPlan {
  Node n = 0;
  Node block_size = 0;   // b
  Node block_count = 0;  // ceil(n / b)
  std::vector<std::vector<Node>> skips;
  uint64_t num_skip = 0;

  Node block_of(Node v) const { return (v - 1) / block_size + 1; }
  Node block_first(Node i) const { return (i - 1) * block_size + 1; }
  Node block_last(Node i) const {
    Node e = i * block_size;
    return e < n ? e : n;
  }
};
BlockPlan block_plan(const Dag& g, Node b);

}  // namespace qpebble
