#include "qpebble/dag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpebble {

Dag Dag::from_edges(Node n, std::vector<std::pair<Node, Node>> edges) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  for (auto [u, v] : edges) {
    if (u < 1 || v > n) throw std::invalid_argument("edge endpoint out of range");
    if (u >= v) throw std::invalid_argument("edge not forward (u < v required)");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");

  Dag g;
  g.n_ = n;
  g.edges_ = std::move(edges);

  std::vector<uint32_t> pdeg(n + 2, 0), cdeg(n + 2, 0);
  for (auto [u, v] : g.edges_) {
    ++pdeg[v];
    ++cdeg[u];
  }
  g.parent_off_.assign(n + 2, 0);
  g.child_off_.assign(n + 2, 0);
  for (Node v = 1; v <= n; ++v) {
    g.parent_off_[v + 1] = g.parent_off_[v] + pdeg[v];
    g.child_off_[v + 1] = g.child_off_[v] + cdeg[v];
  }
  g.parent_data_.resize(g.edges_.size());
  g.child_data_.resize(g.edges_.size());
  std::vector<uint32_t> pfill(n + 2, 0), cfill(n + 2, 0);
  for (auto [u, v] : g.edges_) {
    g.parent_data_[g.parent_off_[v] + pfill[v]++] = u;
    g.child_data_[g.child_off_[u] + cfill[u]++] = v;
  }
  // edges_ sorted by (u, v) makes children ascending; parents need a sort.
  for (Node v = 1; v <= n; ++v) {
    auto p = g.parent_data_.begin();
    std::sort(p + g.parent_off_[v], p + g.parent_off_[v + 1]);
  }
  return g;
}

Node Dag::max_indegree() const {
  Node m = 0;
  for (Node v = 1; v <= n_; ++v)
    m = std::max<Node>(m, static_cast<Node>(parents(v).size()));
  return m;
}

std::vector<Node> Dag::sinks() const {
  std::vector<Node> out;
  for (Node v = 1; v <= n_; ++v)
    if (children(v).empty()) out.push_back(v);
  return out;
}

const char* to_string(Family f) {
  switch (f) {
    case Family::line: return "line";
    case Family::argon2i_a: return "argon2i_a";
    case Family::argon2i_b: return "argon2i_b";
    case Family::drsample: return "drsample";
    case Family::fixed_example_ed: return "fixed_example_ed";
    case Family::fixed_example_trans: return "fixed_example_trans";
  }
  return "?";
}

bool family_from_string(const std::string& s, Family& out) {
  for (Family f : {Family::line, Family::argon2i_a, Family::argon2i_b, Family::drsample,
                   Family::fixed_example_ed, Family::fixed_example_trans}) {
    if (s == to_string(f)) {
      out = f;
      return true;
    }
  }
  return false;
}

Dag line_graph(Node n) {
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (Node v = 2; v <= n; ++v) edges.emplace_back(v - 1, v);
  return Dag::from_edges(n, std::move(edges));
}

Node argon2i_a_parent(Node i, Rng& rng) {
  if (i < 3) throw std::invalid_argument("argon2i_a_parent needs i >= 3");
  return static_cast<Node>(1 + rng.below(i - 2));
}

double argon2i_b_pmf(Node i, Node j) {
  if (j < 1 || j > i) return 0.0;
  double n = i;
  return std::sqrt(1.0 - (j - 1) / n) - std::sqrt(1.0 - j / n);
}

Node argon2i_b_parent(Node i, Rng& rng) {
  if (i < 3) throw std::invalid_argument("argon2i_b_parent needs i >= 3");
  // Inverse CDF of Pr[r <= j] = 1 - sqrt(1 - j/i), then clamp the tail mass
  // (j in {i-1, i}) down to the last usable parent.
  double x = rng.unit();
  auto j = static_cast<int64_t>(std::ceil(i * (2.0 * x - x * x)));
  int64_t hi = std::max<int64_t>(1, static_cast<int64_t>(i) - 2);
  j = std::clamp<int64_t>(j, 1, hi);
  return static_cast<Node>(j);
}

Node drsample_parent(Node i, Rng& rng) {
  if (i < 3) throw std::invalid_argument("drsample_parent needs i >= 3");
  uint32_t buckets = 31 - __builtin_clz(i - 1);  // floor(log2(i-1)), i-1 >= 2
  auto t = static_cast<uint32_t>(1 + rng.below(buckets));
  uint64_t span = 1ull << t;
  Node lo = i > span ? static_cast<Node>(i - span) : 1;
  Node hi = static_cast<Node>(i - (span >> 1) - 1);  // edge length > 2^(t-1)
  if (hi < lo) hi = lo;                              // unreachable for valid t; keep safe
  return static_cast<Node>(lo + rng.below(hi - lo + 1));
}

namespace {

template <class ParentFn>
Dag sample_backedge_graph(Node n, uint64_t seed, ParentFn&& parent_of) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(n > 0 ? 2 * n : 0);
  for (Node v = 2; v <= n; ++v) edges.emplace_back(v - 1, v);
  for (Node v = 3; v <= n; ++v) {
    Rng rng = Rng::for_node(seed, v);
    edges.emplace_back(parent_of(v, rng), v);
  }
  // The back-edge never collides with (v-1, v): all samplers return <= v-2.
  return Dag::from_edges(n, std::move(edges));
}

}  // namespace

Dag sample_argon2i_a(Node n, uint64_t seed) {
  return sample_backedge_graph(n, seed, [](Node v, Rng& r) { return argon2i_a_parent(v, r); });
}

Dag sample_argon2i_b(Node n, uint64_t seed) {
  return sample_backedge_graph(n, seed, [](Node v, Rng& r) { return argon2i_b_parent(v, r); });
}

Dag sample_drsample(Node n, uint64_t seed) {
  return sample_backedge_graph(n, seed, [](Node v, Rng& r) { return drsample_parent(v, r); });
}

Dag fixed_example_ed() {
  std::vector<std::pair<Node, Node>> edges;
  for (Node v = 1; v < 16; ++v) edges.emplace_back(v, v + 1);
  for (Node c : {3, 4, 5, 6}) edges.emplace_back(1, c);
  for (Node c : {7, 8, 9, 10}) edges.emplace_back(5, c);
  for (Node c : {11, 12, 13, 14}) edges.emplace_back(9, c);
  edges.emplace_back(13, 15);
  edges.emplace_back(13, 16);
  return Dag::from_edges(16, std::move(edges));
}

Dag fixed_example_trans() { return sample_drsample(18, 0x7a415ull); }

Dag make_graph(Family f, Node n, uint64_t seed) {
  switch (f) {
    case Family::line: return line_graph(n);
    case Family::argon2i_a: return sample_argon2i_a(n, seed);
    case Family::argon2i_b: return sample_argon2i_b(n, seed);
    case Family::drsample: return sample_drsample(n, seed);
    case Family::fixed_example_ed: return fixed_example_ed();
    case Family::fixed_example_trans: return fixed_example_trans();
  }
  throw std::invalid_argument("unknown family");
}

std::vector<uint32_t> longest_path_to(const Dag& g, Node w, const NodeSet& removed) {
  if (w < 1 || w > g.size()) throw std::invalid_argument("w out of range");
  std::vector<uint32_t> lp(g.size() + 1, 0);
  lp[w] = 1;  // w itself is never removed here
  for (Node v = w; v-- > 1;) {
    if (removed.contains(v)) continue;
    uint32_t best = 0;
    for (Node c : g.children(v)) {
      if (c <= w && lp[c] > best) best = lp[c];
    }
    if (best) lp[v] = best + 1;
  }
  return lp;
}

uint32_t depth(const Dag& g, const NodeSet& removed) {
  std::vector<uint32_t> d(g.size() + 1, 0);
  uint32_t best = 0;
  for (Node v = 1; v <= g.size(); ++v) {
    if (removed.contains(v)) continue;
    uint32_t m = 0;
    for (Node p : g.parents(v)) m = std::max(m, d[p]);
    d[v] = m + 1;
    best = std::max(best, d[v]);
  }
  return best;
}

uint32_t depth(const Dag& g) { return depth(g, NodeSet(g.size())); }

BlockPlan block_plan(const Dag& g, Node b) {
  if (b < 1 || b > g.size()) throw std::invalid_argument("block size must be in [1, n]");
  BlockPlan plan;
  plan.n = g.size();
  plan.block_size = b;
  plan.block_count = (g.size() + b - 1) / b;
  plan.skips.assign(plan.block_count, {});
  for (auto [u, v] : g.edges()) {
    Node bu = plan.block_of(u), bv = plan.block_of(v);
    if (bv > bu + 1) {
      auto& s = plan.skips[bu - 1];
      if (s.empty() || s.back() != u) s.push_back(u);  // edges sorted by (u, v)
      // duplicates possible only as consecutive equal u's, handled above
    }
  }
  for (auto& s : plan.skips) plan.num_skip += s.size();
  return plan;
}

}  // namespace qpebble
