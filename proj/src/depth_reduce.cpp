#include "qpebble/depth_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpebble {

DepthReducingSet reduce_layered(const Dag& g, uint32_t lambda, uint32_t d_prime) {
  const Node n = g.size();
  if (lambda < 1 || lambda > n) throw std::invalid_argument("lambda must be in [1, n]");
  if (d_prime < 1) throw std::invalid_argument("d_prime must be >= 1");
  if (g.max_indegree() > 2) throw std::invalid_argument("graph indegree must be at most 2");

  const Node layer_size = (n + lambda - 1) / lambda;
  DepthReducingSet out;
  out.lambda = lambda;
  out.d_prime = d_prime;
  out.d = lambda * d_prime;

  for (Node v = 1; v <= n; ++v) {
    const Node layer_lo = ((v - 1) / layer_size) * layer_size + 1;
    bool cut = false;
    // (a) non-path parent inside v's own layer
    for (Node u : g.parents(v)) {
      if (u != v - 1 && u >= layer_lo) {
        cut = true;
        break;
      }
    }
    // (b) every d_prime-th node of the layer
    if (!cut && (v - layer_lo + 1) % d_prime == 0) cut = true;
    if (cut) out.nodes.push_back(v);
  }
  out.e = out.nodes.size();

  NodeSet s(n);
  for (Node v : out.nodes) s.add(v);
  out.verified = !verify_reducible(g, s, out.d).has_value();
  return out;
}

LayerParams corollary_params(Family family, Node n) {
  if (n < 16) throw std::invalid_argument("parameter formulas need n >= 16");
  const double lg = std::log2(static_cast<double>(n));
  LayerParams p;
  switch (family) {
    case Family::argon2i_a:
      p.lambda = static_cast<uint32_t>(std::ceil(std::sqrt(lg)));
      p.d_prime = static_cast<uint32_t>(std::ceil(2.0 * std::sqrt(lg) / std::log(lg)));
      break;
    case Family::argon2i_b:
      p.lambda = static_cast<uint32_t>(std::ceil(std::cbrt(lg * lg)));
      p.d_prime = static_cast<uint32_t>(std::ceil(std::cbrt(lg) / 2.0));
      break;
    default:
      throw std::invalid_argument("tuned parameters exist for argon2i families only");
  }
  p.lambda = std::max<uint32_t>(p.lambda, 1);
  p.d_prime = std::max<uint32_t>(p.d_prime, 1);
  return p;
}

std::optional<std::vector<Node>> verify_reducible(const Dag& g, const NodeSet& s, uint32_t d) {
  const Node n = g.size();
  std::vector<uint32_t> len(n + 1, 0);
  std::vector<Node> pred(n + 1, 0);
  Node best = 0;
  uint32_t best_len = 0;
  for (Node v = 1; v <= n; ++v) {
    if (s.contains(v)) continue;
    uint32_t m = 0;
    Node arg = 0;
    for (Node p : g.parents(v)) {
      if (len[p] > m) {
        m = len[p];
        arg = p;
      }
    }
    len[v] = m + 1;
    pred[v] = arg;
    if (len[v] > best_len) {
      best_len = len[v];
      best = v;
    }
  }
  if (best_len <= d) return std::nullopt;
  std::vector<Node> path;
  for (Node v = best; v != 0; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace qpebble
