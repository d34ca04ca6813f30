#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qpebble/dag.hpp"

namespace qpebble {

struct DepthReducingSet {
  std::vector<Node> nodes;  // ascending
  uint64_t e = 0;           // |nodes|
  uint32_t d = 0;           // certified depth bound for g - nodes
  uint32_t lambda = 0;      // layer count used
  uint32_t d_prime = 0;     // in-layer spacing used
  bool verified = false;    // depth(g - nodes) <= d actually checked
};

// Layered depth reduction: split [1, n] into lambda layers of ceil(n/lambda)
// consecutive nodes; (a) remove every v that keeps a non-path parent
// (u != v-1) inside its own layer, (b) remove every d_prime-th node of each
// layer. Surviving in-layer runs are shorter than d_prime and a path crosses
// each layer once, so depth(g - S) <= d = lambda * d_prime (verified on the
// result). Requires indegree <= 2.
DepthReducingSet reduce_layered(const Dag& g, uint32_t lambda, uint32_t d_prime);

struct LayerParams {
  uint32_t lambda = 0;
  uint32_t d_prime = 0;
};

// Parameter choices tuned per family (n >= 16):
//   argon2i_a: lambda = ceil(sqrt(log2 n)),        d_prime = ceil(2 sqrt(log2 n) / ln(log2 n))
//   argon2i_b: lambda = ceil((log2^2 n)^(1/3)),    d_prime = ceil((log2 n)^(1/3) / 2)
LayerParams corollary_params(Family family, Node n);

// nullopt when depth(g - s) <= d; otherwise a witness path in g - s with
// more than d nodes (consecutive edges of g, none in s).
std::optional<std::vector<Node>> verify_reducible(const Dag& g, const NodeSet& s, uint32_t d);

}  // namespace qpebble
