#include "qpebble/trace.hpp"

#include <stdexcept>

namespace qpebble {

PebbleTrace PebbleTrace::create(Node n, std::vector<NodeSet> configs, NodeSet target) {
  if (configs.empty()) throw std::invalid_argument("trace needs at least P_0");
  if (!configs.front().empty()) throw std::invalid_argument("P_0 must be empty");
  for (const auto& c : configs)
    if (c.capacity() != n) throw std::invalid_argument("configuration capacity mismatch");
  if (target.capacity() != n) throw std::invalid_argument("target capacity mismatch");
  PebbleTrace t;
  t.n = n;
  t.configs = std::move(configs);
  t.target = std::move(target);
  return t;
}

CostReport cost(const PebbleTrace& trace) {
  CostAccumulator acc;
  for (size_t i = 1; i < trace.configs.size(); ++i) acc.step(trace.configs[i].count());
  return acc.report();
}

}  // namespace qpebble
