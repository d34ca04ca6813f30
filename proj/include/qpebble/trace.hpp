#pragma once

#include <cstdint>
#include <vector>

#include "qpebble/nodeset.hpp"

namespace qpebble {

// A pebbling trace: configurations P_0..P_t plus the target set. P_0 is
// always the empty set; construction rejects anything else.
struct PebbleTrace {
  Node n = 0;
  std::vector<NodeSet> configs;  // size t + 1
  NodeSet target;

  size_t time() const { return configs.size() - 1; }
  const NodeSet& last() const { return configs.back(); }

  // Validates: at least one configuration, P_0 empty, every set sized to n.
  static PebbleTrace create(Node n, std::vector<NodeSet> configs, NodeSet target);
};

struct CostReport {
  uint64_t time = 0;        // number of transitions t
  uint64_t space = 0;       // max_i |P_i|
  uint64_t space_time = 0;  // time * space
  uint64_t cumulative = 0;  // sum_i |P_i|, i in [1, t]
};

CostReport cost(const PebbleTrace& trace);

// Streaming cost accounting for strategies that never materialize a trace.
class CostAccumulator {
 public:
  void step(uint32_t config_size) {
    ++rounds_;
    if (config_size > max_) max_ = config_size;
    sum_ += config_size;
  }
  CostReport report() const { return {rounds_, max_, rounds_ * max_, sum_}; }

 private:
  uint64_t rounds_ = 0, max_ = 0, sum_ = 0;
};

}  // namespace qpebble
