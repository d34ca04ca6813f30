#pragma once

#include <cstdint>
#include <vector>

#include "qpebble/dag.hpp"
#include "qpebble/trace.hpp"
#include "qpebble/verify.hpp"

namespace qpebble {

// Exact searches over the full configuration space. States are bitmasks with
// bit (v-1) for node v, so sizes are hard-capped; past the cap the functions
// refuse with an error instead of thrashing.
inline constexpr Node kOracleMaxTimeNodes = 24;  // min-time BFS
inline constexpr Node kOracleMaxStNodes = 20;    // space-time scan
inline constexpr Node kOracleMaxCcNodes = 16;    // cumulative-cost search

// All legal successors of `state` with |next| <= space_cap, sorted by numeric
// value. Parallel schedule; set space_cap = n for uncapped.
std::vector<uint32_t> successors(const Dag& g, uint32_t state, uint32_t space_cap, Model model);

// Single-transition legality on mask states (parallel schedule, no cap).
bool mask_step_legal(const Dag& g, uint32_t from, uint32_t to, Model model);

struct TimeSearch {
  bool reachable = false;
  uint64_t time = 0;
  PebbleTrace witness;  // empty when unreachable
};

// Fewest transitions from the empty configuration to exactly `target` under
// the space cap. BFS; deterministic witness (least successor mask first).
TimeSearch optimal_time(const Dag& g, const NodeSet& target, uint32_t space_cap,
                        Model model = Model::quantum);

struct SpaceTimeSearch {
  bool reachable = false;
  uint64_t space = 0;  // cap achieving the optimum (smallest such)
  uint64_t time = 0;
  uint64_t space_time = 0;
  PebbleTrace witness;
};

// min over s of s * optimal_time(s): the best space-time product any trace
// can achieve, since a trace with max size s is one the capped search sees.
SpaceTimeSearch optimal_space_time(const Dag& g, const NodeSet& target,
                                   Model model = Model::quantum);

struct CcSearch {
  bool reachable = false;
  uint64_t cumulative = 0;
  PebbleTrace witness;
};

// Minimum cumulative cost (sum of |P_i|) via Dijkstra with edge weight
// |next|; optional space cap (0 = uncapped).
CcSearch optimal_cumulative(const Dag& g, const NodeSet& target, uint32_t space_cap = 0,
                            Model model = Model::quantum);

}  // namespace qpebble
