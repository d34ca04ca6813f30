#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qpebble/dag.hpp"
#include "qpebble/trace.hpp"

namespace qpebble {

// One sweep measurement. `level` is the strategy level for line sweeps and
// the certified depth bound d for depth-reduction attacks; `seed` echoes the
// sweep seed (deterministic families report it unchanged).
struct SweepRow {
  uint64_t n = 0;
  uint64_t level = 0;
  uint64_t time = 0;
  uint64_t space = 0;
  uint64_t st = 0;
  uint64_t cc = 0;
  uint64_t seed = 0;
  uint64_t wall_ms = 0;
};

// CSV with a versioned schema comment, then the header
// n,level,time,space,st,cc,seed,wall_ms and one row per line. wall_ms is 0
// unless timings were requested, keeping default output byte-stable.
void write_csv(std::ostream& out, std::span<const SweepRow> rows);

// Thread budget: min(hardware, QPEBBLE_THREADS if set). At least 1.
unsigned effective_threads();

// Simulated cost of the leveled line strategy for each (n, level) pair.
// Rows come back sorted by (n, level) regardless of scheduling.
std::vector<SweepRow> sweep_line(std::span<const Node> ns, std::span<const uint32_t> levels,
                                 uint64_t seed, bool timings);

// Depth-reduction attack costs over seeded instances: for argon2i families,
// reduce_layered with the tuned parameters followed by the window strategy;
// for drsample, the block-translation attack. One row per (n, seed_index),
// seed column = per-instance seed.
std::vector<SweepRow> sweep_imhf(Family family, std::span<const Node> ns, uint32_t seeds,
                                 uint64_t seed0, bool timings);

struct GroverEstimate {
  uint64_t space_time = 0;
  uint32_t domain_bits = 0;
  double total = 0;  // space_time * 2^(domain_bits / 2)
};

// Cost of running the pebbling inside a square-root search over a domain of
// 2^domain_bits inputs: st per evaluation times 2^(bits/2) evaluations.
GroverEstimate grover_estimate(uint64_t space_time, uint32_t domain_bits);

}  // namespace qpebble
