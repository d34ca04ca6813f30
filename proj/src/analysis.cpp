#include "qpebble/analysis.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qpebble/depth_reduce.hpp"
#include "qpebble/rng.hpp"
#include "qpebble/strategies.hpp"

namespace qpebble {

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "# pebble-sweep v1\n";
  out << "n,level,time,space,st,cc,seed,wall_ms\n";
  for (const auto& r : rows) {
    out << r.n << "," << r.level << "," << r.time << "," << r.space << "," << r.st << ","
        << r.cc << "," << r.seed << "," << r.wall_ms << "\n";
  }
}

unsigned effective_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("QPEBBLE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v < 1024)
      hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

namespace {

// Runs fn(i) for i in [0, count) across the thread budget, then returns.
// Results must be written to preassigned slots so output order is fixed.
template <class Fn>
void parallel_for(size_t count, Fn&& fn) {
  unsigned workers = std::min<size_t>(effective_threads(), count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

uint64_t wall_ms_since(std::chrono::steady_clock::time_point start) {
  return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count());
}

}  // namespace

std::vector<SweepRow> sweep_line(std::span<const Node> ns, std::span<const uint32_t> levels,
                                 uint64_t seed, bool timings) {
  std::vector<SweepRow> rows(ns.size() * levels.size());
  parallel_for(rows.size(), [&](size_t i) {
    Node n = ns[i / levels.size()];
    uint32_t level = levels[i % levels.size()];
    auto start = std::chrono::steady_clock::now();
    CostReport r = leveled_line_cost(n, level);
    rows[i] = {n,    level, r.time, r.space,
               r.space_time, r.cumulative, seed, timings ? wall_ms_since(start) : 0};
  });
  return rows;
}

std::vector<SweepRow> sweep_imhf(Family family, std::span<const Node> ns, uint32_t seeds,
                                 uint64_t seed0, bool timings) {
  if (family != Family::drsample && family != Family::argon2i_a && family != Family::argon2i_b)
    throw std::invalid_argument("sweep supports argon2i_a, argon2i_b, drsample");
  std::vector<SweepRow> rows(ns.size() * seeds);
  parallel_for(rows.size(), [&](size_t i) {
    Node n = ns[i / seeds];
    uint64_t seed = seed0 + i % seeds;
    auto start = std::chrono::steady_clock::now();
    Dag g = make_graph(family, n, seed);
    CostReport r;
    uint64_t level;
    if (family == Family::drsample) {
      DrsampleAttack atk = drsample_attack(g);
      r = cost(atk.trace);
      level = atk.b;
    } else {
      LayerParams p = corollary_params(family, n);
      DepthReducingSet s = reduce_layered(g, p.lambda, p.d_prime);
      if (!s.verified) throw std::logic_error("layered reduction missed its depth bound");
      r = cost(ed_strategy(g, s.nodes, s.d));
      level = s.d;
    }
    rows[i] = {n,    level, r.time, r.space,
               r.space_time, r.cumulative, seed, timings ? wall_ms_since(start) : 0};
  });
  return rows;
}

GroverEstimate grover_estimate(uint64_t space_time, uint32_t domain_bits) {
  GroverEstimate e;
  e.space_time = space_time;
  e.domain_bits = domain_bits;
  e.total = static_cast<double>(space_time) * std::exp2(domain_bits / 2.0);
  return e;
}

}  // namespace qpebble
