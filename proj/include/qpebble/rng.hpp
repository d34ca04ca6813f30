#pragma once

#include <cstdint>

namespace qpebble {

// One SplitMix64 scramble of x. Stateless; used for seed derivation.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// SplitMix64 stream. Deterministic across platforms; no libc++/libstdc++
// distribution objects are used anywhere so sampled graphs are portable.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n). n >= 1.
  uint64_t below(uint64_t n) {
    uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Stream for node v under a top-level seed. Samplers draw each node's
  // randomness from its own stream, so a node's edge does not depend on
  // the draw order or on other nodes.
  static Rng for_node(uint64_t seed, uint64_t v) {
    return Rng(mix64(mix64(seed) + v));
  }

 private:
  uint64_t state_;
};

}  // namespace qpebble
