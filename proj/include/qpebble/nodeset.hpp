#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace qpebble {

using Node = uint32_t;  // node ids are 1-based

// Set of nodes from [1, n] backed by a bitset. Pebbling configurations use
// this representation throughout; membership and size are O(1).
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(Node n) : n_(n), bits_((n + 64) / 64, 0) {}

  static NodeSet of(Node n, std::initializer_list<Node> ids) {
    NodeSet s(n);
    for (Node v : ids) s.add(v);
    return s;
  }

  static NodeSet from_sorted(Node n, std::span<const Node> ids) {
    NodeSet s(n);
    for (Node v : ids) s.add(v);
    return s;
  }

  Node capacity() const { return n_; }
  uint32_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Node v) const {
    check(v);
    return (bits_[(v - 1) >> 6] >> ((v - 1) & 63)) & 1;
  }

  void add(Node v) {
    check(v);
    uint64_t& w = bits_[(v - 1) >> 6];
    uint64_t m = 1ull << ((v - 1) & 63);
    count_ += !(w & m);
    w |= m;
  }

  void remove(Node v) {
    check(v);
    uint64_t& w = bits_[(v - 1) >> 6];
    uint64_t m = 1ull << ((v - 1) & 63);
    count_ -= !!(w & m);
    w &= ~m;
  }

  bool is_subset_of(const NodeSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }

  std::vector<Node> sorted() const {
    std::vector<Node> out;
    out.reserve(count_);
    for_each([&](Node v) { out.push_back(v); });
    return out;
  }

  // Visits members in ascending order.
  template <class F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < bits_.size(); ++i) {
      uint64_t w = bits_[i];
      while (w) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
        f(static_cast<Node>(i * 64 + b + 1));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const NodeSet& a, const NodeSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  void check(Node v) const {
    if (v < 1 || v > n_) throw std::out_of_range("node id out of range");
  }

  Node n_ = 0;
  uint32_t count_ = 0;
  std::vector<uint64_t> bits_;
};

}  // namespace qpebble
