#include "qpebble/oracle.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace qpebble {

namespace {

// Parent bitmasks, bit (v-1) for node v.
std::vector<uint32_t> parent_masks(const Dag& g) {
  std::vector<uint32_t> pm(g.size(), 0);
  for (Node v = 1; v <= g.size(); ++v)
    for (Node p : g.parents(v)) pm[v - 1] |= 1u << (p - 1);
  return pm;
}

uint32_t addable_mask(const std::vector<uint32_t>& pm, uint32_t state) {
  uint32_t a = 0;
  for (size_t v = 0; v < pm.size(); ++v)
    if (!(state >> v & 1) && (pm[v] & state) == pm[v]) a |= 1u << v;
  return a;
}

uint32_t deletable_mask(const std::vector<uint32_t>& pm, uint32_t state) {
  uint32_t d = 0;
  for (size_t v = 0; v < pm.size(); ++v)
    if ((state >> v & 1) && (pm[v] & state) == pm[v]) d |= 1u << v;
  return d;
}

template <class Fn>
void each_successor(const std::vector<uint32_t>& pm, uint32_t state, uint32_t space_cap,
                    Model model, Fn&& fn) {
  const uint32_t add = addable_mask(pm, state);
  const uint32_t del = model == Model::quantum ? deletable_mask(pm, state) : state;
  const uint32_t changeable = add | del;
  // iterate all subsets of changeable, including the empty one (hold round)
  uint32_t sub = 0;
  for (;;) {
    const uint32_t adds = sub & add;
    const uint32_t dels = sub & del;
    bool ok = true;
    if (model == Model::quantum && dels) {
      uint32_t par = 0;
      for (uint32_t rest = sub; rest;) {
        uint32_t bit = rest & (0 - rest);
        par |= pm[__builtin_ctz(bit)];
        rest ^= bit;
      }
      ok = (par & dels) == 0;  // parents of changed nodes must persist
    }
    if (ok) {
      const uint32_t next = (state & ~dels) | adds;
      if (static_cast<uint32_t>(__builtin_popcount(next)) <= space_cap) fn(next);
    }
    if (sub == changeable) break;
    sub = (sub - changeable) & changeable;  // next subset
  }
}

void check_cap(const Dag& g, Node cap, const char* what) {
  if (g.size() > cap)
    throw std::invalid_argument(std::string(what) + " supports at most " +
                                std::to_string(cap) + " nodes");
}

uint32_t to_mask(const NodeSet& s) {
  uint32_t m = 0;
  s.for_each([&](Node v) { m |= 1u << (v - 1); });
  return m;
}

PebbleTrace chain_to_trace(const Dag& g, const std::vector<uint32_t>& chain,
                           const NodeSet& target) {
  std::vector<NodeSet> configs;
  configs.reserve(chain.size());
  for (uint32_t m : chain) {
    NodeSet s(g.size());
    for (Node v = 1; v <= g.size(); ++v)
      if (m >> (v - 1) & 1) s.add(v);
    configs.push_back(std::move(s));
  }
  return PebbleTrace::create(g.size(), std::move(configs), target);
}

}  // namespace

std::vector<uint32_t> successors(const Dag& g, uint32_t state, uint32_t space_cap, Model model) {
  check_cap(g, kOracleMaxTimeNodes, "successor enumeration");
  auto pm = parent_masks(g);
  std::vector<uint32_t> out;
  each_successor(pm, state, space_cap, model, [&](uint32_t s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool mask_step_legal(const Dag& g, uint32_t from, uint32_t to, Model model) {
  check_cap(g, kOracleMaxTimeNodes, "mask legality");
  auto pm = parent_masks(g);
  const uint32_t adds = to & ~from;
  const uint32_t dels = from & ~to;
  for (uint32_t rest = adds; rest;) {
    uint32_t bit = rest & (0 - rest);
    if ((pm[__builtin_ctz(bit)] & from) != pm[__builtin_ctz(bit)]) return false;
    rest ^= bit;
  }
  if (model == Model::quantum) {
    for (uint32_t rest = dels; rest;) {
      uint32_t bit = rest & (0 - rest);
      if ((pm[__builtin_ctz(bit)] & from) != pm[__builtin_ctz(bit)]) return false;
      rest ^= bit;
    }
    uint32_t par = 0;
    for (uint32_t rest = adds | dels; rest;) {
      uint32_t bit = rest & (0 - rest);
      par |= pm[__builtin_ctz(bit)];
      rest ^= bit;
    }
    if (par & ~to) return false;
  }
  return true;
}

TimeSearch optimal_time(const Dag& g, const NodeSet& target, uint32_t space_cap, Model model) {
  check_cap(g, kOracleMaxTimeNodes, "min-time search");
  const uint32_t goal = to_mask(target);
  TimeSearch res;
  if (static_cast<uint32_t>(__builtin_popcount(goal)) > space_cap) return res;

  auto pm = parent_masks(g);
  const size_t states = size_t{1} << g.size();
  constexpr uint32_t kUnseen = 0xffffffffu;
  std::vector<uint32_t> parent(states, kUnseen);
  std::vector<uint16_t> dist(states, 0xffff);
  std::queue<uint32_t> q;
  parent[0] = 0;
  dist[0] = 0;
  q.push(0);
  std::vector<uint32_t> buf;
  while (!q.empty() && parent[goal] == kUnseen) {
    uint32_t cur = q.front();
    q.pop();
    buf.clear();
    each_successor(pm, cur, space_cap, model, [&](uint32_t s) { buf.push_back(s); });
    std::sort(buf.begin(), buf.end());
    for (uint32_t s : buf) {
      if (parent[s] != kUnseen) continue;
      parent[s] = cur;
      dist[s] = static_cast<uint16_t>(dist[cur] + 1);
      if (s == goal) break;
      q.push(s);
    }
  }
  if (parent[goal] == kUnseen) return res;

  std::vector<uint32_t> chain;
  for (uint32_t m = goal;; m = parent[m]) {
    chain.push_back(m);
    if (m == 0) break;
  }
  std::reverse(chain.begin(), chain.end());
  res.reachable = true;
  res.time = dist[goal];
  res.witness = chain_to_trace(g, chain, target);
  return res;
}

SpaceTimeSearch optimal_space_time(const Dag& g, const NodeSet& target, Model model) {
  check_cap(g, kOracleMaxStNodes, "space-time search");
  SpaceTimeSearch best;
  for (uint32_t s = std::max<uint32_t>(1, target.count()); s <= g.size(); ++s) {
    if (best.reachable && s >= best.space_time) break;  // time >= 1, no improvement possible
    TimeSearch t = optimal_time(g, target, s, model);
    if (!t.reachable) continue;
    uint64_t st = static_cast<uint64_t>(s) * t.time;
    if (!best.reachable || st < best.space_time) {
      best.reachable = true;
      best.space = s;
      best.time = t.time;
      best.space_time = st;
      best.witness = std::move(t.witness);
    }
  }
  return best;
}

CcSearch optimal_cumulative(const Dag& g, const NodeSet& target, uint32_t space_cap,
                            Model model) {
  check_cap(g, kOracleMaxCcNodes, "cumulative-cost search");
  const uint32_t goal = to_mask(target);
  const uint32_t cap = space_cap == 0 ? g.size() : space_cap;
  CcSearch res;
  if (static_cast<uint32_t>(__builtin_popcount(goal)) > cap) return res;

  auto pm = parent_masks(g);
  const size_t states = size_t{1} << g.size();
  constexpr uint64_t kInf = ~uint64_t{0};
  std::vector<uint64_t> dist(states, kInf);
  std::vector<uint32_t> parent(states, 0xffffffffu);
  using Entry = std::pair<uint64_t, uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[0] = 0;
  pq.emplace(0, 0);
  while (!pq.empty()) {
    auto [dc, cur] = pq.top();
    pq.pop();
    if (dc != dist[cur]) continue;
    if (cur == goal) break;
    each_successor(pm, cur, cap, model, [&](uint32_t s) {
      if (s == cur) return;  // a hold round never helps the cumulative cost
      uint64_t nd = dc + static_cast<uint32_t>(__builtin_popcount(s));
      if (nd < dist[s]) {
        dist[s] = nd;
        parent[s] = cur;
        pq.emplace(nd, s);
      }
    });
  }
  if (dist[goal] == kInf) return res;

  std::vector<uint32_t> chain;
  for (uint32_t m = goal;; m = parent[m]) {
    chain.push_back(m);
    if (m == 0) break;
  }
  std::reverse(chain.begin(), chain.end());
  res.reachable = true;
  res.cumulative = dist[goal];
  res.witness = chain_to_trace(g, chain, target);
  return res;
}

}  // namespace qpebble
