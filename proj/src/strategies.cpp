#include "qpebble/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "qpebble/depth_reduce.hpp"
#include "qpebble/verify.hpp"

namespace qpebble {

TraceBuilder::TraceBuilder(Node n) : n_(n), cur_(n) { configs_.push_back(cur_); }

void TraceBuilder::round(std::span<const Node> adds, std::span<const Node> dels) {
  for (Node v : dels) cur_.remove(v);
  for (Node v : adds) cur_.add(v);
  configs_.push_back(cur_);
}

PebbleTrace TraceBuilder::take(NodeSet target) {
  return PebbleTrace::create(n_, std::move(configs_), std::move(target));
}

namespace {

// Recorded rounds of a strategy run. Mirror phases replay a recorded span
// backwards with additions and deletions swapped; that reverses the
// configuration walk exactly.
class StepSeq {
 public:
  void push_add(Node v) {
    ops_.push_back(static_cast<int64_t>(v));
    ends_.push_back(ops_.size());
  }
  void push_add_del(Node a, Node d) {
    ops_.push_back(static_cast<int64_t>(a));
    ops_.push_back(-static_cast<int64_t>(d));
    ends_.push_back(ops_.size());
  }

  size_t rounds() const { return ends_.size(); }

  void replay(RoundSink& sink) const {
    std::vector<Node> adds, dels;
    for (size_t r = 0; r < rounds(); ++r) {
      adds.clear();
      dels.clear();
      size_t b = r ? ends_[r - 1] : 0;
      for (size_t i = b; i < ends_[r]; ++i) {
        if (ops_[i] > 0)
          adds.push_back(static_cast<Node>(ops_[i]));
        else
          dels.push_back(static_cast<Node>(-ops_[i]));
      }
      sink.round(adds, dels);
    }
  }

  // Appends the time reversal of rounds [first, last) to this sequence.
  void append_mirror(size_t first, size_t last) {
    for (size_t r = last; r-- > first;) {
      size_t b = r ? ends_[r - 1] : 0, e = ends_[r];
      std::vector<int64_t> round(ops_.begin() + b, ops_.begin() + e);  // ops_ reallocates
      for (int64_t op : round) ops_.push_back(-op);
      ends_.push_back(ops_.size());
    }
  }

 private:
  std::vector<int64_t> ops_;  // positive = add, negative = delete
  std::vector<size_t> ends_;
};

// Records the full chunked clean of [lo, hi] with chunk size k: forward
// sweep placing nodes left to right, chunk endpoints kept, finished chunk
// interiors deleted top-down while the next chunk fills, then the mirror of
// everything before the final addition of hi. The FIRST chunk takes the
// division remainder; since that chunk is never longer than the one after
// it, the deletion queue drains before the sweep ends and the round count
// is exactly 2 * len - 1.
void record_chunked(StepSeq& seq, Node lo, Node hi, Node k) {
  Node len = hi - lo + 1;
  k = std::min(k, len);
  Node first_size = len % k == 0 ? k : len % k;
  size_t start = seq.rounds();
  std::deque<Node> delq;
  Node endpoint = lo + first_size - 1;
  for (Node v = lo; v <= hi; ++v) {
    if (!delq.empty()) {
      seq.push_add_del(v, delq.front());
      delq.pop_front();
    } else {
      seq.push_add(v);
    }
    if (v == endpoint && v < hi) {
      Node chunk_lo = endpoint - lo + 1 == first_size ? lo : endpoint - k + 1;
      for (Node u = endpoint; u-- > chunk_lo;) delq.push_back(u);
      endpoint = std::min<Node>(endpoint + k, hi);
    }
  }
  if (!delq.empty()) throw std::logic_error("interior deletions did not drain");
  seq.append_mirror(start, seq.rounds() - 1);
}

// Clean [lo, hi]: every round is legal given the pebbles outside [lo, hi]
// stay put, and the net effect is adding exactly {hi}. Plans of length <= 2
// are the overlapped chunked sweep; deeper plans cut into segments sized by
// the tail product, clean them left to right, and unwind all but the last
// segment by a mirror of the recorded prefix.
void record_recursive_clean(StepSeq& seq, Node lo, Node hi, std::span<const Node> plan) {
  Node len = hi - lo + 1;
  if (len == 1) {
    seq.push_add(lo);
    return;
  }
  if (plan.size() <= 2) {
    record_chunked(seq, lo, hi, plan.back());
    return;
  }
  uint64_t sub = 1;
  for (size_t i = 1; i < plan.size(); ++i) sub = std::min<uint64_t>(sub * plan[i], len);
  auto seg = static_cast<Node>(sub);
  Node q = (len + seg - 1) / seg;
  size_t start = seq.rounds();
  size_t prefix_end = start;
  for (Node j = 1; j <= q; ++j) {
    Node slo = lo + (j - 1) * seg;
    Node shi = std::min<Node>(slo + seg - 1, hi);
    record_recursive_clean(seq, slo, shi, plan.subspan(1));
    if (j == q - 1) prefix_end = seq.rounds();
  }
  if (q >= 2) seq.append_mirror(start, prefix_end);
}

NodeSet line_target(Node n) {
  NodeSet t(n);
  t.add(n);
  return t;
}

}  // namespace

void gen_naive(const Dag& g, RoundSink& sink) {
  const Node n = g.size();
  NodeSet is_sink(n);
  for (Node s : g.sinks()) is_sink.add(s);
  Node buf;
  for (Node v = 1; v <= n; ++v) {
    buf = v;
    sink.round({&buf, 1}, {});
  }
  for (Node v = n; v >= 1; --v) {
    if (is_sink.contains(v)) continue;
    buf = v;
    sink.round({}, {&buf, 1});
  }
}

void gen_chunked_line(Node n, Node k, RoundSink& sink) {
  if (n < 1) throw std::invalid_argument("line needs at least one node");
  if (k < 1 || k > n) throw std::invalid_argument("chunk size must be in [1, n]");
  StepSeq seq;
  record_chunked(seq, 1, n, k);
  seq.replay(sink);
}

RecursionPlan RecursionPlan::uniform(Node n, uint32_t levels) {
  if (levels < 1) throw std::invalid_argument("plan needs at least one level");
  auto covers = [&](Node kk) {
    uint64_t p = 1;
    for (uint32_t i = 0; i < levels; ++i) {
      p *= kk;
      if (p >= n) return true;
    }
    return p >= n;
  };
  auto k = static_cast<Node>(std::floor(std::pow(static_cast<double>(n), 1.0 / levels)));
  if (k < 2) k = 2;
  while (!covers(k)) ++k;
  while (k > 2 && covers(k - 1)) --k;
  RecursionPlan plan;
  plan.chunk_sizes.assign(levels, k);
  return plan;
}

RecursionPlan RecursionPlan::power(Node k, uint32_t c) {
  RecursionPlan plan;
  plan.chunk_sizes.assign(c, k);
  return plan;
}

void RecursionPlan::validate(Node n) const {
  if (chunk_sizes.empty()) throw std::invalid_argument("empty recursion plan");
  uint64_t p = 1;
  for (Node k : chunk_sizes) {
    if (k < 2) throw std::invalid_argument("plan chunk sizes must be >= 2");
    p = std::min<uint64_t>(p * k, uint64_t{1} << 62);
  }
  if (p < n) throw std::invalid_argument("plan product does not cover the line");
}

void gen_recursive_line(Node n, const RecursionPlan& plan, RoundSink& sink) {
  if (n < 1) throw std::invalid_argument("line needs at least one node");
  if (n == 1) {
    Node one = 1;
    sink.round({&one, 1}, {});
    return;
  }
  plan.validate(n);
  StepSeq seq;
  record_recursive_clean(seq, 1, n, plan.chunk_sizes);
  seq.replay(sink);
}

namespace {

// Level-parameterized strategy: segments recurse with arity q down to
// single-node leaves, and every segment restores its surroundings with a
// full (never deduplicated) mirror of its own history, endpoint held. The
// two emission modes satisfy the time-reversal identity
//   full(seg)   = subs forward            , then subs backward mirrored (hi held)
//   mirror(seg) = subs forward (hi held)  , then subs backward mirrored
// and holds accumulate one endpoint per level, so a segment's round count
// doubles per level: exactly 2^(level+1) * len rounds, independent of how
// the ragged tail splits.
class LeveledEmitter {
 public:
  LeveledEmitter(RoundSink& sink, Node q) : sink_(sink), q_(q) {}

  void emit(Node lo, Node hi, uint32_t level, bool mirrored) {
    if (level == 0) {
      bool h = held(lo);
      if (!mirrored) {
        push_add(lo, h);
        push_hold();
      } else {
        push_hold();
        push_del(lo, h);
      }
      return;
    }
    uint64_t cap = 1;
    for (uint32_t i = 1; i < level; ++i)
      cap = std::min<uint64_t>(cap * q_, static_cast<uint64_t>(hi - lo) + 1);
    auto step = static_cast<Node>(cap);
    if (!mirrored) {
      forward_pass(lo, hi, level, step);
      holds_.push_back(hi);
      backward_pass(lo, hi, level, step);
      holds_.pop_back();
    } else {
      holds_.push_back(hi);
      forward_pass(lo, hi, level, step);
      holds_.pop_back();
      backward_pass(lo, hi, level, step);
    }
  }

 private:
  void forward_pass(Node lo, Node hi, uint32_t level, Node step) {
    for (Node slo = lo;; slo += step) {
      emit(slo, std::min<Node>(slo + step - 1, hi), level - 1, false);
      if (slo + step > hi) break;
    }
  }
  void backward_pass(Node lo, Node hi, uint32_t level, Node step) {
    for (Node slo = lo + ((hi - lo) / step) * step;; slo -= step) {
      emit(slo, std::min<Node>(slo + step - 1, hi), level - 1, true);
      if (slo == lo) break;
    }
  }
  bool held(Node v) const {
    return std::find(holds_.begin(), holds_.end(), v) != holds_.end();
  }
  void push_add(Node v, bool filtered) {
    if (filtered)
      push_hold();
    else
      sink_.round({&v, 1}, {});
  }
  void push_del(Node v, bool filtered) {
    if (filtered)
      push_hold();
    else
      sink_.round({}, {&v, 1});
  }
  void push_hold() { sink_.round({}, {}); }

  RoundSink& sink_;
  Node q_;
  std::vector<Node> holds_;
};

}  // namespace

void gen_leveled_line(Node n, uint32_t level, RoundSink& sink) {
  if (n < 1) throw std::invalid_argument("line needs at least one node");
  if (level == 0) {
    Node buf;
    for (Node v = 1; v <= n; ++v) {
      buf = v;
      sink.round({&buf, 1}, {});
    }
    for (Node v = n; v-- > 1;) {
      buf = v;
      sink.round({}, {&buf, 1});
    }
    return;
  }
  auto covers = [&](Node qq) {
    uint64_t p = 1;
    for (uint32_t i = 0; i < level; ++i) {
      p *= qq;
      if (p >= n) return true;
    }
    return p >= n;
  };
  Node q = 2;
  if (n > 1) {
    q = static_cast<Node>(std::ceil(std::pow(static_cast<double>(n), 1.0 / level)));
    if (q < 2) q = 2;
    while (!covers(q)) ++q;
    while (q > 2 && covers(q - 1)) --q;
  }
  LeveledEmitter em(sink, q);
  em.emit(1, n, level, false);
}

PebbleTrace naive_strategy(const Dag& g) {
  TraceBuilder tb(g.size());
  gen_naive(g, tb);
  NodeSet t(g.size());
  for (Node s : g.sinks()) t.add(s);
  return tb.take(std::move(t));
}

PebbleTrace chunked_line_strategy(Node n, Node k) {
  TraceBuilder tb(n);
  gen_chunked_line(n, k, tb);
  return tb.take(line_target(n));
}

PebbleTrace recursive_line_strategy(Node n, const RecursionPlan& plan) {
  TraceBuilder tb(n);
  gen_recursive_line(n, plan, tb);
  return tb.take(line_target(n));
}

PebbleTrace leveled_line_strategy(Node n, uint32_t level) {
  TraceBuilder tb(n);
  gen_leveled_line(n, level, tb);
  return tb.take(line_target(n));
}

CostReport chunked_line_cost(Node n, Node k) {
  CostSink cs;
  gen_chunked_line(n, k, cs);
  return cs.report();
}

CostReport recursive_line_cost(Node n, const RecursionPlan& plan) {
  CostSink cs;
  gen_recursive_line(n, plan, cs);
  return cs.report();
}

CostReport leveled_line_cost(Node n, uint32_t level) {
  CostSink cs;
  gen_leveled_line(n, level, cs);
  return cs.report();
}

PebbleTrace ed_strategy(const Dag& g, std::span<const Node> s, uint32_t d) {
  const Node n = g.size();
  if (g.sinks() != std::vector<Node>{n})
    throw std::invalid_argument("graph must have the unique sink n");
  if (g.max_indegree() > 2) throw std::invalid_argument("indegree must be <= 2");

  std::vector<Node> s_sorted(s.begin(), s.end());
  std::sort(s_sorted.begin(), s_sorted.end());
  s_sorted.erase(std::unique(s_sorted.begin(), s_sorted.end()), s_sorted.end());
  NodeSet s_all(n);
  for (Node v : s_sorted) s_all.add(v);

  if (auto path = verify_reducible(g, s_all, d)) {
    std::string msg = "depth bound violated, witness path:";
    for (Node v : *path) msg += " " + std::to_string(v);
    throw std::invalid_argument(msg);
  }

  // Dependency tables per anchor w: nodes grouped by the exact length of
  // their longest surviving path to w once s-members below w are removed.
  // Round v unions a radius-(d+1) diagonal window of these tables; the
  // grouping by exact length is what keeps both end conditions of every
  // window member satisfiable one round later.
  struct Table {
    std::vector<std::vector<Node>> by_len;  // index 1..d+1
  };
  std::unordered_map<Node, Table> tables;
  NodeSet s_below(n);  // s-members < next_w
  size_t s_ptr = 0;
  Node next_w = 1;
  auto table_for = [&](Node w) -> const Table& {
    for (; next_w <= w; ++next_w) {
      while (s_ptr < s_sorted.size() && s_sorted[s_ptr] < next_w) s_below.add(s_sorted[s_ptr++]);
      auto lp = longest_path_to(g, next_w, s_below);
      Table t;
      t.by_len.assign(d + 2, {});
      for (Node u = 1; u <= next_w; ++u) {
        if (lp[u] == 0) continue;
        if (lp[u] > d + 1) throw std::logic_error("window exceeded certified depth");
        t.by_len[lp[u]].push_back(u);
      }
      tables.emplace(next_w, std::move(t));
    }
    return tables.at(w);
  };

  std::vector<NodeSet> configs;
  configs.reserve(2 * static_cast<size_t>(n) + 1);
  configs.emplace_back(n);
  NodeSet s_upto(n);  // s-members <= v
  size_t sp = 0;
  for (Node v = 1; v <= n; ++v) {
    while (sp < s_sorted.size() && s_sorted[sp] <= v) s_upto.add(s_sorted[sp++]);
    NodeSet p = s_upto;
    for (uint32_t j = 1; j <= d + 1; ++j) {
      for (int64_t w : {static_cast<int64_t>(v) + 1 - j, static_cast<int64_t>(v) - 1 + j}) {
        if (w < 1 || w > n) continue;
        const Table& t = table_for(static_cast<Node>(w));
        for (uint32_t i = j; i <= d + 1; ++i)
          for (Node u : t.by_len[i]) p.add(u);
      }
    }
    if (v > d + 1) tables.erase(v - d - 1);  // behind the window, dead
    configs.push_back(std::move(p));
  }
  // Mirror the climb with the sink held: P_{n+j} = P_{n-j} + {n}.
  for (Node j = 1; j <= n; ++j) {
    NodeSet p = configs[n - j];
    p.add(n);
    configs.push_back(std::move(p));
  }
  return PebbleTrace::create(n, std::move(configs), line_target(n));
}

size_t last_delete(const PebbleTrace& p, Node v) {
  for (size_t i = p.configs.size(); i-- > 0;)
    if (p.configs[i].contains(v)) return i;
  throw std::invalid_argument("node never pebbled in trace");
}

size_t last_add(const PebbleTrace& p) {
  for (size_t i = p.time(); i >= 1; --i)
    if (p.configs[i].contains(p.n) && !p.configs[i - 1].contains(p.n)) return i;
  throw std::invalid_argument("trace never pebbles the last node");
}

PebbleTrace trans(const Dag& g, const PebbleTrace& p_prime, Node b) {
  const Node n = g.size();
  if (b < 1 || b > n) throw std::invalid_argument("block size must be in [1, n]");
  const Node c = (n + b - 1) / b;
  const Node m_c = n - (c - 1) * b;  // ragged size of the last block, in [1, b]
  if (p_prime.n != c)
    throw std::invalid_argument("inner trace must live on the line with ceil(n/b) nodes");
  if (!(p_prime.target == line_target(c)))
    throw std::invalid_argument("inner trace must target the line's last node");
  {
    Dag line = line_graph(c);
    if (!verify(p_prime, line, {Model::quantum, Schedule::parallel, false}).ok())
      throw std::invalid_argument("inner trace is not quantum-parallel legal");
  }

  BlockPlan plan = block_plan(g, b);
  NodeSet skip_all(n);
  for (const auto& sk : plan.skips)
    for (Node v : sk) skip_all.add(v);

  const size_t j_last_add = last_add(p_prime);
  std::vector<size_t> ld(c + 1, 0);
  for (Node i = 1; i <= c; ++i) ld[i] = last_delete(p_prime, i);

  const size_t t_prime = p_prime.time();
  std::vector<NodeSet> configs;
  configs.reserve(t_prime * b + m_c);
  configs.emplace_back(n);
  NodeSet cur(n);
  std::vector<Node> added_blocks, deleted_blocks;
  for (size_t j = 1; j <= t_prime; ++j) {
    const NodeSet& prev_p = p_prime.configs[j - 1];
    const NodeSet& cur_p = p_prime.configs[j];
    added_blocks.clear();
    deleted_blocks.clear();
    cur_p.for_each([&](Node i) {
      if (!prev_p.contains(i)) added_blocks.push_back(i);
    });
    prev_p.for_each([&](Node i) {
      if (!cur_p.contains(i)) deleted_blocks.push_back(i);
    });

    const Node f = j == j_last_add ? b + m_c - 1 : b;
    for (Node k = 1; k <= f; ++k) {
      for (Node i : added_blocks) {
        if (i < c) {
          if (k <= b) cur.add((i - 1) * b + k);
        } else {
          if (k <= m_c)
            cur.add((c - 1) * b + k);
          else if (j == j_last_add && k > b)
            cur.remove(n - (k - b));  // strip the last block down to the sink
        }
      }
      for (Node i : deleted_blocks) {
        if (i < c) {
          if (k <= b) {
            Node v = i * b - (k - 1);
            // skip nodes stay until the block's final disappearance
            if (ld[i] == j - 1 || !skip_all.contains(v)) cur.remove(v);
          }
        } else {
          if (k <= m_c) cur.remove(n - (k - 1));
        }
      }
      configs.push_back(cur);
    }
  }
  if (configs.size() != static_cast<size_t>(t_prime) * b + m_c)
    throw std::logic_error("translated round count off");
  return PebbleTrace::create(n, std::move(configs), line_target(n));
}

DrsampleAttack drsample_attack(const Dag& g) {
  const Node n = g.size();
  if (n < 4) throw std::invalid_argument("attack needs n >= 4");
  double lg = std::log2(static_cast<double>(n));
  auto b = static_cast<Node>(std::ceil(n / (lg * lg)));
  b = std::clamp<Node>(b, 1, n);
  const Node c = (n + b - 1) / b;

  DrsampleAttack out;
  out.b = b;
  out.num_skip = block_plan(g, b).num_skip;
  if (c == 1) {
    std::vector<NodeSet> cfg;
    cfg.emplace_back(1);
    cfg.push_back(NodeSet::of(1, {1}));
    out.p_prime = PebbleTrace::create(1, std::move(cfg), NodeSet::of(1, {1}));
  } else {
    uint32_t best_depth = 1;
    uint64_t best_st = ~uint64_t{0};
    for (uint32_t depth = 1; depth <= 3; ++depth) {
      auto r = recursive_line_cost(c, RecursionPlan::uniform(c, depth));
      if (r.space_time < best_st) {
        best_st = r.space_time;
        best_depth = depth;
      }
    }
    out.p_prime = recursive_line_strategy(c, RecursionPlan::uniform(c, best_depth));
  }
  out.trace = trans(g, out.p_prime, b);
  return out;
}

}  // namespace qpebble
