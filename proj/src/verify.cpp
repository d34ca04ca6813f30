#include "qpebble/verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpebble {

const char* to_string(Condition c) {
  switch (c) {
    case Condition::ends_not_target: return "ends_not_target";
    case Condition::illegal_add: return "illegal_add";
    case Condition::illegal_delete: return "illegal_delete";
    case Condition::reversibility: return "reversibility";
    case Condition::sequential_step: return "sequential_step";
  }
  return "?";
}

std::string describe(const Violation& v) {
  std::string s = "round " + std::to_string(v.round) + ": " + to_string(v.condition) + " nodes {";
  for (size_t i = 0; i < v.witness.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.witness[i]);
  }
  return s + "}";
}

namespace {

void split_changes(const NodeSet& prev, const NodeSet& cur, std::vector<Node>& adds,
                   std::vector<Node>& dels) {
  adds.clear();
  dels.clear();
  cur.for_each([&](Node v) {
    if (!prev.contains(v)) adds.push_back(v);
  });
  prev.for_each([&](Node v) {
    if (!cur.contains(v)) dels.push_back(v);
  });
}

// Nodes of `changed` with a parent missing from `have`.
std::vector<Node> parents_unmet(const Dag& g, std::span<const Node> changed,
                                const NodeSet& have) {
  std::vector<Node> bad;
  for (Node v : changed) {
    for (Node p : g.parents(v)) {
      if (!have.contains(p)) {
        bad.push_back(v);
        break;
      }
    }
  }
  return bad;
}

}  // namespace

VerifyResult verify(const PebbleTrace& trace, const Dag& g, const LegalityRegime& regime) {
  if (trace.n != g.size())
    throw std::invalid_argument("trace and graph disagree on node count");

  VerifyResult res;
  std::vector<Node> adds, dels;
  const size_t t = trace.time();
  for (size_t i = 1; i <= t; ++i) {
    const NodeSet& prev = trace.configs[i - 1];
    const NodeSet& cur = trace.configs[i];
    split_changes(prev, cur, adds, dels);

    if (auto bad = parents_unmet(g, adds, prev); !bad.empty())
      res.violations.push_back({i, Condition::illegal_add, std::move(bad)});

    if (regime.model == Model::quantum) {
      if (auto bad = parents_unmet(g, dels, prev); !bad.empty())
        res.violations.push_back({i, Condition::illegal_delete, std::move(bad)});

      // Parents of every changed node must persist in P_i.
      std::vector<Node> missing;
      auto collect = [&](std::span<const Node> changed) {
        for (Node v : changed)
          for (Node p : g.parents(v))
            if (!cur.contains(p)) missing.push_back(p);
      };
      collect(adds);
      collect(dels);
      if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        res.violations.push_back({i, Condition::reversibility, std::move(missing)});
      }
    }

    if (regime.schedule == Schedule::sequential && adds.size() + dels.size() > 1) {
      std::vector<Node> changed(adds);
      changed.insert(changed.end(), dels.begin(), dels.end());
      std::sort(changed.begin(), changed.end());
      res.violations.push_back({i, Condition::sequential_step, std::move(changed)});
    }
  }

  const NodeSet& fin = trace.configs.back();
  std::vector<Node> off;
  if (regime.relaxed_target) {
    trace.target.for_each([&](Node v) {
      if (!fin.contains(v)) off.push_back(v);
    });
  } else {
    trace.target.for_each([&](Node v) {
      if (!fin.contains(v)) off.push_back(v);
    });
    fin.for_each([&](Node v) {
      if (!trace.target.contains(v)) off.push_back(v);
    });
    std::sort(off.begin(), off.end());
  }
  if (!off.empty())
    res.violations.push_back({t, Condition::ends_not_target, std::move(off)});

  return res;
}

bool step_legal(const Dag& g, const NodeSet& prev, const NodeSet& next,
                const LegalityRegime& regime) {
  std::vector<Node> adds, dels;
  split_changes(prev, next, adds, dels);
  if (regime.schedule == Schedule::sequential && adds.size() + dels.size() > 1) return false;
  if (!parents_unmet(g, adds, prev).empty()) return false;
  if (regime.model == Model::quantum) {
    if (!parents_unmet(g, dels, prev).empty()) return false;
    for (const auto& changed : {adds, dels})
      for (Node v : changed)
        for (Node p : g.parents(v))
          if (!next.contains(p)) return false;
  }
  return true;
}

PebbleTrace reverse_closure(const PebbleTrace& trace, const Dag& g) {
  if (trace.n != g.size())
    throw std::invalid_argument("trace and graph disagree on node count");
  NodeSet sink_set(trace.n);
  for (Node s : g.sinks()) sink_set.add(s);
  if (!sink_set.is_subset_of(trace.last()))
    throw std::invalid_argument("final configuration must contain all sinks");

  if (trace.last() == sink_set) {
    PebbleTrace out = trace;
    out.target = sink_set;
    return out;
  }

  const size_t t = trace.time();
  std::vector<NodeSet> configs = trace.configs;
  auto with_sinks = [&](size_t idx) {
    NodeSet s = trace.configs[idx];
    sink_set.for_each([&](Node v) { s.add(v); });
    return s;
  };
  size_t j0 = with_sinks(t - 1) == trace.last() ? 2 : 1;
  for (size_t j = j0; j <= t; ++j) configs.push_back(with_sinks(t - j));
  return PebbleTrace::create(trace.n, std::move(configs), std::move(sink_set));
}

}  // namespace qpebble
