#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qpebble/dag.hpp"
#include "qpebble/trace.hpp"

namespace qpebble {

enum class Model { classical, quantum };
enum class Schedule { sequential, parallel };

struct LegalityRegime {
  Model model = Model::quantum;
  Schedule schedule = Schedule::parallel;
  bool relaxed_target = false;  // accept P_t superset of target instead of equality
};

enum class Condition {
  ends_not_target,  // P_t != T (or P_t not a superset, relaxed)
  illegal_add,      // added node with an unpebbled parent
  illegal_delete,   // quantum: deleted node with an unpebbled parent
  reversibility,    // quantum: parent of a changed node absent from P_i
  sequential_step,  // |P_i symdiff P_{i-1}| > 1
};
const char* to_string(Condition c);

struct Violation {
  size_t round = 0;  // transition index, 1-based; target violations use t
  Condition condition{};
  std::vector<Node> witness;  // offending nodes, ascending
};

struct VerifyResult {
  std::vector<Violation> violations;  // by round, condition order within a round
  bool ok() const { return violations.empty(); }
};

// Checks every transition and the target condition, collecting all
// violations. The trace itself must be structurally valid (that is
// PebbleTrace::create's contract; io reports malformed files separately).
VerifyResult verify(const PebbleTrace& trace, const Dag& g, const LegalityRegime& regime);

// Single-transition check, conditions (2)-(5) only.
bool step_legal(const Dag& g, const NodeSet& prev, const NodeSet& next,
                const LegalityRegime& regime);

// Extends a legal trace that ends with the sinks pebbled (plus possibly more)
// into one ending on exactly the sink set, by replaying the history backwards
// with the sinks held. Output time is at most 2t; a trace already ending on
// exactly the sinks is returned unchanged, so the operation is idempotent.
// Requires sinks(g) to be a subset of the final configuration.
PebbleTrace reverse_closure(const PebbleTrace& trace, const Dag& g);

std::string describe(const Violation& v);

}  // namespace qpebble
