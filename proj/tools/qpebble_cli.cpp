// Command-line front end: graph generation, attacks, legality checking,
// cost sweeps, depth reduction, exact search, and square-root-search
// accounting over the text formats in io.hpp.
//
// Exit codes: 0 success, 1 legality violation, 2 usage error, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpebble/analysis.hpp"
#include "qpebble/dag.hpp"
#include "qpebble/depth_reduce.hpp"
#include "qpebble/io.hpp"
#include "qpebble/oracle.hpp"
#include "qpebble/strategies.hpp"
#include "qpebble/verify.hpp"

namespace {

using namespace qpebble;

constexpr Node kTraceEmitCap = 65536;  // traces above this are cost-only

struct ExitWith {
  int code;
};

std::vector<Node> parse_node_list(const std::string& s) {
  std::vector<Node> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw CLI::ValidationError("empty entry in list '" + s + "'");
    uint64_t v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') throw CLI::ValidationError("bad number '" + tok + "'");
      v = v * 10 + (ch - '0');
      if (v > (uint64_t{1} << 32)) throw CLI::ValidationError("number too large '" + tok + "'");
    }
    out.push_back(static_cast<Node>(v));
  }
  if (out.empty()) throw CLI::ValidationError("empty list");
  return out;
}

Family parse_family(const std::string& s) {
  Family f;
  if (!family_from_string(s, f))
    throw CLI::ValidationError("unknown family '" + s + "'");
  return f;
}

// Writes through to stdout when path is "-".
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  fn(f);
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

bool is_line_graph(const Dag& g) {
  if (g.edge_count() != static_cast<size_t>(g.size()) - 1) return false;
  Node v = 2;
  for (auto [a, b] : g.edges()) {
    if (a != v - 1 || b != v) return false;
    ++v;
  }
  return true;
}

void print_cost(const CostReport& r) {
  std::cout << "time=" << r.time << "\n"
            << "space=" << r.space << "\n"
            << "st=" << r.space_time << "\n"
            << "cc=" << r.cumulative << "\n";
}

void verify_or_exit(const PebbleTrace& trace, const Dag& g, const LegalityRegime& regime) {
  VerifyResult res = verify(trace, g, regime);
  if (res.ok()) {
    std::cout << "ok\n";
    return;
  }
  for (const auto& v : res.violations) std::cerr << describe(v) << "\n";
  std::cerr << res.violations.size() << " violation(s)\n";
  throw ExitWith{1};
}

struct GraphArgs {
  std::string path;
  std::string family;
  uint64_t n = 0;
  uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    auto* gopt = cmd->add_option("--graph", path, "graph file (pebble-dag v1)");
    auto* fopt = cmd->add_option("--family", family,
                                 "generate instead: line|argon2i_a|argon2i_b|drsample|"
                                 "fixed_example_ed|fixed_example_trans");
    cmd->add_option("--n", n, "node count for generated families");
    cmd->add_option("--seed", seed, "sampler seed for generated families");
    gopt->excludes(fopt);
  }

  Dag load() const {
    if (!path.empty()) return read_dag_file(path);
    if (family.empty())
      throw CLI::ValidationError("need --graph or --family");
    Family f = parse_family(family);
    if ((f == Family::line || f == Family::argon2i_a || f == Family::argon2i_b ||
         f == Family::drsample) &&
        n < 1)
      throw CLI::ValidationError("--n required for family " + family);
    return make_graph(f, static_cast<Node>(n), seed);
  }
};

void cmd_gen(CLI::App& app) {
  auto* cmd = app.add_subcommand("gen", "generate a graph file");
  auto args = std::make_shared<GraphArgs>();
  auto out = std::make_shared<std::string>("-");
  cmd->add_option("--family", args->family, "graph family")->required();
  cmd->add_option("--n", args->n, "node count (ignored by fixed examples)");
  cmd->add_option("--seed", args->seed, "sampler seed");
  cmd->add_option("-o,--out", *out, "output path ('-' = stdout)");
  cmd->callback([args, out] {
    Family f = parse_family(args->family);
    if (f != Family::fixed_example_ed && f != Family::fixed_example_trans && args->n < 1)
      throw CLI::ValidationError("--n required for family " + args->family);
    Dag g = make_graph(f, static_cast<Node>(args->n), args->seed);
    with_output(*out, [&](std::ostream& o) { write_dag(o, g); });
  });
}

void cmd_attack(CLI::App& app) {
  auto* cmd = app.add_subcommand("attack", "run a pebbling strategy and report costs");
  auto args = std::make_shared<GraphArgs>();
  args->attach(cmd);
  struct Opts {
    std::string strategy;
    uint64_t k = 0, level = 0, depth = 0, b = 0, lambda = 0, d_prime = 0;
    std::string plan, drset, inner_trace, emit;
    bool check = false;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--strategy", o->strategy,
                  "naive|chunked|recursive|leveled|ed|trans|drsample")
      ->required();
  cmd->add_option("--k", o->k, "chunk size (chunked)");
  cmd->add_option("--plan", o->plan, "comma-separated chunk sizes (recursive)");
  cmd->add_option("--depth", o->depth, "uniform plan depth (recursive)");
  cmd->add_option("--level", o->level, "recursion level (leveled)");
  cmd->add_option("--drset", o->drset, "depth-reducing set file (ed)");
  cmd->add_option("--lambda", o->lambda, "layer count: reduce first (ed)");
  cmd->add_option("--d-prime", o->d_prime, "in-layer spacing: reduce first (ed)");
  cmd->add_option("--inner-trace", o->inner_trace, "line trace to translate (trans)");
  cmd->add_option("--b", o->b, "block size (trans)");
  cmd->add_option("--emit-trace", o->emit, "write the trace (n <= 65536)");
  cmd->add_flag("--verify", o->check, "check the trace before reporting");

  cmd->callback([args, o] {
    Dag g = args->load();
    const Node n = g.size();
    const bool want_trace = o->check || !o->emit.empty();
    if (!o->emit.empty() && n > kTraceEmitCap)
      throw CLI::ValidationError("trace emission is capped at n = 65536");

    auto line_only = [&] {
      if (!is_line_graph(g))
        throw CLI::ValidationError("strategy '" + o->strategy + "' needs a line graph");
    };
    std::optional<PebbleTrace> trace;
    CostReport report;

    if (o->strategy == "naive") {
      if (want_trace) {
        trace = naive_strategy(g);
      } else {
        CostSink cs;
        gen_naive(g, cs);
        report = cs.report();
      }
    } else if (o->strategy == "chunked") {
      line_only();
      if (o->k < 1) throw CLI::ValidationError("--k required");
      if (want_trace)
        trace = chunked_line_strategy(n, static_cast<Node>(o->k));
      else
        report = chunked_line_cost(n, static_cast<Node>(o->k));
    } else if (o->strategy == "recursive") {
      line_only();
      RecursionPlan plan;
      if (!o->plan.empty()) {
        plan.chunk_sizes = parse_node_list(o->plan);
      } else if (o->depth >= 1) {
        plan = RecursionPlan::uniform(n, static_cast<uint32_t>(o->depth));
      } else {
        throw CLI::ValidationError("--plan or --depth required");
      }
      if (want_trace)
        trace = recursive_line_strategy(n, plan);
      else
        report = recursive_line_cost(n, plan);
    } else if (o->strategy == "leveled") {
      line_only();
      if (want_trace)
        trace = leveled_line_strategy(n, static_cast<uint32_t>(o->level));
      else
        report = leveled_line_cost(n, static_cast<uint32_t>(o->level));
    } else if (o->strategy == "ed") {
      std::vector<Node> s;
      uint32_t d = 0;
      if (!o->drset.empty()) {
        DrsetFile f = read_drset_file(o->drset);
        if (f.n != n) throw CLI::ValidationError("drset node count differs from graph");
        s = f.nodes;
        d = f.d;
      } else if (o->lambda >= 1 && o->d_prime >= 1) {
        DepthReducingSet r =
            reduce_layered(g, static_cast<uint32_t>(o->lambda), static_cast<uint32_t>(o->d_prime));
        s = r.nodes;
        d = r.d;
        std::cout << "e=" << r.e << "\n";
      } else {
        throw CLI::ValidationError("ed needs --drset or --lambda and --d-prime");
      }
      trace = ed_strategy(g, s, d);
    } else if (o->strategy == "trans") {
      if (o->inner_trace.empty() || o->b < 1)
        throw CLI::ValidationError("trans needs --inner-trace and --b");
      PebbleTrace inner = read_trace_file(o->inner_trace);
      trace = trans(g, inner, static_cast<Node>(o->b));
    } else if (o->strategy == "drsample") {
      DrsampleAttack atk = drsample_attack(g);
      std::cout << "b=" << atk.b << "\n"
                << "num_skip=" << atk.num_skip << "\n";
      trace = std::move(atk.trace);
    } else {
      throw CLI::ValidationError("unknown strategy '" + o->strategy + "'");
    }

    if (trace) report = cost(*trace);
    print_cost(report);
    if (o->check) verify_or_exit(*trace, g, {Model::quantum, Schedule::parallel, false});
    if (!o->emit.empty()) write_trace_file(o->emit, *trace);
  });
}

void cmd_verify(CLI::App& app) {
  auto* cmd = app.add_subcommand("verify", "check a trace against a graph");
  auto graph = std::make_shared<std::string>();
  auto trace = std::make_shared<std::string>();
  auto model = std::make_shared<std::string>("quantum");
  auto sched = std::make_shared<std::string>("parallel");
  auto relaxed = std::make_shared<bool>(false);
  cmd->add_option("--graph", *graph, "graph file")->required();
  cmd->add_option("--trace", *trace, "trace file")->required();
  cmd->add_option("--model", *model, "classical|quantum");
  cmd->add_option("--schedule", *sched, "sequential|parallel");
  cmd->add_flag("--relaxed", *relaxed, "accept any superset of the target");
  cmd->callback([graph, trace, model, sched, relaxed] {
    LegalityRegime regime;
    if (*model == "classical")
      regime.model = Model::classical;
    else if (*model != "quantum")
      throw CLI::ValidationError("--model must be classical or quantum");
    if (*sched == "sequential")
      regime.schedule = Schedule::sequential;
    else if (*sched != "parallel")
      throw CLI::ValidationError("--schedule must be sequential or parallel");
    regime.relaxed_target = *relaxed;
    Dag g = read_dag_file(*graph);
    PebbleTrace t = read_trace_file(*trace);
    verify_or_exit(t, g, regime);
  });
}

void cmd_cost(CLI::App& app) {
  auto* cmd = app.add_subcommand("cost", "report a trace's cost measures");
  auto trace = std::make_shared<std::string>();
  cmd->add_option("--trace", *trace, "trace file")->required();
  cmd->callback([trace] { print_cost(cost(read_trace_file(*trace))); });
}

void cmd_sweep_line(CLI::App& app) {
  auto* cmd = app.add_subcommand("sweep-line", "cost the leveled line strategy over a grid");
  auto ns = std::make_shared<std::string>();
  auto levels = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>("-");
  auto seed = std::make_shared<uint64_t>(0);
  auto timings = std::make_shared<bool>(false);
  cmd->add_option("--n", *ns, "comma-separated node counts")->required();
  cmd->add_option("--levels", *levels, "comma-separated levels")->required();
  cmd->add_option("-o,--out", *out, "CSV path ('-' = stdout)");
  cmd->add_option("--seed", *seed, "echoed into the seed column");
  cmd->add_flag("--timings", *timings, "fill wall_ms (breaks byte reproducibility)");
  cmd->callback([ns, levels, out, seed, timings] {
    auto nlist = parse_node_list(*ns);
    auto llist = parse_node_list(*levels);
    std::vector<uint32_t> lv(llist.begin(), llist.end());
    auto rows = sweep_line(nlist, lv, *seed, *timings);
    with_output(*out, [&](std::ostream& o) { write_csv(o, rows); });
  });
}

void cmd_sweep_imhf(CLI::App& app) {
  auto* cmd = app.add_subcommand("sweep-imhf", "attack costs over seeded sampled graphs");
  auto family = std::make_shared<std::string>();
  auto ns = std::make_shared<std::string>();
  auto seeds = std::make_shared<uint32_t>(1);
  auto seed0 = std::make_shared<uint64_t>(0);
  auto out = std::make_shared<std::string>("-");
  auto timings = std::make_shared<bool>(false);
  cmd->add_option("--family", *family, "argon2i_a|argon2i_b|drsample")->required();
  cmd->add_option("--n", *ns, "comma-separated node counts")->required();
  cmd->add_option("--seeds", *seeds, "instances per n");
  cmd->add_option("--seed0", *seed0, "first instance seed");
  cmd->add_option("-o,--out", *out, "CSV path ('-' = stdout)");
  cmd->add_flag("--timings", *timings, "fill wall_ms (breaks byte reproducibility)");
  cmd->callback([family, ns, seeds, seed0, out, timings] {
    auto rows = sweep_imhf(parse_family(*family), parse_node_list(*ns), *seeds, *seed0, *timings);
    with_output(*out, [&](std::ostream& o) { write_csv(o, rows); });
  });
}

void cmd_reduce(CLI::App& app) {
  auto* cmd = app.add_subcommand("reduce", "compute a layered depth-reducing set");
  auto graph = std::make_shared<std::string>();
  auto lambda = std::make_shared<uint32_t>(0);
  auto d_prime = std::make_shared<uint32_t>(0);
  auto autof = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>("-");
  cmd->add_option("--graph", *graph, "graph file")->required();
  cmd->add_option("--lambda", *lambda, "layer count");
  cmd->add_option("--d-prime", *d_prime, "in-layer spacing");
  cmd->add_option("--auto", *autof, "use tuned parameters: argon2i_a|argon2i_b");
  cmd->add_option("-o,--out", *out, "drset path ('-' = stdout)");
  cmd->callback([graph, lambda, d_prime, autof, out] {
    Dag g = read_dag_file(*graph);
    uint32_t l = *lambda, dp = *d_prime;
    if (!autof->empty()) {
      LayerParams p = corollary_params(parse_family(*autof), g.size());
      l = p.lambda;
      dp = p.d_prime;
    }
    if (l < 1 || dp < 1)
      throw CLI::ValidationError("need --lambda and --d-prime, or --auto");
    DepthReducingSet s = reduce_layered(g, l, dp);
    std::cerr << "e=" << s.e << " d=" << s.d << " lambda=" << s.lambda
              << " d_prime=" << s.d_prime << " verified=" << (s.verified ? "yes" : "no") << "\n";
    DrsetFile f{g.size(), s.d, s.nodes};
    with_output(*out, [&](std::ostream& o) { write_drset(o, f); });
  });
}

void cmd_oracle(CLI::App& app) {
  auto* cmd = app.add_subcommand("oracle", "exact searches over small graphs");
  auto graph = std::make_shared<std::string>();
  auto target = std::make_shared<std::string>("sinks");
  auto objective = std::make_shared<std::string>("time");
  auto cap = std::make_shared<uint32_t>(0);
  auto classical = std::make_shared<bool>(false);
  auto emit = std::make_shared<std::string>();
  cmd->add_option("--graph", *graph, "graph file")->required();
  cmd->add_option("--target", *target, "'sinks' or comma-separated ids");
  cmd->add_option("--objective", *objective, "time|st|cc");
  cmd->add_option("--space-cap", *cap, "configuration size bound (objective time/cc)");
  cmd->add_flag("--classical", *classical, "classical instead of quantum rules");
  cmd->add_option("--emit-witness", *emit, "write an optimal trace");
  cmd->callback([graph, target, objective, cap, classical, emit] {
    Dag g = read_dag_file(*graph);
    NodeSet t(g.size());
    if (*target == "sinks") {
      for (Node s : g.sinks()) t.add(s);
    } else {
      for (Node v : parse_node_list(*target)) {
        if (v < 1 || v > g.size()) throw CLI::ValidationError("target node out of range");
        t.add(v);
      }
    }
    Model model = *classical ? Model::classical : Model::quantum;
    const PebbleTrace* witness = nullptr;
    TimeSearch ts;
    SpaceTimeSearch sts;
    CcSearch cs;
    if (*objective == "time") {
      if (*cap < 1) throw CLI::ValidationError("--space-cap required for objective time");
      ts = optimal_time(g, t, *cap, model);
      if (!ts.reachable) {
        std::cout << "unreachable\n";
        return;
      }
      std::cout << "time=" << ts.time << "\n";
      witness = &ts.witness;
    } else if (*objective == "st") {
      sts = optimal_space_time(g, t, model);
      if (!sts.reachable) {
        std::cout << "unreachable\n";
        return;
      }
      std::cout << "space=" << sts.space << "\ntime=" << sts.time << "\nst=" << sts.space_time
                << "\n";
      witness = &sts.witness;
    } else if (*objective == "cc") {
      cs = optimal_cumulative(g, t, *cap, model);
      if (!cs.reachable) {
        std::cout << "unreachable\n";
        return;
      }
      std::cout << "cc=" << cs.cumulative << "\n";
      witness = &cs.witness;
    } else {
      throw CLI::ValidationError("--objective must be time, st, or cc");
    }
    if (!emit->empty() && witness) write_trace_file(*emit, *witness);
  });
}

void cmd_grover(CLI::App& app) {
  auto* cmd = app.add_subcommand("grover", "square-root search cost from a pebbling st");
  auto st = std::make_shared<uint64_t>(0);
  auto trace = std::make_shared<std::string>();
  auto bits = std::make_shared<uint32_t>(0);
  auto sto = cmd->add_option("--st", *st, "space-time product per evaluation");
  auto tro = cmd->add_option("--trace", *trace, "trace file to take st from");
  cmd->add_option("--domain-bits", *bits, "log2 of the search domain size")->required();
  sto->excludes(tro);
  cmd->callback([st, trace, bits] {
    uint64_t v = *st;
    if (!trace->empty()) v = cost(read_trace_file(*trace)).space_time;
    if (v == 0) throw CLI::ValidationError("need --st or --trace");
    GroverEstimate e = grover_estimate(v, *bits);
    std::cout << "st=" << e.space_time << "\n"
              << "domain_bits=" << e.domain_bits << "\n";
    double total = e.total;
    if (total == std::floor(total) && total < 1e18)
      std::cout << "total_st=" << static_cast<uint64_t>(total) << "\n";
    else {
      std::ostringstream os;
      os.precision(6);
      os << total;
      std::cout << "total_st=" << os.str() << "\n";
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel quantum pebbling toolkit"};
  app.require_subcommand(1);
  cmd_gen(app);
  cmd_attack(app);
  cmd_verify(app);
  cmd_cost(app);
  cmd_sweep_line(app);
  cmd_sweep_imhf(app);
  cmd_reduce(app);
  cmd_oracle(app);
  cmd_grover(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
