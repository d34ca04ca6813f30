#include "qpebble/io.hpp"

#include <fstream>
#include <sstream>

namespace qpebble {

namespace {

// Strict unsigned parse of a whole token.
bool parse_u64(const std::string& tok, uint64_t& out) {
  if (tok.empty()) return false;
  uint64_t v = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9') return false;
    if (v > (~uint64_t{0} - (ch - '0')) / 10) return false;
    v = v * 10 + (ch - '0');
  }
  out = v;
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

// Ascending node ids from a whitespace-separated line tail.
std::vector<Node> parse_id_list(std::span<const std::string> toks, Node n, size_t lineno) {
  std::vector<Node> out;
  Node prev = 0;
  for (const auto& t : toks) {
    uint64_t v;
    if (!parse_u64(t, v)) throw ParseError(lineno, "bad node id '" + t + "'");
    if (v < 1 || v > n) throw ParseError(lineno, "node out of range");
    if (v <= prev) throw ParseError(lineno, "node ids not strictly ascending");
    prev = static_cast<Node>(v);
    out.push_back(prev);
  }
  return out;
}

bool next_line(std::istream& in, std::string& line, size_t& lineno) {
  if (!std::getline(in, line)) return false;
  ++lineno;
  return true;
}

}  // namespace

Dag read_dag(std::istream& in) {
  std::string line;
  size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError(1, "missing header");
  auto toks = split_ws(line);
  uint64_t n;
  if (toks.size() != 3 || toks[0] != "pebble-dag" || toks[1] != "v1" || !parse_u64(toks[2], n) ||
      n < 1)
    throw ParseError(lineno, "expected header 'pebble-dag v1 <n>'");

  std::vector<std::pair<Node, Node>> edges;
  std::pair<Node, Node> prev{0, 0};
  while (next_line(in, line, lineno)) {
    auto et = split_ws(line);
    if (et.empty()) throw ParseError(lineno, "blank line");
    uint64_t u, v;
    if (et.size() != 2 || !parse_u64(et[0], u) || !parse_u64(et[1], v))
      throw ParseError(lineno, "expected edge '<u> <v>'");
    if (u < 1 || v > n) throw ParseError(lineno, "node out of range");
    if (u >= v) throw ParseError(lineno, "edge not forward");
    std::pair<Node, Node> e{static_cast<Node>(u), static_cast<Node>(v)};
    if (!(prev < e))
      throw ParseError(lineno, prev == e ? "duplicate edge" : "edges not sorted");
    prev = e;
    edges.push_back(e);
  }
  return Dag::from_edges(static_cast<Node>(n), std::move(edges));
}

void write_dag(std::ostream& out, const Dag& g) {
  out << "pebble-dag v1 " << g.size() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

PebbleTrace read_trace(std::istream& in) {
  std::string line;
  size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError(1, "missing header");
  auto toks = split_ws(line);
  uint64_t n, t;
  if (toks.size() != 4 || toks[0] != "pebble-trace" || toks[1] != "v1" ||
      !parse_u64(toks[2], n) || !parse_u64(toks[3], t) || n < 1)
    throw ParseError(lineno, "expected header 'pebble-trace v1 <n> <t>'");

  std::vector<NodeSet> configs;
  configs.reserve(t + 1);
  for (uint64_t k = 0; k <= t; ++k) {
    if (!next_line(in, line, lineno))
      throw ParseError(lineno + 1, "missing configuration line");
    auto ids = parse_id_list(split_ws(line), static_cast<Node>(n), lineno);
    if (k == 0 && !ids.empty()) throw ParseError(lineno, "P_0 must be empty");
    configs.push_back(NodeSet::from_sorted(static_cast<Node>(n), ids));
  }
  if (!next_line(in, line, lineno)) throw ParseError(lineno + 1, "missing target line");
  auto ttoks = split_ws(line);
  if (ttoks.empty() || ttoks[0] != "target:")
    throw ParseError(lineno, "expected 'target: <ids>'");
  auto tids = parse_id_list(std::span(ttoks).subspan(1), static_cast<Node>(n), lineno);
  if (next_line(in, line, lineno)) throw ParseError(lineno, "trailing content");
  return PebbleTrace::create(static_cast<Node>(n), std::move(configs),
                             NodeSet::from_sorted(static_cast<Node>(n), tids));
}

void write_trace(std::ostream& out, const PebbleTrace& trace) {
  out << "pebble-trace v1 " << trace.n << " " << trace.time() << "\n";
  for (const auto& c : trace.configs) {
    bool first = true;
    c.for_each([&](Node v) {
      if (!first) out << " ";
      out << v;
      first = false;
    });
    out << "\n";
  }
  out << "target:";
  trace.target.for_each([&](Node v) { out << " " << v; });
  out << "\n";
}

DrsetFile read_drset(std::istream& in) {
  std::string line;
  size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError(1, "missing header");
  auto toks = split_ws(line);
  uint64_t n, d;
  if (toks.size() != 4 || toks[0] != "pebble-drset" || toks[1] != "v1" ||
      !parse_u64(toks[2], n) || !parse_u64(toks[3], d) || n < 1)
    throw ParseError(lineno, "expected header 'pebble-drset v1 <n> <d>'");
  DrsetFile f;
  f.n = static_cast<Node>(n);
  f.d = static_cast<uint32_t>(d);
  Node prev = 0;
  while (next_line(in, line, lineno)) {
    auto et = split_ws(line);
    uint64_t v;
    if (et.size() != 1 || !parse_u64(et[0], v))
      throw ParseError(lineno, "expected one node id per line");
    if (v < 1 || v > n) throw ParseError(lineno, "node out of range");
    if (v <= prev) throw ParseError(lineno, "node ids not strictly ascending");
    prev = static_cast<Node>(v);
    f.nodes.push_back(prev);
  }
  return f;
}

void write_drset(std::ostream& out, const DrsetFile& s) {
  out << "pebble-drset v1 " << s.n << " " << s.d << "\n";
  for (Node v : s.nodes) out << v << "\n";
}

namespace {

template <class T, class Reader>
T read_file(const std::string& path, Reader&& rd) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  return rd(f);
}

template <class T, class Writer>
void write_file(const std::string& path, const T& obj, Writer&& wr) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  wr(f, obj);
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace

Dag read_dag_file(const std::string& path) {
  return read_file<Dag>(path, [](std::istream& in) { return read_dag(in); });
}
void write_dag_file(const std::string& path, const Dag& g) {
  write_file(path, g, [](std::ostream& o, const Dag& x) { write_dag(o, x); });
}
PebbleTrace read_trace_file(const std::string& path) {
  return read_file<PebbleTrace>(path, [](std::istream& in) { return read_trace(in); });
}
void write_trace_file(const std::string& path, const PebbleTrace& trace) {
  write_file(path, trace, [](std::ostream& o, const PebbleTrace& x) { write_trace(o, x); });
}
DrsetFile read_drset_file(const std::string& path) {
  return read_file<DrsetFile>(path, [](std::istream& in) { return read_drset(in); });
}
void write_drset_file(const std::string& path, const DrsetFile& s) {
  write_file(path, s, [](std::ostream& o, const DrsetFile& x) { write_drset(o, x); });
}

}  // namespace qpebble
