#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpebble/dag.hpp"
#include "qpebble/trace.hpp"

namespace qpebble {

// Malformed input file. `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Failed to open/read/write a path.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph format:
//   pebble-dag v1 <n>
//   <u> <v>          one line per edge, u < v, sorted by (u, v)
Dag read_dag(std::istream& in);
void write_dag(std::ostream& out, const Dag& g);
Dag read_dag_file(const std::string& path);
void write_dag_file(const std::string& path, const Dag& g);

// Trace format:
//   pebble-trace v1 <n> <t>
//   t + 1 lines of ascending node ids (line k is P_k; empty line = empty set)
//   target: <ids>
PebbleTrace read_trace(std::istream& in);
void write_trace(std::ostream& out, const PebbleTrace& trace);
PebbleTrace read_trace_file(const std::string& path);
void write_trace_file(const std::string& path, const PebbleTrace& trace);

// Depth-reducing set format:
//   pebble-drset v1 <n> <d>
//   one node id per line, ascending
struct DrsetFile {
  Node n = 0;
  uint32_t d = 0;
  std::vector<Node> nodes;
};
DrsetFile read_drset(std::istream& in);
void write_drset(std::ostream& out, const DrsetFile& s);
DrsetFile read_drset_file(const std::string& path);
void write_drset_file(const std::string& path, const DrsetFile& s);

}  // namespace qpebble
