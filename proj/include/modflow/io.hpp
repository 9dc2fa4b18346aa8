#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modflow/multigraph.hpp"
#include "modflow/orient.hpp"
#include "modflow/planar.hpp"
#include "modflow/reduce.hpp"
#include "modflow/weights.hpp"

namespace modflow {

/// Malformed input; line() is 1-based, 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Text formats. Blank lines and text after '#' are ignored everywhere.
//   graph:       mg <n>            then   c <u> <v> <mult>
//   orientation: orient <m>        then   net <u> <v> <o>   [beta <b0> ... <bn-1>]
//   flow:        flow <m>          then   val <u> <v> <copy> <value> uv|vu
//   partition:   part <n>: <b0> <b1> ...
//   rotation:    rot <v>: <u>:<copy> ...   (one line per vertex, clockwise)
//   trace:       trace <m>         then   one `step <kind> ...` line per reduction

Multigraph parse_graph(std::istream& in);
std::string format_graph(const Multigraph& g);

struct OrientationFile {
  OrientationCertificate certificate;
  std::optional<std::vector<int>> beta;
};
OrientationFile parse_orientation(std::istream& in);
std::string format_orientation(const OrientationCertificate& cert, const std::vector<int>* beta = nullptr);

ZFlow parse_flow(std::istream& in);
std::string format_flow(const ZFlow& flow);

Partition parse_partition(std::istream& in);
std::string format_partition(const Partition& p);

RotationSystem parse_rotation(std::istream& in, const Multigraph& g);
std::string format_rotation(const RotationSystem& r);

struct TraceFile {
  int modulus = 0;
  /// Steps carry parameters and leaf certificates only; replay_trace
  /// rebuilds the graphs.
  std::vector<ReductionStep> steps;
};
TraceFile parse_trace(std::istream& in);
std::string format_trace(int modulus, const std::vector<ReductionStep>& steps);

/// Reads a whole file; throws ParseError (line 0) if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace modflow
