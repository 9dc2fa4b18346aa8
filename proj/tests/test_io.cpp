#include <sstream>

#include "doctest.h"
#include "modflow/catalog.hpp"
#include "modflow/io.hpp"

using namespace modflow;

namespace {

template <class F>
auto parse(F f, const std::string& text) {
  std::istringstream in(text);
  return f(in);
}

int error_line(const std::string& text, Multigraph (*f)(std::istream&)) {
  try {
    parse(f, text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("graph round trip and errors") {
  Multigraph g = triangle_graph(2, 3, 3);
  std::string text = format_graph(g);
  CHECK(parse(parse_graph, text) == g);
  CHECK(parse(parse_graph, "# comment\nmg 3\n\nc 0 1 2  # two copies\nc 2 1 1\n") ==
        Multigraph(3, {{0, 1, 2}, {1, 2, 1}}));

  CHECK(error_line("mg 3\nc 0 1 2\nc 1 0 1\n", parse_graph) == 3);
  CHECK(error_line("mg 3\nc 0 3 1\n", parse_graph) == 2);
  CHECK(error_line("mg 3\nc 0 0 1\n", parse_graph) == 2);
  CHECK(error_line("mg 3\nc 0 1 0\n", parse_graph) == 2);
  CHECK(error_line("mg 3\nc 0 1 x\n", parse_graph) == 2);
  CHECK(error_line("mg 3\nedge 0 1 1\n", parse_graph) == 2);
  CHECK(error_line("graph 3\n", parse_graph) == 1);
  CHECK(error_line("", parse_graph) == 0);
}

TEST_CASE("orientation round trip") {
  OrientationCertificate cert{5, {{VertexPair(0, 1), 3}, {VertexPair(1, 2), -1}}};
  std::vector<int> beta = {3, 1, 1};
  auto f = parse(parse_orientation, format_orientation(cert, &beta));
  CHECK(f.certificate == cert);
  REQUIRE(f.beta);
  CHECK(*f.beta == beta);

  // Written from the larger endpoint the net flips sign.
  auto g = parse(parse_orientation, "orient 5\nnet 1 0 3\n");
  CHECK(g.certificate.net.at(VertexPair(0, 1)) == -3);
  CHECK_FALSE(parse(parse_orientation, "orient 5\n").beta);

  CHECK_THROWS_AS(parse(parse_orientation, "orient 4\n"), ParseError);
  CHECK_THROWS_AS(parse(parse_orientation, "orient 5\nnet 0 1 1\nnet 1 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse(parse_orientation, "orient 5\nbeta 0\nbeta 0\n"), ParseError);
}

TEST_CASE("flow round trip") {
  ZFlow flow;
  flow.modulus = 5;
  flow.values = {{VertexPair(0, 1), 0, 2, Direction::kForward}, {VertexPair(0, 1), 1, 3, Direction::kBackward}};
  auto back = parse(parse_flow, format_flow(flow));
  REQUIRE(back.values.size() == 2);
  CHECK(back.modulus == 5);
  CHECK(back.values[1].value == 3);
  CHECK(back.values[1].dir == Direction::kBackward);

  auto rev = parse(parse_flow, "flow 5\nval 1 0 0 2 uv\n");
  CHECK(rev.values[0].edge == VertexPair(0, 1));
  CHECK(rev.values[0].dir == Direction::kBackward);
  CHECK_THROWS_AS(parse(parse_flow, "flow 5\nval 0 1 0 2 up\n"), ParseError);
}

TEST_CASE("partition round trip") {
  Partition p({0, 0, 1, 2, 1});
  CHECK(format_partition(p) == "part 5: 0 0 1 2 1\n");
  CHECK(parse(parse_partition, format_partition(p)) == p);
  CHECK_THROWS_AS(parse(parse_partition, "part 3: 0 2 1\n"), ParseError);
  CHECK_THROWS_AS(parse(parse_partition, "part 3: 0 1\n"), ParseError);
}

TEST_CASE("rotation round trip") {
  RotationSystem r = kcycle_embedding(3, 4);
  auto text = format_rotation(r);
  std::istringstream in(text);
  RotationSystem back = parse_rotation(in, r.graph());
  CHECK(back.order() == r.order());

  std::istringstream bad("rot 0: 1:0 1:1\nrot 0: 1:0\n");
  CHECK_THROWS_AS(parse_rotation(bad, Multigraph(2, {{0, 1, 2}})), ParseError);

  // 2K2 needs both copies listed at each end.
  std::istringstream missing("rot 0: 1:0\nrot 1: 0:0 0:1\n");
  CHECK_THROWS_AS(parse_rotation(missing, Multigraph(2, {{0, 1, 2}})), ParseError);
}

TEST_CASE("trace round trip") {
  ReductionStep lift;
  lift.kind = StepKind::kLiftFirst;
  lift.label = "T(2,3,3)";
  lift.paths = {{0, 3, 2}, {2, 4, 1}};
  lift.vertices = {0, 1, 2};
  lift.copies = {{VertexPair(0, 1), 2}, {VertexPair(0, 2), 3}, {VertexPair(1, 2), 3}};
  ReductionStep split;
  split.kind = StepKind::kLiftSecond;
  split.vertex = 4;
  split.paths = {{0, 4, 1}};
  split.oriented = {{2, 1}, {3, -1}};
  ReductionStep base;
  base.kind = StepKind::kBase;
  base.nodes = 17;
  base.certificate = OrientationCertificate{5, {{VertexPair(0, 1), 4}, {VertexPair(1, 2), -1}}};

  std::vector<ReductionStep> steps = {lift, split, base};
  std::string text = format_trace(5, steps);
  std::istringstream in(text);
  TraceFile t = parse_trace(in);
  CHECK(t.modulus == 5);
  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[0].kind == StepKind::kLiftFirst);
  CHECK(t.steps[0].label == lift.label);
  CHECK(t.steps[0].paths == lift.paths);
  CHECK(t.steps[0].vertices == lift.vertices);
  CHECK(t.steps[0].copies == lift.copies);
  CHECK(t.steps[1].vertex == 4);
  CHECK(t.steps[1].paths == split.paths);
  CHECK(t.steps[1].oriented == split.oriented);
  CHECK(t.steps[2].nodes == 17);
  REQUIRE(t.steps[2].certificate);
  CHECK(*t.steps[2].certificate == *base.certificate);
  CHECK(format_trace(5, t.steps) == text);

  std::istringstream bad("trace 5\nstep jump\n");
  CHECK_THROWS_AS(parse_trace(bad), ParseError);
}
