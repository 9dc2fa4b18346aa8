#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "modflow/catalog.hpp"
#include "modflow/planar.hpp"

using namespace modflow;

namespace {

// Face count expected from Euler for a connected plane multigraph.
long long euler_faces(const Multigraph& g) { return 2 - g.vertex_count() + g.edge_count(); }

std::map<int, int> length_histogram(const std::vector<Face>& fs) {
  std::map<int, int> h;
  for (const auto& f : fs) ++h[f.length()];
  return h;
}

void check_faces_cover_darts(const RotationSystem& r) {
  auto fs = faces(r);
  CHECK(static_cast<long long>(fs.size()) == euler_faces(r.graph()));
  std::set<int> darts;
  int total = 0;
  for (const auto& f : fs) {
    total += f.length();
    darts.insert(f.darts.begin(), f.darts.end());
  }
  CHECK(total == 2 * r.graph().edge_count());
  CHECK(static_cast<int>(darts.size()) == total);
}

}  // namespace

TEST_CASE("faces of a multiplied cycle") {
  for (int n = 3; n <= 6; ++n) {
    for (int k = 1; k <= 4; ++k) {
      auto r = kcycle_embedding(k, n);
      check_faces_cover_darts(r);
      auto h = length_histogram(faces(r));
      CHECK(h[n] == 2);
      CHECK(h[2] == n * (k - 1));
    }
  }
  auto c = trace_faces(kcycle_embedding(5, 4));
  for (const auto& f : c.faces) {
    if (f.length() == 4) CHECK(f.profile == std::vector<int>{5, 5, 5, 5});
  }
  CHECK(c.strings.links.size() == 4);
  for (const auto& l : c.strings.links) CHECK(l.two_faces.size() == 4);
}

TEST_CASE("parallel class alone is one closed string") {
  auto r = kcycle_embedding(3, 2);
  auto fs = trace_faces(r);
  CHECK(fs.faces.size() == 6);
  CHECK(fs.strings.links.empty());
  REQUIRE(fs.strings.closed_strings.size() == 1);
  CHECK(fs.strings.closed_strings[0].size() == 6);
}

TEST_CASE("invalid rotation systems are rejected") {
  Multigraph k4 = kcomplete(1, 4);
  // Same cyclic order everywhere is not planar for K4.
  CHECK_THROWS_AS(RotationSystem::from_neighbor_order(k4, {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}),
                  InvalidEmbedding);
  Multigraph g = kcycle(2, 3);
  VertexPair a(0, 1), b(0, 2), c(1, 2);
  // Copies of 0-1 split by a 0-2 copy.
  std::vector<std::vector<EdgeCopy>> bad = {{{a, 0}, {b, 0}, {a, 1}, {b, 1}},
                                            {{a, 1}, {a, 0}, {c, 0}, {c, 1}},
                                            {{b, 0}, {b, 1}, {c, 1}, {c, 0}}};
  CHECK_THROWS_AS(RotationSystem(g, bad), InvalidEmbedding);
  std::vector<std::vector<EdgeCopy>> missing = {{{a, 0}, {b, 0}}, {{a, 0}, {c, 0}}, {{b, 0}, {c, 0}}};
  CHECK_THROWS_AS(RotationSystem(g, missing), InvalidEmbedding);
}

TEST_CASE("generators give triangulations") {
  auto tet = from_triangles(4, tetrahedron_triangles());
  CHECK(tet.graph() == kcomplete(1, 4));
  CHECK(length_histogram(faces(tet)) == std::map<int, int>{{3, 4}});
  for (int k = 3; k <= 7; ++k) {
    auto b = from_triangles(k + 2, bipyramid_triangles(k));
    CHECK(b.graph().edge_count() == 3 * k);
    CHECK(length_histogram(faces(b)) == std::map<int, int>{{3, 2 * k}});
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    int n = 4 + static_cast<int>(seed % 9);
    auto r = from_triangles(n, random_triangulation(n, seed));
    CHECK(r.graph().edge_count() == 3 * n - 6);
    CHECK(r.graph().max_multiplicity() == 1);
    CHECK(length_histogram(faces(r)) == std::map<int, int>{{3, 2 * n - 4}});
    auto rep = replicate(r, 3);
    check_faces_cover_darts(rep);
    CHECK(length_histogram(faces(rep))[2] == 2 * r.graph().edge_count());
  }
}

TEST_CASE("discharging conserves charge") {
  std::vector<RotationSystem> cases = {kcycle_embedding(5, 4), kcycle_embedding(3, 5),
                                       replicate(from_triangles(4, tetrahedron_triangles()), 2),
                                       replicate(from_triangles(6, bipyramid_triangles(4)), 3)};
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    int n = 5 + static_cast<int>(seed);
    cases.push_back(replicate(from_triangles(n, random_triangulation(n, seed)), 1 + static_cast<int>(seed % 3)));
  }
  for (const auto& r : cases) {
    for (auto rules : {Ruleset::kZ5, Ruleset::kZ7}) {
      auto d = discharge(r, rules);
      CHECK(d.ledger.total_initial() == Rational(2 * r.graph().edge_count()));
      CHECK(d.ledger.total_final() == d.ledger.total_initial());
      std::vector<Rational> replay = d.ledger.initial;
      for (const auto& t : d.ledger.transfers) {
        CHECK(t.amount > 0);
        replay[t.from] -= t.amount;
        replay[t.to] += t.amount;
      }
      CHECK(replay == d.ledger.final_charge);
    }
  }
}

TEST_CASE("discharging worked values") {
  // K4 with one edge doubled: the two triangles beside the 2-face are (2,1,1).
  Multigraph g = kcomplete(1, 4);
  g.add_edges(0, 1);
  auto r = RotationSystem::from_neighbor_order(g, {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}});
  auto fs = trace_faces(r);
  int two_one_one = 0;
  for (const auto& f : fs.faces) {
    if (f.length() == 3 && f.profile_type() == std::vector<int>{2, 1, 1}) ++two_one_one;
  }
  CHECK(two_one_one == 2);
  auto d = discharge(r, Ruleset::kZ5);
  for (const auto& f : fs.faces) {
    Rational expect = f.length() == 2 ? Rational(22, 9)
                      : f.profile_type() == std::vector<int>{2, 1, 1} ? Rational(25, 9)
                                                                      : Rational(3);
    CHECK(d.ledger.final_charge[f.id] == expect);
  }
  CHECK(d.min_final == Rational(22, 9));
  CHECK(d.below_target.empty());

  // Doubled tetrahedron: every triangle is (2,2,2) and no rule feeds it.
  auto tet2 = replicate(from_triangles(4, tetrahedron_triangles()), 2);
  auto d2 = discharge(tet2, Ruleset::kZ5);
  for (const auto& f : faces(tet2)) {
    if (f.length() == 3) CHECK(d2.ledger.final_charge[f.id] == Rational(3) - Rational(6, 9));
  }
  CHECK(d2.min_final == Rational(7, 3));
  CHECK(d2.below_target.size() == 4);

  // Z7 on 5C4: each 4-face sends 2/15 into four 2-faces per side.
  auto d7 = discharge(kcycle_embedding(5, 4), Ruleset::kZ7);
  for (const auto& f : faces(kcycle_embedding(5, 4))) {
    Rational expect = f.length() == 2 ? Rational(2) + Rational(4, 15) : Rational(4) - Rational(32, 15);
    CHECK(d7.ledger.final_charge[f.id] == expect);
  }
}

TEST_CASE("Z7 rules on a tripled tetrahedron") {
  // No 4+-faces and no triangle above target, so only the first rule fires.
  auto r = replicate(from_triangles(4, tetrahedron_triangles()), 3);
  auto d = discharge(r, Ruleset::kZ7);
  for (const auto& f : faces(r)) {
    if (f.length() == 3) CHECK(d.ledger.final_charge[f.id] == Rational(3) - Rational(12, 15));
  }
  for (const auto& t : d.ledger.transfers) CHECK(t.rule == "R1");
}

TEST_CASE("Z7 third rule passes excess to a poor triangle") {
  // Tetrahedron with the edges of triangle 1,2,3 tripled: that triangle is
  // (3,3,3) at 33/15, the other three are (3,1,1) at 41/15.
  Multigraph g = kcomplete(1, 4);
  g.add_edges(1, 2, 2);
  g.add_edges(2, 3, 2);
  g.add_edges(1, 3, 2);
  auto r = RotationSystem::from_neighbor_order(g, {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}});
  auto d = discharge(r, Ruleset::kZ7);
  int r3 = 0;
  for (const auto& t : d.ledger.transfers) {
    if (t.rule != "R3") continue;
    ++r3;
    CHECK(t.amount == Rational(7, 15));
  }
  CHECK(r3 == 3);
  for (const auto& f : faces(r)) {
    if (f.length() != 3) continue;
    Rational expect = f.profile_type() == std::vector<int>{3, 3, 3} ? Rational(54, 15) : Rational(34, 15);
    CHECK(d.ledger.final_charge[f.id] == expect);
  }
}

TEST_CASE("charge bound") {
  auto r = kcycle_embedding(5, 4);
  auto b = charge_bound(r, Ruleset::kZ5);
  CHECK(b.total_length == 40);
  CHECK(b.bound == Rational(22, 9) * 18 - Rational(2, 3));
  CHECK(b.holds);
  auto tet = from_triangles(4, tetrahedron_triangles());
  CHECK_THROWS_AS(charge_bound(tet, Ruleset::kZ5), PreconditionFailed);
  CHECK_THROWS_AS(charge_bound(tet, Ruleset::kZ7), PreconditionFailed);
  auto b7 = charge_bound(replicate(tet, 4), Ruleset::kZ7);
  CHECK(b7.total_length == 48);
  CHECK(b7.holds == (Rational(48) <= Rational(34, 15) * 22 - Rational(2, 5)));
}

TEST_CASE("plane graph operations keep the embedding plane") {
  auto base = replicate(from_triangles(6, bipyramid_triangles(4)), 2).plane();
  CHECK(base.euler_ok());
  for (Vertex v = 0; v < base.vertex_count(); ++v) {
    for (int pos = 0; pos < static_cast<int>(base.rotation(v).size()); ++pos) {
      int d1 = base.rotation(v)[pos];
      int d2 = base.rotation(v)[(pos + 1) % base.rotation(v).size()];
      auto lifted = base.lift_successive(v, pos);
      lifted.check_consistent();
      CHECK(lifted.euler_ok());
      if (base.head(d1) == base.head(d2)) {
        Multigraph expect = base.graph();
        expect.remove_edges(v, base.head(d1), 2);
        CHECK(lifted.graph() == expect);
      } else {
        CHECK(lifted.graph() == lift(base.graph(), v, base.head(d1), base.head(d2)));
      }
    }
  }
  std::vector<std::vector<Vertex>> sets = {{0, 1}, {0, 4}, {1, 2, 4}, {2, 3, 4, 5}};
  for (const auto& s : sets) {
    auto c = base.contracted(s);
    c.check_consistent();
    CHECK(c.euler_ok());
    CHECK(c.graph() == contract(base.graph(), s).graph);
  }
  CHECK_THROWS_AS(base.contracted(std::vector<Vertex>{4, 5}), std::invalid_argument);

  std::vector<Vertex> path = {0, 1, 4};
  auto p = base.lift_path_beside(path);
  p.check_consistent();
  CHECK(p.euler_ok());
  CHECK(p.graph().multiplicity(0, 4) == 3);
  CHECK(p.graph().multiplicity(1, 4) == 1);
  CHECK(p.graph().multiplicity(0, 1) == 1);
  std::vector<Vertex> no_copy = {4, 0, 5};
  CHECK_THROWS_AS(base.lift_path_beside(no_copy), std::invalid_argument);

  PlaneGraph iso(3);
  iso.add_edge(0, 2);
  iso.set_rotation(0, {0});
  iso.set_rotation(2, {1});
  auto w = iso.without_vertex(1);
  CHECK(w.vertex_count() == 2);
  CHECK(w.graph() == parallel_graph(1));
}

TEST_CASE("embedding search") {
  CHECK(find_embedding(kcomplete(2, 4)).has_value());
  CHECK(find_embedding(kcycle(3, 6)).has_value());
  CHECK_FALSE(find_embedding(kcomplete(1, 5)).has_value());
  Multigraph k33(6);
  for (Vertex a = 0; a < 3; ++a) {
    for (Vertex b = 3; b < 6; ++b) k33.add_edges(a, b);
  }
  CHECK_FALSE(find_embedding(k33).has_value());
  auto oct = from_triangles(6, bipyramid_triangles(4)).graph();
  auto found = find_embedding(scale(oct, 2));
  REQUIRE(found);
  check_faces_cover_darts(*found);
  CHECK_FALSE(find_embedding(kcomplete(1, 6), 10).has_value());
}
