#include <random>
#include <stdexcept>

#include "doctest.h"
#include "modflow/catalog.hpp"
#include "modflow/orient.hpp"

using namespace modflow;

namespace {

// Enumerates every net assignment directly; no pruning.
bool brute_achievable(const Multigraph& g, const Boundary& beta) {
  std::vector<std::pair<VertexPair, int>> cls(g.classes().begin(), g.classes().end());
  std::vector<int> out(g.vertex_count(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == cls.size()) {
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (mod(out[v], beta.modulus()) != beta[v]) return false;
      }
      return true;
    }
    auto [pair, m] = cls[i];
    for (int o = -m; o <= m; o += 2) {
      out[pair.u] += o;
      out[pair.v] -= o;
      bool ok = self(self, i + 1);
      out[pair.u] -= o;
      out[pair.v] += o;
      if (ok) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

Multigraph random_graph(std::mt19937& rng, int n, int max_mult) {
  Multigraph g(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (rng() % 3 != 0) g.add_edges(a, b, 1 + static_cast<int>(rng() % max_mult));
    }
  }
  return g;
}

OrientationCertificate cert_of(const Verdict<OrientationCertificate>& v) {
  REQUIRE(std::holds_alternative<OrientationCertificate>(v));
  return std::get<OrientationCertificate>(v);
}

StrongResult strong_of(const Verdict<StrongResult>& v) {
  REQUIRE(std::holds_alternative<StrongResult>(v));
  return std::get<StrongResult>(v);
}

}  // namespace

TEST_CASE("boundary validation") {
  CHECK_THROWS_AS(Boundary(4, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Boundary(1, {0}), std::invalid_argument);
  CHECK_THROWS_AS(Boundary(5, {1, 1}), std::invalid_argument);
  Boundary b(5, {-1, 1});
  CHECK(b[0] == 4);
  CHECK(b.negated() == Boundary(5, {1, 4}));
}

TEST_CASE("beta_orientation examples") {
  auto r = beta_orientation(parallel_graph(2), Boundary(5, {1, 4}));
  REQUIRE(std::holds_alternative<Refutation>(r));
  CHECK(std::get<Refutation>(r).complete());

  const auto& c4 = cert_of(beta_orientation(parallel_graph(4), Boundary(5, {3, 2})));
  CHECK(c4.net.at({0, 1}) == -2);  // one copy out of v1, three in

  CHECK(cert_of(beta_orientation(Multigraph(1), Boundary(7, {0}))).net.empty());

  const auto& c6 = cert_of(beta_orientation(parallel_graph(6), Boundary(7, {4, 3})));
  CHECK(c6.net.at({0, 1}) == 4);  // five out, one in

  CHECK_THROWS_AS(beta_orientation(parallel_graph(2), Boundary(5, {0, 0, 0})), std::invalid_argument);
}

TEST_CASE("mod_orientation examples") {
  auto k4 = mod_orientation(kcomplete(1, 4), 2);
  REQUIRE(std::holds_alternative<Refutation>(k4));
  CHECK(std::get<Refutation>(k4).complete());
  CHECK(std::get<Refutation>(k4).search_space == 64);

  Multigraph c = kcycle(5, 4);
  CHECK(check_certificate(c, Boundary::zero(5, 4), cert_of(mod_orientation(c, 2))).ok());

  Multigraph t = triangle_graph(2, 2, 3);
  CHECK(check_certificate(t, Boundary::zero(5, 3), cert_of(mod_orientation(t, 2))).ok());
  CHECK_THROWS_AS(mod_orientation(t, 0), std::invalid_argument);
}

TEST_CASE("node limit gives a refusal, not a refutation") {
  auto v = mod_orientation(kcomplete(3, 4), 3, SearchLimits{3});
  CHECK(std::holds_alternative<Refusal>(v));
}

TEST_CASE("search agrees with brute force and certificates re-check") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + trial % 4;
    int m = trial % 2 ? 5 : 7;
    Multigraph g = random_graph(rng, n, 3);
    std::vector<int> vals(n);
    int sum = 0;
    for (int i = 0; i + 1 < n; ++i) {
      vals[i] = static_cast<int>(rng() % m);
      sum += vals[i];
    }
    vals[n - 1] = mod(-sum, m);
    Boundary beta(m, vals);
    auto v = beta_orientation(g, beta);
    bool expected = brute_achievable(g, beta);
    CHECK(std::holds_alternative<OrientationCertificate>(v) == expected);
    if (auto* c = std::get_if<OrientationCertificate>(&v)) {
      CHECK(check_certificate(g, beta, *c).ok());
    } else {
      CHECK(std::get<Refutation>(v).complete());
    }
    // Reversal symmetry.
    auto neg = beta_orientation(g, beta.negated());
    CHECK(std::holds_alternative<OrientationCertificate>(neg) == expected);
  }
}

TEST_CASE("check_certificate reports problems") {
  Multigraph c = kcycle(5, 4);
  OrientationCertificate cert = cert_of(mod_orientation(c, 2));
  cert.net[{0, 1}] += 2;
  auto check = check_certificate(c, Boundary::zero(5, 4), cert);
  CHECK_FALSE(check.ok());
  REQUIRE(check.first_bad_vertex);
  CHECK(*check.first_bad_vertex == 0);

  OrientationCertificate parity = cert_of(mod_orientation(c, 2));
  parity.net[{0, 1}] = 2;
  CHECK_FALSE(check_certificate(c, Boundary::zero(5, 4), parity).ok());

  OrientationCertificate absent = cert_of(mod_orientation(c, 2));
  absent.net[{0, 2}] = 0;
  CHECK_FALSE(check_certificate(c, Boundary::zero(5, 4), absent).ok());
}

TEST_CASE("strong connectivity examples") {
  CHECK(strong_of(strongly_connected(parallel_graph(4), 5)).strongly_connected);
  auto k3 = strong_of(strongly_connected(parallel_graph(3), 5));
  CHECK_FALSE(k3.strongly_connected);
  CHECK(k3.witness == Boundary(5, {0, 0}));

  auto k34 = strong_of(strongly_connected(kcomplete(3, 4), 7));
  CHECK_FALSE(k34.strongly_connected);
  CHECK(k34.witness == Boundary::zero(7, 4));

  CHECK(strong_of(strongly_connected(catalog_graph(*parse_catalog_name("5C4=")), 7)).strongly_connected);

  Multigraph split(4, {{0, 1, 6}, {2, 3, 6}});
  auto s = strong_of(strongly_connected(split, 7));
  CHECK_FALSE(s.strongly_connected);
}

TEST_CASE("strong connectivity guard refuses") {
  StrongConfig config;
  config.max_vertices = 3;
  CHECK(std::holds_alternative<Refusal>(strongly_connected(kcomplete(2, 4), 5, config)));
  config = {};
  config.max_boundaries = 10;
  CHECK(std::holds_alternative<Refusal>(strongly_connected(kcomplete(2, 4), 5, config)));
}

TEST_CASE("DP and per-boundary search agree, witness is the least failing boundary") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 3;
    int m = trial % 2 ? 5 : 7;
    Multigraph g = random_graph(rng, n, 5);
    auto a = strong_of(strongly_connected(g, m));
    auto b = strong_of(strongly_connected_by_search(g, m));
    CHECK(a.strongly_connected == b.strongly_connected);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("certificate_set covers every boundary") {
  auto set = certificate_set(parallel_graph(4), 5);
  REQUIRE(set);
  CHECK(set->size() == 5);
  for (const auto& [beta, cert] : *set) CHECK(check_certificate(parallel_graph(4), beta, cert).ok());
  CHECK_FALSE(certificate_set(parallel_graph(3), 5));
  CHECK(all_boundaries(5, 3).size() == 25);
}

TEST_CASE("split_net") {
  auto nets = split_net(3, {2, 3});
  CHECK(nets[0] + nets[1] == 3);
  CHECK(std::abs(nets[0]) <= 2);
  CHECK(std::abs(nets[1]) <= 3);
  CHECK((nets[0] - 2) % 2 == 0);
  CHECK_THROWS_AS(split_net(2, {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(split_net(7, {2, 3}), std::invalid_argument);
}

TEST_CASE("extend_orientation") {
  SUBCASE("5K2 over a 4K2") {
    Multigraph g = parallel_graph(5);
    SubgraphSpec h{{0, 1}, {{{0, 1}, 4}}};
    Boundary beta(5, {2, 3});
    std::vector<Vertex> vs{0, 1};
    Contraction c = contract(g, vs);
    OrientationCertificate empty{5, {}};
    auto r = extend_orientation(g, h, empty, beta);
    REQUIRE(std::holds_alternative<OrientationCertificate>(r));
    CHECK(check_certificate(g, beta, std::get<OrientationCertificate>(r)).ok());
  }
  SUBCASE("T(1,4,4) over its 4-class") {
    Multigraph g = triangle_graph(4, 4, 1);
    SubgraphSpec h = SubgraphSpec::induced(g, {0, 1});
    Boundary beta = Boundary::zero(5, 3);
    std::vector<Vertex> vs{0, 1};
    Contraction c = contract(g, vs);
    Boundary cb = contracted_boundary(beta, c);
    const auto& dc = cert_of(beta_orientation(c.graph, cb));
    auto r = extend_orientation(g, h, dc, beta);
    REQUIRE(std::holds_alternative<OrientationCertificate>(r));
    CHECK(check_certificate(g, beta, std::get<OrientationCertificate>(r)).ok());
    CHECK(std::holds_alternative<OrientationCertificate>(beta_orientation(g, beta)));
  }
  SUBCASE("every boundary extends over a strong subgraph") {
    Multigraph g(4, {{0, 1, 4}, {1, 2, 2}, {0, 2, 1}, {2, 3, 5}, {0, 3, 1}});
    SubgraphSpec h{{0, 1}, {{{0, 1}, 4}}};
    std::vector<Vertex> vs{0, 1};
    Contraction c = contract(g, vs);
    for (const auto& beta : all_boundaries(5, 4)) {
      auto dc = beta_orientation(c.graph, contracted_boundary(beta, c));
      if (!std::holds_alternative<OrientationCertificate>(dc)) {
        CHECK_FALSE(std::holds_alternative<OrientationCertificate>(beta_orientation(g, beta)));
        continue;
      }
      auto r = extend_orientation(g, h, std::get<OrientationCertificate>(dc), beta);
      REQUIRE(std::holds_alternative<OrientationCertificate>(r));
      CHECK(check_certificate(g, beta, std::get<OrientationCertificate>(r)).ok());
    }
  }
  SUBCASE("non-strong H reports the residual") {
    Multigraph g = parallel_graph(3);
    SubgraphSpec h = SubgraphSpec::induced(g, {0, 1});
    OrientationCertificate empty{5, {}};
    auto r = extend_orientation(g, h, empty, Boundary(5, {0, 0}));
    REQUIRE(std::holds_alternative<ExtensionFailure>(r));
    CHECK(std::get<ExtensionFailure>(r).residual == Boundary(5, {0, 0}));
  }
  SUBCASE("wrong contracted certificate is rejected") {
    Multigraph g = triangle_graph(4, 4, 1);
    SubgraphSpec h = SubgraphSpec::induced(g, {0, 1});
    OrientationCertificate bad{5, {{{0, 1}, 3}}};
    CHECK_THROWS_AS(extend_orientation(g, h, bad, Boundary::zero(5, 3)), std::invalid_argument);
  }
}

TEST_CASE("zflow conversion and verification") {
  Multigraph c = kcycle(5, 4);
  ZFlow flow = orientation_to_zflow(c, cert_of(mod_orientation(c, 2)), 2);
  CHECK(flow.values.size() == 20);
  CHECK(verify_zflow(c, flow));
  CHECK(is_antisymmetric(flow));

  ZFlow pair{5, {{{0, 1}, 0, 1, Direction::kForward}, {{0, 1}, 1, 4, Direction::kForward}}};
  CHECK_FALSE(is_antisymmetric(pair));
  CHECK(verify_zflow(parallel_graph(2), pair));

  ZFlow empty{5, {}};
  CHECK(verify_zflow(Multigraph(1), empty));
  CHECK(is_antisymmetric(empty));

  ZFlow zero{5, {{{0, 1}, 0, 0, Direction::kForward}, {{0, 1}, 1, 0, Direction::kForward}}};
  std::string why;
  CHECK_FALSE(verify_zflow(parallel_graph(2), zero, &why));
  CHECK(why.find("nowhere-zero") != std::string::npos);

  OrientationCertificate bad{5, {{{0, 1}, 2}, {{0, 2}, 1}, {{1, 2}, 1}}};
  CHECK_THROWS_AS(orientation_to_zflow(triangle_graph(2, 1, 1), bad, 2), std::invalid_argument);
}

TEST_CASE("circular flow oracle") {
  auto c3 = find_circular_flow(kcycle(1, 3), 5, 2);
  REQUIRE(std::holds_alternative<CircularFlow>(c3));
  CHECK(verify_circular_flow(kcycle(1, 3), std::get<CircularFlow>(c3)));

  auto k4 = find_circular_flow(kcomplete(1, 4), 5, 2);
  REQUIRE(std::holds_alternative<Refutation>(k4));
  CHECK(std::get<Refutation>(k4).complete());

  auto k2 = find_circular_flow(parallel_graph(2), 2, 1);
  REQUIRE(std::holds_alternative<CircularFlow>(k2));
  CHECK(verify_circular_flow(parallel_graph(2), std::get<CircularFlow>(k2)));

  CHECK(std::holds_alternative<Refusal>(find_circular_flow(kcycle(7, 3), 5, 2)));
  CHECK_THROWS_AS(find_circular_flow(kcycle(1, 3), 3, 2), std::invalid_argument);
}
