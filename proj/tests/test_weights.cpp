#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "modflow/catalog.hpp"
#include "modflow/weights.hpp"

using namespace modflow;

namespace {

// Sums cut sizes block by block, independent of the library formula.
int oracle_weight(const Multigraph& g, const std::vector<std::vector<Vertex>>& blocks, int per_block,
                  int constant) {
  int total = 0;
  for (const auto& b : blocks) {
    if (static_cast<int>(b.size()) < g.vertex_count()) total += cut_size(g, b);
  }
  return total - per_block * static_cast<int>(blocks.size()) + constant;
}

MinWeight min_of(const Multigraph& g, WeightKind kind) {
  auto r = min_weight(g, kind);
  REQUIRE(std::holds_alternative<MinWeight>(r));
  return std::get<MinWeight>(r);
}

Partition random_partition(std::mt19937& rng, int n) {
  std::vector<int> label(n);
  int k = 1 + static_cast<int>(rng() % n);
  for (int& x : label) x = static_cast<int>(rng() % k);
  return Partition(label);
}

Multigraph random_graph(std::mt19937& rng, int n) {
  Multigraph g(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (rng() % 2) g.add_edges(a, b, 1 + static_cast<int>(rng() % 4));
    }
  }
  return g;
}

}  // namespace

TEST_CASE("partition normalization and classification") {
  Partition p(std::vector<int>{5, 5, 2, 7});
  CHECK(p.rgs() == std::vector<int>{0, 0, 1, 2});
  CHECK(p.block_count() == 3);
  CHECK(p.classify() == PartitionClass::kAlmostTrivial);
  CHECK(Partition::trivial(4).classify() == PartitionClass::kTrivial);
  CHECK(Partition::whole(4).classify() == PartitionClass::kWhole);
  CHECK(Partition(std::vector<int>{0, 0, 1, 1}).classify() == PartitionClass::kNormal);
  CHECK(Partition::from_blocks(3, {{2}, {0, 1}}) == Partition(std::vector<int>{0, 0, 1}));
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST_CASE("partition enumeration counts Bell and Stirling numbers") {
  const long long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (int n = 1; n <= 8; ++n) {
    long long count = 0;
    std::vector<int> prev;
    for_each_partition(n, 1, n, [&](const std::vector<int>& rgs) {
      CHECK(prev < rgs);
      prev = rgs;
      ++count;
      return true;
    });
    CHECK(count == bell[n]);
  }
  long long s2 = 0;
  for_each_partition(6, 2, 3, [&](const std::vector<int>&) {
    ++s2;
    return true;
  });
  CHECK(s2 == 31 + 90);  // S(6,2) + S(6,3)
}

TEST_CASE("weight examples") {
  CHECK(weight(parallel_graph(3), Partition::trivial(2), WeightKind::kW) == 3);
  Multigraph g = kcycle(5, 4);
  CHECK(weight(g, Partition::whole(4), WeightKind::kW) == 8);
  CHECK(weight(kcomplete(3, 4), Partition::trivial(4), WeightKind::kRho) == -1);
  for (int a = 1; a <= 8; ++a) {
    CHECK(weight(parallel_graph(a), Partition::trivial(2), WeightKind::kRho) == 2 * a - 3);
  }
  CHECK_THROWS_AS(weight(g, Partition::trivial(3), WeightKind::kW), std::invalid_argument);
}

TEST_CASE("weight matches the block-by-block oracle") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + trial % 7;
    Multigraph g = random_graph(rng, n);
    Partition p = random_partition(rng, n);
    CHECK(weight(g, p, WeightKind::kW) == oracle_weight(g, p.blocks(), 11, 19));
    CHECK(weight(g, p, WeightKind::kRho) == oracle_weight(g, p.blocks(), 17, 31));
    if (p.classify() == PartitionClass::kTrivial) {
      CHECK(weight(g, p, WeightKind::kW) == 2 * g.edge_count() - 11 * n + 19);
    }
  }
}

TEST_CASE("min_weight examples") {
  auto t = min_of(triangle_graph(2, 2, 3), WeightKind::kW);
  CHECK(t.value == 0);
  CHECK(t.argmin == Partition::trivial(3));
  CHECK(t.ties == 1);
  auto t133 = min_of(triangle_graph(1, 3, 3), WeightKind::kW);
  CHECK(t133.value == 0);
  CHECK(t133.ties == 1);
  CHECK(min_of(Multigraph(1), WeightKind::kW).value == 8);
  for (int a = 1; a <= 5; ++a) {
    for (int b = a; b <= 5; ++b) {
      for (int c = b; c <= 5 && a + b + c <= 12; ++c) {
        auto r = min_of(triangle_graph(a, b, c), WeightKind::kRho);
        CHECK(r.value == 2 * (a + b + c) - 20);
        CHECK(r.argmin == Partition::trivial(3));
        CHECK(r.ties == 1);
      }
    }
  }
  PartitionLimits small{3};
  CHECK(std::holds_alternative<Refusal>(min_weight(kcomplete(1, 4), WeightKind::kW, small)));
}

TEST_CASE("min_weight is a lower bound for random partitions") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 6;
    Multigraph g = random_graph(rng, n);
    auto best = min_of(g, WeightKind::kW);
    auto best_rho = min_of(g, WeightKind::kRho);
    for (int k = 0; k < 20; ++k) {
      Partition p = random_partition(rng, n);
      CHECK(best.value <= weight(g, p, WeightKind::kW));
      CHECK(best_rho.value <= weight(g, p, WeightKind::kRho));
    }
  }
}

TEST_CASE("refinement identity") {
  Multigraph g = kcycle(5, 4);
  Partition p(std::vector<int>{0, 0, 1, 2});
  int refined = refinement_weight(g, p, 0, Partition::trivial(2), WeightKind::kW);
  CHECK(refined == weight(g, Partition::trivial(4), WeightKind::kW));
  CHECK(refinement_weight(g, p, 0, Partition::whole(2), WeightKind::kW) == weight(g, p, WeightKind::kW));
  CHECK_THROWS_AS(refinement_weight(g, p, 1, Partition::trivial(1), WeightKind::kW), std::invalid_argument);

  std::mt19937 rng(41);
  int checked = 0;
  while (checked < 1000) {
    int n = 2 + static_cast<int>(rng() % 6);
    Multigraph h = random_graph(rng, n);
    Partition pp = random_partition(rng, n);
    auto blocks = pp.blocks();
    int i = static_cast<int>(rng() % blocks.size());
    if (blocks[i].size() < 2) continue;
    Partition q = random_partition(rng, static_cast<int>(blocks[i].size()));
    for (auto kind : {WeightKind::kW, WeightKind::kRho}) {
      CHECK_NOTHROW(refinement_weight(h, pp, i, q, kind));
    }
    ++checked;
  }
}

TEST_CASE("special partitions") {
  auto hit = [](const Multigraph& g, SpecialMode mode) {
    auto r = find_special_partition(g, mode);
    REQUIRE(std::holds_alternative<std::optional<SpecialPartition>>(r));
    return std::get<std::optional<SpecialPartition>>(r);
  };
  auto k2 = hit(parallel_graph(2), SpecialMode::kTroublesome);
  REQUIRE(k2);
  CHECK(k2->label == parallel_label(2));
  CHECK(k2->partition == Partition::trivial(2));

  CHECK_FALSE(hit(parallel_graph(4), SpecialMode::kTroublesome));

  auto t = hit(triangle_graph(2, 2, 3), SpecialMode::kTroublesome);
  REQUIRE(t);
  CHECK(t->label == triangle_label(2, 2, 3));
  CHECK(t->partition == Partition::trivial(3));

  CHECK_FALSE(hit(kcycle(6, 5), SpecialMode::kTroublesome));
  CHECK_FALSE(hit(kcycle(6, 5), SpecialMode::kProblematic));

  // Soundness: the quotient re-matches the label.
  std::mt19937 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    Multigraph g = random_graph(rng, 2 + trial % 5);
    for (auto mode : {SpecialMode::kTroublesome, SpecialMode::kProblematic}) {
      auto r = hit(g, mode);
      if (!r) continue;
      CHECK(catalog_match(quotient(g, r->partition)) == r->label);
      CHECK(special_label(quotient(g, r->partition), mode) == r->label);
    }
  }
}

TEST_CASE("problematic family") {
  auto family = special_family(SpecialMode::kProblematic);
  std::set<std::string> names;
  for (const auto& l : family) names.insert(l.name());
  CHECK(names.count("5K2"));
  CHECK(names.count("T(3,3,4)"));
  CHECK(names.count("T(3,4,4)"));
  CHECK_FALSE(names.count("T(1,4,5)"));  // only 5-edge-connected
  for (const auto& l : family) CHECK(edge_connectivity(catalog_graph(l)) < 8);
}
