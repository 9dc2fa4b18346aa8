#include "modflow/weights.hpp"

#include <algorithm>
#include <stdexcept>

namespace modflow {

std::string to_string(PartitionClass c) {
  switch (c) {
    case PartitionClass::kTrivial:
      return "trivial";
    case PartitionClass::kAlmostTrivial:
      return "almost-trivial";
    case PartitionClass::kNormal:
      return "normal";
    case PartitionClass::kWhole:
      return "whole";
  }
  return "?";
}

Partition::Partition(const std::vector<int>& block_of) {
  std::vector<std::pair<int, int>> seen;  // label -> rgs id
  rgs_.reserve(block_of.size());
  for (int label : block_of) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& e) { return e.first == label; });
    if (it == seen.end()) {
      seen.emplace_back(label, static_cast<int>(seen.size()));
      rgs_.push_back(static_cast<int>(seen.size()) - 1);
    } else {
      rgs_.push_back(it->second);
    }
  }
  blocks_ = static_cast<int>(seen.size());
}

Partition Partition::from_blocks(int n, const std::vector<std::vector<Vertex>>& blocks) {
  std::vector<int> label(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("partition block is empty");
    for (Vertex v : blocks[b]) {
      if (v < 0 || v >= n) throw std::invalid_argument("partition vertex out of range");
      if (label[v] != -1) throw std::invalid_argument("vertex in two partition blocks");
      label[v] = static_cast<int>(b);
    }
  }
  if (std::find(label.begin(), label.end(), -1) != label.end()) {
    throw std::invalid_argument("partition does not cover every vertex");
  }
  return Partition(label);
}

Partition Partition::trivial(int n) {
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  return Partition(label);
}

Partition Partition::whole(int n) { return Partition(std::vector<int>(n, 0)); }

std::vector<std::vector<Vertex>> Partition::blocks() const {
  std::vector<std::vector<Vertex>> out(blocks_);
  for (Vertex v = 0; v < size(); ++v) out[rgs_[v]].push_back(v);
  return out;
}

PartitionClass Partition::classify() const {
  const int n = size();
  if (blocks_ == n) return PartitionClass::kTrivial;
  if (blocks_ == n - 1) return PartitionClass::kAlmostTrivial;
  if (blocks_ == 1) return PartitionClass::kWhole;
  return PartitionClass::kNormal;
}

void for_each_partition(int n, int min_blocks, int max_blocks,
                        const std::function<bool(const std::vector<int>&)>& visit) {
  if (n == 0) {
    if (min_blocks <= 0) visit({});
    return;
  }
  std::vector<int> rgs(n, 0);
  bool stop = false;
  // used: number of blocks among rgs[0..i-1].
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (stop) return;
    if (used + (n - i) < min_blocks) return;
    if (i == n) {
      if (used >= min_blocks && !visit(rgs)) stop = true;
      return;
    }
    int limit = std::min(used, max_blocks - 1);
    for (int b = 0; b <= limit && !stop; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rgs[0] = 0;
  rec(rec, 1, 1);
}

Multigraph quotient(const Multigraph& g, const Partition& p) {
  if (p.size() != g.vertex_count()) {
    throw std::invalid_argument("partition size " + std::to_string(p.size()) +
                                " does not match vertex count " + std::to_string(g.vertex_count()));
  }
  Multigraph q(p.block_count());
  for (const auto& [pair, m] : g.classes()) {
    int a = p.block_of(pair.u);
    int b = p.block_of(pair.v);
    if (a != b) q.add_edges(a, b, m);
  }
  return q;
}

namespace {

int crossing_degree_sum(const Multigraph& g, const std::vector<int>& rgs) {
  int total = 0;
  for (const auto& [pair, m] : g.classes()) {
    if (rgs[pair.u] != rgs[pair.v]) total += 2 * m;
  }
  return total;
}

int apply_formula(int degree_sum, int t, WeightKind kind) {
  return kind == WeightKind::kW ? degree_sum - 11 * t + 19 : degree_sum - 17 * t + 31;
}

}  // namespace

int weight(const Multigraph& g, const Partition& p, WeightKind kind) {
  if (p.size() != g.vertex_count()) {
    throw std::invalid_argument("partition size " + std::to_string(p.size()) +
                                " does not match vertex count " + std::to_string(g.vertex_count()));
  }
  return apply_formula(crossing_degree_sum(g, p.rgs()), p.block_count(), kind);
}

WeightReport weight_report(const Multigraph& g, const Partition& p) {
  return {p, weight(g, p, WeightKind::kW), weight(g, p, WeightKind::kRho)};
}

std::variant<MinWeight, Refusal> min_weight(const Multigraph& g, WeightKind kind,
                                            PartitionLimits limits) {
  const int n = g.vertex_count();
  if (n > limits.max_vertices) {
    return Refusal{"partition enumeration cap is " + std::to_string(limits.max_vertices) +
                   " vertices, graph has " + std::to_string(n)};
  }
  MinWeight best;
  bool have = false;
  std::vector<int> arg;
  for_each_partition(n, 1, n, [&](const std::vector<int>& rgs) {
    int t = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    int value = apply_formula(crossing_degree_sum(g, rgs), t, kind);
    if (!have || value < best.value) {
      have = true;
      best.value = value;
      best.ties = 1;
      arg = rgs;
    } else if (value == best.value) {
      ++best.ties;
    }
    return true;
  });
  best.argmin = Partition(arg);
  return best;
}

int refinement_weight(const Multigraph& g, const Partition& p, int block, const Partition& q,
                      WeightKind kind) {
  auto blocks = p.blocks();
  if (block < 0 || block >= static_cast<int>(blocks.size())) {
    throw std::invalid_argument("block index out of range");
  }
  const auto& target = blocks[block];
  if (target.size() < 2) throw std::invalid_argument("refined block must have at least two vertices");
  if (q.size() != static_cast<int>(target.size())) {
    throw std::invalid_argument("Q must partition the chosen block");
  }
  Multigraph h = induced_subgraph(g, target);
  std::vector<int> label(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) label[v] = p.block_of(v);
  for (std::size_t i = 0; i < target.size(); ++i) {
    label[target[i]] = p.block_count() + q.block_of(static_cast<Vertex>(i));
  }
  Partition refined(label);
  int value = weight(g, refined, kind);
  int offset = kind == WeightKind::kW ? 8 : 14;
  int expected = weight(h, q, kind) + weight(g, p, kind) - offset;
  if (value != expected) {
    throw std::logic_error("refinement identity violated: " + std::to_string(value) +
                           " != " + std::to_string(expected));
  }
  return value;
}

std::optional<CatalogLabel> special_label(const Multigraph& g, SpecialMode mode) {
  auto label = catalog_match(g);
  if (!label) return std::nullopt;
  if (mode == SpecialMode::kTroublesome) {
    static const std::vector<CatalogLabel> members = special_family(mode);
    if (std::find(members.begin(), members.end(), *label) != members.end()) return label;
    return std::nullopt;
  }
  if (label->family == Family::kParallel) {
    int a = label->params[0];
    if (a >= 2 && a <= 5) return label;
    return std::nullopt;
  }
  if (label->family == Family::kTriangle) {
    int sum = label->params[0] + label->params[1] + label->params[2];
    if (sum >= 10 && sum <= 11 && edge_connectivity(g) >= 6) return label;
  }
  return std::nullopt;
}

std::vector<CatalogLabel> special_family(SpecialMode mode) {
  std::vector<CatalogLabel> out;
  if (mode == SpecialMode::kTroublesome) {
    return {parallel_label(2), parallel_label(3), triangle_label(2, 2, 3), triangle_label(1, 3, 3)};
  }
  for (int a = 2; a <= 5; ++a) out.push_back(parallel_label(a));
  for (int a = 1; a <= 11; ++a) {
    for (int b = a; b <= 11; ++b) {
      for (int c = b; a + b + c <= 11; ++c) {
        if (a + b + c < 10) continue;
        if (edge_connectivity(triangle_graph(a, b, c)) >= 6) out.push_back(triangle_label(a, b, c));
      }
    }
  }
  return out;
}

std::variant<std::optional<SpecialPartition>, Refusal> find_special_partition(
    const Multigraph& g, SpecialMode mode, PartitionLimits limits) {
  const int n = g.vertex_count();
  if (n > limits.max_vertices) {
    return Refusal{"partition enumeration cap is " + std::to_string(limits.max_vertices) +
                   " vertices, graph has " + std::to_string(n)};
  }
  std::optional<SpecialPartition> hit;
  for_each_partition(n, 2, 3, [&](const std::vector<int>& rgs) {
    Partition p(rgs);
    if (auto label = special_label(quotient(g, p), mode)) {
      hit = SpecialPartition{p, *label};
      return false;
    }
    return true;
  });
  return hit;
}

}  // namespace modflow
