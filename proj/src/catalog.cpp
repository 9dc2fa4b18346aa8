#include "modflow/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <stdexcept>

namespace modflow {

namespace {

struct FixedEntry {
  Family family;
  const char* name;
};

constexpr FixedEntry kFixed[] = {
    {Family::k2K4, "2K4"},
    {Family::k3C4, "3C4"},
    {Family::k3K4, "3K4"},
    {Family::k3K4Plus, "3K4+"},
    {Family::k5C4Matching, "5C4="},
    {Family::k5C4Minus, "5C4-"},
    {Family::k3C4Sub, "3C4o"},
    {Family::kT233SubSub, "T(2,3,3)oo"},
    {Family::kT115Sub, "T(1,1,5)o"},
    {Family::kT115Bullet, "T*(1,1,5)"},
    {Family::k5C4MatchingSubSub, "(5C4=)oo"},
    {Family::k5C4MatchingSubSubIdentified, "(5C4=)oo-identified"},
    {Family::kT444SubSubSub, "T(4,4,4)ooo"},
};

// Cycle v0 v1 v2 v3 with the given multiplicities on v0v1, v1v2, v2v3, v3v0.
Multigraph four_cycle(int a, int b, int c, int d) {
  return Multigraph(4, {{0, 1, a}, {1, 2, b}, {2, 3, c}, {3, 0, d}});
}

Multigraph build_fixed(Family family) {
  switch (family) {
    case Family::k2K4:
      return kcomplete(2, 4);
    case Family::k3C4:
      return kcycle(3, 4);
    case Family::k3K4:
      return kcomplete(3, 4);
    case Family::k3K4Plus: {
      Multigraph g = kcomplete(3, 4);
      g.add_edges(2, 3);
      return g;
    }
    case Family::k5C4Matching:
      return four_cycle(5, 4, 5, 4);
    case Family::k5C4Minus:
      return four_cycle(4, 5, 5, 5);
    case Family::k3C4Sub:
      // 3C4 with one copy of v0v1 routed through vertex 4.
      return Multigraph(5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 3}, {3, 0, 3}, {0, 4, 1}, {4, 1, 1}});
    case Family::kT233SubSub:
      // w=0, x=2, y=1; z1=3 on w-x, z2=4 on x-y.
      return Multigraph(5, {{0, 1, 2}, {0, 2, 2}, {1, 2, 2}, {0, 3, 1}, {3, 2, 1}, {2, 4, 1},
                            {4, 1, 1}});
    case Family::kT115Sub:
      // x=0, y=1, z=2, w=3.
      return Multigraph(4, {{0, 1, 4}, {0, 2, 1}, {2, 1, 1}, {0, 3, 1}, {3, 1, 1}});
    case Family::kT115Bullet:
      // 4-cycle v0 v1 v2 v3 with mu(v0v3)=5.
      return four_cycle(1, 1, 1, 5);
    case Family::k5C4MatchingSubSub:
      // w1=4 on v0v1, w2=5 on v2v3.
      return Multigraph(6, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}, {0, 4, 1}, {4, 1, 1},
                            {2, 5, 1}, {5, 3, 1}});
    case Family::k5C4MatchingSubSubIdentified:
      return Multigraph(5, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}, {0, 4, 1}, {4, 1, 1},
                            {2, 4, 1}, {4, 3, 1}});
    case Family::kT444SubSubSub:
      // w_i = 3 + i is adjacent to the two v's other than v_i.
      return Multigraph(6, {{0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {3, 1, 1}, {3, 2, 1}, {4, 0, 1},
                            {4, 2, 1}, {5, 0, 1}, {5, 1, 1}});
    case Family::kParallel:
    case Family::kTriangle:
      break;
  }
  throw std::invalid_argument("not a fixed catalog family");
}

}  // namespace

std::string CatalogLabel::name() const {
  switch (family) {
    case Family::kParallel:
      return std::to_string(params.at(0)) + "K2";
    case Family::kTriangle:
      return "T(" + std::to_string(params.at(0)) + "," + std::to_string(params.at(1)) + "," +
             std::to_string(params.at(2)) + ")";
    default:
      for (const auto& entry : kFixed) {
        if (entry.family == family) return entry.name;
      }
  }
  return "?";
}

CatalogLabel parallel_label(int a) { return {Family::kParallel, {a}}; }

CatalogLabel triangle_label(int a, int b, int c) {
  std::vector<int> p{a, b, c};
  std::sort(p.begin(), p.end());
  return {Family::kTriangle, p};
}

Multigraph parallel_graph(int a) { return Multigraph(2, {{0, 1, a}}); }

Multigraph triangle_graph(int a, int b, int c) {
  Multigraph g(3);
  g.add_edges(0, 1, a);
  g.add_edges(0, 2, b);
  g.add_edges(1, 2, c);
  return g;
}

Multigraph kcycle(int k, int n) {
  if (n < 2) throw std::invalid_argument("kcycle needs n >= 2");
  Multigraph g(n);
  for (Vertex i = 0; i < n; ++i) {
    if (n == 2 && i == 1) break;
    g.add_edges(i, (i + 1) % n, k);
  }
  if (n == 2) g.add_edges(0, 1, k);
  return g;
}

Multigraph kcomplete(int k, int n) {
  Multigraph g(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) g.add_edges(a, b, k);
  }
  return g;
}

Multigraph catalog_graph(const CatalogLabel& label) {
  switch (label.family) {
    case Family::kParallel:
      return parallel_graph(label.params.at(0));
    case Family::kTriangle:
      return triangle_graph(label.params.at(0), label.params.at(1), label.params.at(2));
    default:
      return build_fixed(label.family);
  }
}

std::vector<CatalogLabel> fixed_catalog_labels() {
  std::vector<CatalogLabel> out;
  for (const auto& entry : kFixed) out.push_back({entry.family, {}});
  return out;
}

std::optional<CatalogLabel> parse_catalog_name(const std::string& name) {
  static const std::regex parallel_re(R"((\d+)K2)");
  static const std::regex triangle_re(R"(T\((\d+),(\d+),(\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, parallel_re)) return parallel_label(std::stoi(m[1]));
  if (std::regex_match(name, m, triangle_re)) {
    return triangle_label(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
  }
  for (const auto& entry : kFixed) {
    if (name == entry.name) return CatalogLabel{entry.family, {}};
  }
  return std::nullopt;
}

std::vector<int> canonical_form(const Multigraph& g) {
  const int n = g.vertex_count();
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  std::vector<int> code(n * (n - 1) / 2);
  do {
    // perm[i] is the new label of vertex i; code lists mu over new pairs.
    std::fill(code.begin(), code.end(), 0);
    for (const auto& [pair, m] : g.classes()) {
      Vertex a = std::min(perm[pair.u], perm[pair.v]);
      Vertex b = std::max(perm[pair.u], perm[pair.v]);
      code[a * n - a * (a + 1) / 2 + (b - a - 1)] = m;
    }
    if (code > best) best = code;
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.insert(best.begin(), n);
  return best;
}

bool isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto da = a.degrees();
  auto db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return canonical_form(a) == canonical_form(b);
}

std::optional<CatalogLabel> catalog_match(const Multigraph& g) {
  const int n = g.vertex_count();
  if (n == 2 && g.classes().size() == 1) return parallel_label(g.multiplicity(0, 1));
  if (n == 3 && g.classes().size() == 3) {
    return triangle_label(g.multiplicity(0, 1), g.multiplicity(0, 2), g.multiplicity(1, 2));
  }
  if (n < 4 || n > 6) return std::nullopt;
  std::optional<std::vector<int>> form;
  for (const auto& label : fixed_catalog_labels()) {
    Multigraph ref = catalog_graph(label);
    if (ref.vertex_count() != n || ref.edge_count() != g.edge_count() ||
        ref.classes().size() != g.classes().size()) {
      continue;
    }
    if (!form) form = canonical_form(g);
    if (*form == canonical_form(ref)) return label;
  }
  return std::nullopt;
}

void for_each_embedding(const Multigraph& pattern, const Multigraph& host,
                        const std::function<bool(const std::vector<Vertex>&)>& visit) {
  const int k = pattern.vertex_count();
  const int n = host.vertex_count();
  if (k == 0 || k > n) return;
  std::vector<int> host_mu(n * n, 0);
  for (const auto& [pair, m] : host.classes()) {
    host_mu[pair.u * n + pair.v] = m;
    host_mu[pair.v * n + pair.u] = m;
  }
  std::vector<int> pat_mu(k * k, 0);
  for (const auto& [pair, m] : pattern.classes()) {
    pat_mu[pair.u * k + pair.v] = m;
    pat_mu[pair.v * k + pair.u] = m;
  }
  auto pdeg = pattern.degrees();
  auto hdeg = host.degrees();
  std::vector<Vertex> phi(k, -1);
  std::vector<bool> used(n, false);
  bool stop = false;
  auto extend = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i == k) {
      if (!visit(phi)) stop = true;
      return;
    }
    for (Vertex h = 0; h < n && !stop; ++h) {
      if (used[h] || hdeg[h] < pdeg[i]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        ok = host_mu[h * n + phi[j]] >= pat_mu[i * k + j];
      }
      if (!ok) continue;
      used[h] = true;
      phi[i] = h;
      self(self, i + 1);
      used[h] = false;
    }
    phi[i] = -1;
  };
  extend(extend, 0);
}

}  // namespace modflow
