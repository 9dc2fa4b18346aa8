#include "modflow/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace modflow {

Multigraph::Multigraph(int n, std::initializer_list<std::tuple<Vertex, Vertex, int>> classes)
    : n_(n) {
  for (const auto& [a, b, m] : classes) add_edges(a, b, m);
}

void Multigraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n=" +
                                std::to_string(n_));
  }
}

int Multigraph::edge_count() const {
  int total = 0;
  for (const auto& [pair, m] : classes_) total += m;
  return total;
}

int Multigraph::multiplicity(Vertex a, Vertex b) const {
  if (a == b) return 0;
  auto it = classes_.find(VertexPair(a, b));
  return it == classes_.end() ? 0 : it->second;
}

int Multigraph::max_multiplicity() const {
  int best = 0;
  for (const auto& [pair, m] : classes_) best = std::max(best, m);
  return best;
}

int Multigraph::degree(Vertex v) const {
  check_vertex(v);
  int d = 0;
  for (const auto& [pair, m] : classes_) {
    if (pair.contains(v)) d += m;
  }
  return d;
}

std::vector<int> Multigraph::degrees() const {
  std::vector<int> d(n_, 0);
  for (const auto& [pair, m] : classes_) {
    d[pair.u] += m;
    d[pair.v] += m;
  }
  return d;
}

int Multigraph::min_degree() const {
  if (n_ == 0) return 0;
  auto d = degrees();
  return *std::min_element(d.begin(), d.end());
}

std::vector<Vertex> Multigraph::neighbors(Vertex v) const {
  check_vertex(v);
  std::vector<Vertex> out;
  for (const auto& [pair, m] : classes_) {
    if (pair.contains(v)) out.push_back(pair.other(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Multigraph::add_edges(Vertex a, Vertex b, int count) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw std::invalid_argument("loops are not allowed");
  if (count < 0) throw std::invalid_argument("negative edge count");
  if (count == 0) return;
  classes_[VertexPair(a, b)] += count;
}

void Multigraph::remove_edges(Vertex a, Vertex b, int count) {
  check_vertex(a);
  check_vertex(b);
  auto it = classes_.find(VertexPair(a, b));
  if (it == classes_.end() || it->second < count) {
    throw std::invalid_argument("cannot remove " + std::to_string(count) + " copies of " +
                                std::to_string(a) + "-" + std::to_string(b));
  }
  it->second -= count;
  if (it->second == 0) classes_.erase(it);
}

std::vector<int> Multigraph::components() const {
  std::vector<std::vector<Vertex>> adj(n_);
  for (const auto& [pair, m] : classes_) {
    adj[pair.u].push_back(pair.v);
    adj[pair.v].push_back(pair.u);
  }
  std::vector<int> comp(n_, -1);
  int next = 0;
  for (Vertex s = 0; s < n_; ++s) {
    if (comp[s] != -1) continue;
    std::vector<Vertex> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : adj[x]) {
        if (comp[y] == -1) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool Multigraph::is_connected() const {
  if (n_ <= 1) return true;
  auto comp = components();
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

VertexMask mask_of(int n, std::span<const Vertex> vertices) {
  VertexMask mask(n, false);
  for (Vertex v : vertices) {
    if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range in subset");
    mask[v] = true;
  }
  return mask;
}

int cut_size(const Multigraph& g, const VertexMask& x) {
  if (static_cast<int>(x.size()) != g.vertex_count()) {
    throw std::invalid_argument("subset mask has wrong size");
  }
  auto inside = std::count(x.begin(), x.end(), true);
  if (inside == 0 || inside == g.vertex_count()) {
    throw std::invalid_argument("cut_size needs a proper nonempty subset");
  }
  int total = 0;
  for (const auto& [pair, m] : g.classes()) {
    if (x[pair.u] != x[pair.v]) total += m;
  }
  return total;
}

int cut_size(const Multigraph& g, std::span<const Vertex> x) {
  return cut_size(g, mask_of(g.vertex_count(), x));
}

namespace {

// Dinic max flow on the symmetric capacity network of a multigraph.
class FlowNetwork {
 public:
  explicit FlowNetwork(const Multigraph& g) : n_(g.vertex_count()), head_(n_, -1) {
    for (const auto& [pair, m] : g.classes()) {
      add_arc(pair.u, pair.v, m);
      add_arc(pair.v, pair.u, m);
    }
  }

  /// Max flow value; afterwards source_side() gives a min cut.
  int max_flow(Vertex s, Vertex t) {
    for (auto& a : arcs_) a.flow = 0;
    int total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (int pushed = dfs(s, t, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

  VertexMask source_side() const {
    VertexMask side(n_, false);
    for (int v = 0; v < n_; ++v) side[v] = level_[v] >= 0;
    return side;
  }

 private:
  struct Arc {
    Vertex to;
    int cap;
    int flow;
    int next;
  };

  void add_arc(Vertex a, Vertex b, int cap) {
    arcs_.push_back({b, cap, 0, head_[a]});
    head_[a] = static_cast<int>(arcs_.size()) - 1;
  }

  bool bfs(Vertex s, Vertex t) {
    level_.assign(n_, -1);
    std::queue<Vertex> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (int e = head_[x]; e != -1; e = arcs_[e].next) {
        const Arc& a = arcs_[e];
        if (level_[a.to] < 0 && a.flow < a.cap) {
          level_[a.to] = level_[x] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(Vertex x, Vertex t, int limit) {
    if (x == t) return limit;
    for (int& e = iter_[x]; e != -1; e = arcs_[e].next) {
      Arc& a = arcs_[e];
      if (a.flow < a.cap && level_[a.to] == level_[x] + 1) {
        int pushed = dfs(a.to, t, std::min(limit, a.cap - a.flow));
        if (pushed > 0) {
          a.flow += pushed;
          arcs_[e ^ 1].flow -= pushed;
          return pushed;
        }
      }
    }
    return 0;
  }

  int n_;
  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
  std::vector<Arc> arcs_;
};

}  // namespace

CutTree gomory_hu_tree(const Multigraph& g) {
  const int n = g.vertex_count();
  CutTree tree{std::vector<Vertex>(n, 0), std::vector<int>(n, 0)};
  if (n == 0) return tree;
  tree.parent[0] = -1;
  FlowNetwork net(g);
  for (Vertex s = 1; s < n; ++s) {
    Vertex t = tree.parent[s];
    int f = net.max_flow(s, t);
    VertexMask side = net.source_side();
    tree.value[s] = f;
    for (Vertex i = 0; i < n; ++i) {
      if (i != s && side[i] && tree.parent[i] == t) tree.parent[i] = s;
    }
    Vertex pt = tree.parent[t];
    if (pt >= 0 && side[pt]) {
      tree.parent[s] = pt;
      tree.parent[t] = s;
      tree.value[s] = tree.value[t];
      tree.value[t] = f;
    }
  }
  return tree;
}

int edge_connectivity(const Multigraph& g) {
  if (g.vertex_count() < 2 || !g.is_connected()) return 0;
  CutTree tree = gomory_hu_tree(g);
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (tree.parent[v] >= 0) best = std::min(best, tree.value[v]);
  }
  return best;
}

int odd_edge_connectivity(const Multigraph& g) {
  const int n = g.vertex_count();
  if (n < 2) return kInfiniteConnectivity;
  if (!g.is_connected()) return 0;
  // d(X) has the parity of the number of odd-degree vertices in X, and a
  // minimum odd cut is always a fundamental cut of a Gomory-Hu tree.
  CutTree tree = gomory_hu_tree(g);
  auto deg = g.degrees();
  std::vector<int> odd_below(n, 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> depth(n, -1);
  auto depth_of = [&](auto&& self, Vertex v) -> int {
    if (depth[v] >= 0) return depth[v];
    return depth[v] = tree.parent[v] < 0 ? 0 : self(self, tree.parent[v]) + 1;
  };
  for (Vertex v = 0; v < n; ++v) depth_of(depth_of, v);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return depth[a] > depth[b]; });
  for (Vertex v = 0; v < n; ++v) odd_below[v] = deg[v] % 2;
  int best = kInfiniteConnectivity;
  for (Vertex v : order) {
    if (tree.parent[v] < 0) continue;
    if (odd_below[v] % 2 == 1) best = std::min(best, tree.value[v]);
    odd_below[tree.parent[v]] += odd_below[v];
  }
  return best;
}

Contraction contract(const Multigraph& g, std::span<const Vertex> s) {
  if (s.empty()) throw std::invalid_argument("contract needs a nonempty vertex set");
  const int n = g.vertex_count();
  VertexMask in_s = mask_of(n, s);
  Vertex first = *std::min_element(s.begin(), s.end());
  Contraction result;
  result.image.assign(n, -1);
  int next = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (in_s[v]) {
      if (v == first) {
        result.merged = next++;
      }
    } else {
      result.image[v] = next++;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (in_s[v]) result.image[v] = result.merged;
  }
  result.graph = Multigraph(next);
  for (const auto& [pair, m] : g.classes()) {
    Vertex a = result.image[pair.u];
    Vertex b = result.image[pair.v];
    if (a != b) result.graph.add_edges(a, b, m);
  }
  return result;
}

Multigraph lift(const Multigraph& g, Vertex v, Vertex w1, Vertex w2) {
  if (w1 == w2) throw std::invalid_argument("lifting w1-v-w2 with w1 == w2 would create a loop");
  if (g.multiplicity(w1, v) < 1 || g.multiplicity(v, w2) < 1) {
    throw std::invalid_argument("lift needs edges " + std::to_string(w1) + "-" +
                                std::to_string(v) + " and " + std::to_string(v) + "-" +
                                std::to_string(w2));
  }
  Multigraph out = g;
  out.remove_edges(w1, v);
  out.remove_edges(v, w2);
  out.add_edges(w1, w2);
  return out;
}

Multigraph subdivide(const Multigraph& g, SubdivideMode mode, VertexPair which) {
  if (mode == SubdivideMode::kMaxMultiplicity) {
    int best = g.max_multiplicity();
    if (best == 0) throw std::invalid_argument("subdivide: graph has no edges");
    for (const auto& [pair, m] : g.classes()) {
      if (m == best) {
        which = pair;
        break;
      }
    }
  } else if (g.multiplicity(which.u, which.v) < 1) {
    throw std::invalid_argument("subdivide: class " + std::to_string(which.u) + "-" +
                                std::to_string(which.v) + " is absent");
  }
  Multigraph out = g;
  Vertex z = out.add_vertex();
  out.remove_edges(which.u, which.v);
  out.add_edges(which.u, z);
  out.add_edges(z, which.v);
  return out;
}

Multigraph induced_subgraph(const Multigraph& g, std::span<const Vertex> s) {
  std::vector<Vertex> index(g.vertex_count(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (index.at(s[i]) != -1) throw std::invalid_argument("duplicate vertex in subset");
    index[s[i]] = static_cast<Vertex>(i);
  }
  Multigraph out(static_cast<int>(s.size()));
  for (const auto& [pair, m] : g.classes()) {
    if (index[pair.u] >= 0 && index[pair.v] >= 0) out.add_edges(index[pair.u], index[pair.v], m);
  }
  return out;
}

Multigraph delete_vertex(const Multigraph& g, Vertex v) {
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("delete_vertex: bad vertex");
  Multigraph out(g.vertex_count() - 1);
  auto shift = [v](Vertex x) { return x > v ? x - 1 : x; };
  for (const auto& [pair, m] : g.classes()) {
    if (!pair.contains(v)) out.add_edges(shift(pair.u), shift(pair.v), m);
  }
  return out;
}

Multigraph relabel(const Multigraph& g, std::span<const Vertex> perm) {
  if (static_cast<int>(perm.size()) != g.vertex_count()) {
    throw std::invalid_argument("relabel: permutation has wrong size");
  }
  Multigraph out(g.vertex_count());
  for (const auto& [pair, m] : g.classes()) out.add_edges(perm[pair.u], perm[pair.v], m);
  return out;
}

Multigraph scale(const Multigraph& g, int k) {
  Multigraph out(g.vertex_count());
  for (const auto& [pair, m] : g.classes()) out.add_edges(pair.u, pair.v, m * k);
  return out;
}

std::string describe(const Multigraph& g) {
  std::ostringstream os;
  os << "n=" << g.vertex_count() << " {";
  bool first = true;
  for (const auto& [pair, m] : g.classes()) {
    os << (first ? "" : " ") << pair.u << "-" << pair.v << ":" << m;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace modflow
