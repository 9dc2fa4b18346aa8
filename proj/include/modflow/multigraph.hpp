#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace modflow {

using Vertex = int;

/// Unordered vertex pair stored with first < second.
struct VertexPair {
  Vertex u = 0;
  Vertex v = 0;

  VertexPair() = default;
  VertexPair(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool contains(Vertex x) const { return u == x || v == x; }
  Vertex other(Vertex x) const { return x == u ? v : u; }

  auto operator<=>(const VertexPair&) const = default;
};

/// Sentinel returned by odd_edge_connectivity when every cut is even.
inline constexpr int kInfiniteConnectivity = std::numeric_limits<int>::max();

/// Loop-free multigraph on vertices 0..n-1. Parallel edges are stored as
/// multiplicities per unordered pair ("parallel classes").
class Multigraph {
 public:
  using ClassMap = std::map<VertexPair, int>;

  Multigraph() = default;
  explicit Multigraph(int n) : n_(n) {}
  Multigraph(int n, std::initializer_list<std::tuple<Vertex, Vertex, int>> classes);

  int vertex_count() const { return n_; }
  /// ||G||, the number of edges counted with multiplicity.
  int edge_count() const;
  const ClassMap& classes() const { return classes_; }

  int multiplicity(Vertex a, Vertex b) const;
  int max_multiplicity() const;
  int degree(Vertex v) const;
  int min_degree() const;
  std::vector<int> degrees() const;
  std::vector<Vertex> neighbors(Vertex v) const;

  /// Adds `count` copies of edge ab (a != b).
  void add_edges(Vertex a, Vertex b, int count = 1);
  /// Removes `count` copies of edge ab; throws if fewer exist.
  void remove_edges(Vertex a, Vertex b, int count = 1);
  Vertex add_vertex() { return n_++; }

  bool is_connected() const;
  /// Component id per vertex, numbered in order of first vertex.
  std::vector<int> components() const;

  bool operator==(const Multigraph& other) const = default;

 private:
  void check_vertex(Vertex v) const;

  int n_ = 0;
  ClassMap classes_;
};

/// Vertex subset given as a membership mask of size n.
using VertexMask = std::vector<bool>;

VertexMask mask_of(int n, std::span<const Vertex> vertices);

/// d(X): number of edges with exactly one end in X. X must be proper and nonempty.
int cut_size(const Multigraph& g, const VertexMask& x);
int cut_size(const Multigraph& g, std::span<const Vertex> x);

/// Minimum cut over all proper nonempty subsets; 0 for disconnected graphs
/// and for graphs with fewer than two vertices.
int edge_connectivity(const Multigraph& g);

/// Size of the smallest odd cut, or kInfiniteConnectivity when all cuts are
/// even. Returns 0 for disconnected graphs.
int odd_edge_connectivity(const Multigraph& g);

/// Gomory-Hu tree (Gusfield): parent[v] and the min-cut value between v and
/// parent[v], for v = 1..n-1 (parent[0] = -1).
struct CutTree {
  std::vector<Vertex> parent;
  std::vector<int> value;
};
CutTree gomory_hu_tree(const Multigraph& g);

/// Result of identifying a vertex set into a single vertex.
struct Contraction {
  Multigraph graph;
  /// old vertex -> new vertex.
  std::vector<Vertex> image;
  Vertex merged = 0;
};

/// Identifies all of `s` into one vertex and drops the resulting loops. The
/// merged vertex takes the slot of min(s); other vertices keep their order.
Contraction contract(const Multigraph& g, std::span<const Vertex> s);

/// Replaces one copy each of w1-v and v-w2 by a copy of w1-w2. v is kept,
/// possibly isolated.
Multigraph lift(const Multigraph& g, Vertex v, Vertex w1, Vertex w2);

enum class SubdivideMode { kMaxMultiplicity, kSpecified };

/// Replaces one copy of the class by a path of length two through a new
/// vertex n. In kMaxMultiplicity mode the lexicographically least class of
/// maximum multiplicity is used and `which` is ignored.
Multigraph subdivide(const Multigraph& g, SubdivideMode mode, VertexPair which = {});

/// G[S] with vertices renumbered in the order of `s`.
Multigraph induced_subgraph(const Multigraph& g, std::span<const Vertex> s);

/// Removes vertex v and its edges; vertices above v shift down by one.
Multigraph delete_vertex(const Multigraph& g, Vertex v);

/// Applies a vertex permutation: vertex i of g becomes perm[i].
Multigraph relabel(const Multigraph& g, std::span<const Vertex> perm);

/// a * G: every multiplicity scaled by k.
Multigraph scale(const Multigraph& g, int k);

/// Human readable one-line summary, e.g. "n=3 {0-1:2 0-2:2 1-2:3}".
std::string describe(const Multigraph& g);

}  // namespace modflow
