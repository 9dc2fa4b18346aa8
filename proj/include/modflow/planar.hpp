#pragma once

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "modflow/multigraph.hpp"

namespace modflow {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);

/// One copy of a parallel class: copies are numbered 0..mu-1.
struct EdgeCopy {
  VertexPair edge;
  int copy = 0;
  auto operator<=>(const EdgeCopy&) const = default;
};

class InvalidEmbedding : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Embedded multigraph stored as darts. Edge e has darts 2e (leaving its
/// first end) and 2e+1; rotation(v) lists the darts leaving v in cyclic
/// order. Loops are never stored.
class PlaneGraph {
 public:
  PlaneGraph() = default;
  explicit PlaneGraph(int n) : rot_(n) {}

  int vertex_count() const { return static_cast<int>(rot_.size()); }
  int edge_count() const { return static_cast<int>(ends_.size()); }
  /// Adds edge ab; its darts are appended to both rotations. Returns the edge id.
  int add_edge(Vertex a, Vertex b);
  void set_rotation(Vertex v, std::vector<int> darts) { rot_.at(v) = std::move(darts); }

  const std::vector<int>& rotation(Vertex v) const { return rot_.at(v); }
  Vertex tail(int dart) const;
  Vertex head(int dart) const { return tail(dart ^ 1); }
  static int reverse(int dart) { return dart ^ 1; }

  Multigraph graph() const;
  /// Edge copy behind each edge id; copies of a class are numbered by edge id.
  std::vector<EdgeCopy> edge_copies() const;
  /// Face boundary walks as dart sequences (next = rotation successor of the reverse dart).
  std::vector<std::vector<int>> face_walks() const;
  /// |V| - |E| + |F| == 1 + number of components (isolated vertices count as components).
  bool euler_ok() const;
  /// Checks every dart appears exactly once in the rotation of its tail.
  void check_consistent() const;

  /// Identifies a vertex set that induces a connected subgraph. Vertex
  /// numbering follows Multigraph contract(): the merged vertex takes the slot
  /// of min(s). Throws std::invalid_argument if G[s] is disconnected.
  PlaneGraph contracted(std::span<const Vertex> s) const;
  /// Lifts the darts at positions pos and pos+1 (cyclically) of v's rotation.
  /// If both lead to the same neighbor the resulting loop is dropped.
  PlaneGraph lift_successive(Vertex v, int pos) const;
  /// Replaces one copy of each edge along path[0] path[1] ... path[k] by a new
  /// path[0]path[k] copy drawn next to an existing copy of that class, which
  /// must already exist.
  PlaneGraph lift_path_beside(std::span<const Vertex> path) const;
  /// Removes an isolated vertex; later vertices shift down.
  PlaneGraph without_vertex(Vertex v) const;

 private:
  std::vector<std::pair<Vertex, Vertex>> ends_;
  std::vector<std::vector<int>> rot_;
};

/// Validated plane embedding of a connected multigraph: for each vertex the
/// clockwise cyclic order of incident edge copies. Parallel copies must be
/// consecutive at both ends and the traced faces must satisfy Euler's formula.
class RotationSystem {
 public:
  RotationSystem(Multigraph g, std::vector<std::vector<EdgeCopy>> order);

  const Multigraph& graph() const { return graph_; }
  const std::vector<std::vector<EdgeCopy>>& order() const { return order_; }
  PlaneGraph plane() const;

  /// Consecutive copies from a simple neighbor order per vertex. Copies of
  /// class {x,y} run in decreasing index at min(x,y) and increasing at max(x,y),
  /// which makes consecutive copies bound 2-faces.
  static RotationSystem from_neighbor_order(const Multigraph& g,
                                            const std::vector<std::vector<Vertex>>& neighbors);

 private:
  Multigraph graph_;
  std::vector<std::vector<EdgeCopy>> order_;
};

struct Face {
  int id = 0;
  std::vector<int> darts;
  std::vector<EdgeCopy> walk;
  int length() const { return static_cast<int>(darts.size()); }
  /// String length of each boundary edge (1 = not in a string); empty for 2-faces.
  std::vector<int> profile;
  /// Profile sorted in decreasing order, e.g. {2,1,1}.
  std::vector<int> profile_type() const;
};

/// A maximal chain e_1 f_1 e_2 ... e_t between two 3+-faces in which every
/// f_i is a 2-face. t = 1 means the faces share the edge directly.
struct Link {
  int face_a = 0;
  int face_b = 0;
  int dart_a = 0;  // dart of face_a on e_1
  int dart_b = 0;  // dart of face_b on e_t
  int edges = 1;
  std::vector<int> two_faces;
};

struct StringStructure {
  std::vector<Link> links;
  /// Strings made only of 2-faces with no 3+-face at either end (aK2 alone).
  std::vector<std::vector<int>> closed_strings;
  /// For darts on 3+-faces, the link the dart starts; -1 otherwise.
  std::vector<int> link_of_dart;
  /// For each 2-face, the link (>= 0) or closed string (encoded -1 - index).
  std::vector<int> string_of_face;
};

struct FaceStructure {
  std::vector<Face> faces;
  StringStructure strings;
};

/// Traces faces and strings; throws InvalidEmbedding on an Euler violation.
FaceStructure trace_faces(const RotationSystem& r);
std::vector<Face> faces(const RotationSystem& r);

enum class Ruleset { kZ5, kZ7 };

struct Transfer {
  int from = 0;
  int to = 0;
  Rational amount;
  std::string rule;
};

struct ChargeLedger {
  std::vector<Rational> initial;
  std::vector<Rational> final_charge;
  std::vector<Transfer> transfers;
  Rational total_initial() const;
  Rational total_final() const;
};

struct DischargeResult {
  ChargeLedger ledger;
  Rational target;
  Rational min_final;
  std::vector<int> below_target;
};

Rational discharge_target(Ruleset rules);
DischargeResult discharge(const RotationSystem& r, Ruleset rules);

struct ChargeBound {
  int total_length = 0;  // 2||G||
  Rational bound;        // (22/9)|F| - 2/3 or (34/15)|F| - 2/5
  bool holds = false;
};

/// Requires w(G) >= 0 (Z5) or rho(G) >= 0 (Z7); throws PreconditionFailed otherwise.
ChargeBound charge_bound(const RotationSystem& r, Ruleset rules);

// ---- generators -------------------------------------------------------------

RotationSystem kcycle_embedding(int k, int n);
/// Every class of a simple plane graph multiplied by k.
RotationSystem replicate(const RotationSystem& base, int k);

/// Triangulation from oriented triangles (a,b,c); around a, c follows b.
RotationSystem from_triangles(int n, const std::vector<std::array<Vertex, 3>>& triangles);
std::vector<std::array<Vertex, 3>> tetrahedron_triangles();
/// Bipyramid over a cycle of length k (k + 2 vertices); k = 4 is the octahedron.
std::vector<std::array<Vertex, 3>> bipyramid_triangles(int k);
/// Random simple triangulation on n >= 4 vertices by vertex insertion and flips.
std::vector<std::array<Vertex, 3>> random_triangulation(int n, std::uint64_t seed);

/// Searches all neighbor orders of the underlying simple graph for a plane
/// embedding; nullopt if none exists or the search exceeds max_orders.
std::optional<RotationSystem> find_embedding(const Multigraph& g, std::uint64_t max_orders = 2'000'000);

}  // namespace modflow
