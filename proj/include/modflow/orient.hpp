#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modflow/multigraph.hpp"

namespace modflow {

/// Z_m boundary: one residue per vertex, summing to 0 mod m (m odd, m >= 3).
class Boundary {
 public:
  Boundary(int modulus, std::vector<int> values);
  static Boundary zero(int modulus, int n);

  int modulus() const { return modulus_; }
  const std::vector<int>& values() const { return values_; }
  int operator[](Vertex v) const { return values_.at(v); }
  int size() const { return static_cast<int>(values_.size()); }
  Boundary negated() const;

  bool operator==(const Boundary&) const = default;

 private:
  int modulus_;
  std::vector<int> values_;
};

/// Throws std::invalid_argument unless m is odd and >= 3.
void check_modulus(int modulus);
int mod(long long value, int modulus);

/// An orientation up to swapping opposite copies: for each class {u<v} the
/// net number of copies directed u->v.
struct OrientationCertificate {
  int modulus = 0;
  std::map<VertexPair, int> net;

  /// d+(v) - d-(v) as an integer.
  int outflow(Vertex v) const;
  bool operator==(const OrientationCertificate&) const = default;
};

/// Why a certificate fails its boundary; empty `problems` means valid.
struct CertificateCheck {
  std::vector<std::string> problems;
  std::optional<Vertex> first_bad_vertex;
  bool ok() const { return problems.empty(); }
};

/// Independent re-check of a certificate against a graph and boundary.
CertificateCheck check_certificate(const Multigraph& g, const Boundary& beta,
                                   const OrientationCertificate& cert);

/// Exhaustive search ran to completion without finding a solution.
struct Refutation {
  /// Product over classes of (mu + 1), saturating at UINT64_MAX.
  std::uint64_t search_space = 0;
  /// Leaves accounted for by visits and pruned subtrees.
  std::uint64_t covered = 0;
  std::uint64_t nodes = 0;
  bool complete() const { return covered == search_space; }
};

/// A guard stopped the search before a verdict.
struct Refusal {
  std::string reason;
};

template <class T>
using Verdict = std::variant<T, Refutation, Refusal>;

struct SearchLimits {
  /// 0 means unlimited.
  std::uint64_t max_nodes = 0;
};

/// Depth-first search over per-class nets with per-vertex residue pruning.
Verdict<OrientationCertificate> beta_orientation(const Multigraph& g, const Boundary& beta,
                                                 SearchLimits limits = {});
/// beta_orientation with the all-zero boundary and modulus 2p+1.
Verdict<OrientationCertificate> mod_orientation(const Multigraph& g, int p,
                                                SearchLimits limits = {});

struct StrongConfig {
  /// Guard on the number of boundaries (m^(n-1)) the checker may enumerate.
  std::uint64_t max_boundaries = std::uint64_t{1} << 26;
  int max_vertices = 12;
};

/// strongly_connected verdict: achievable_all, or the lexicographically least
/// unachievable boundary (last residue forced by the others).
struct StrongResult {
  bool strongly_connected = false;
  std::optional<Boundary> witness;
  std::uint64_t boundaries_checked = 0;
};

/// Decides strong Z_m-connectivity by computing the set of achievable
/// boundaries class by class.
Verdict<StrongResult> strongly_connected(const Multigraph& g, int modulus, StrongConfig config = {});
/// Same verdict, one beta_orientation search per boundary.
Verdict<StrongResult> strongly_connected_by_search(const Multigraph& g, int modulus,
                                                   StrongConfig config = {});
/// Certificates for every boundary in lexicographic order; nullopt if some
/// boundary is not achievable.
std::optional<std::vector<std::pair<Boundary, OrientationCertificate>>> certificate_set(
    const Multigraph& g, int modulus);

/// Enumerates all boundaries for n vertices in lexicographic order.
std::vector<Boundary> all_boundaries(int modulus, int n);

/// A subgraph H of G: vertex set plus, for each class inside it, how many of
/// G's copies belong to H.
struct SubgraphSpec {
  std::vector<Vertex> vertices;
  std::map<VertexPair, int> copies;

  /// H as a standalone multigraph, vertices numbered in order of `vertices`.
  Multigraph as_graph() const;
  static SubgraphSpec induced(const Multigraph& g, std::vector<Vertex> vertices);
};

/// beta' on G/H: the merged vertex carries the sum of beta over V(H).
Boundary contracted_boundary(const Boundary& beta, const Contraction& c);

struct ExtensionFailure {
  /// Residual boundary on H (indexed like SubgraphSpec::vertices) that H
  /// could not achieve.
  Boundary residual;
};

/// Pulls a beta'-orientation of G/H back to a beta-orientation of G:
/// D' is copied onto edges leaving V(H), edges of G[V(H)] outside H are
/// oriented one way, and H absorbs the residual boundary.
std::variant<OrientationCertificate, ExtensionFailure> extend_orientation(
    const Multigraph& g, const SubgraphSpec& h, const OrientationCertificate& contracted_cert,
    const Boundary& beta);

/// Splits the net of an aggregated class into nets for its constituent
/// classes (each within [-mu, mu] with the parity of mu).
std::vector<int> split_net(int total, const std::vector<int>& multiplicities);

// ---- Z_m flows --------------------------------------------------------------

enum class Direction { kForward, kBackward };  // forward means u -> v for u < v

struct FlowValue {
  VertexPair edge;
  int copy = 0;
  int value = 0;
  Direction dir = Direction::kForward;
};

struct ZFlow {
  int modulus = 0;
  std::vector<FlowValue> values;
};

/// Value p on every copy along its certificate direction. Requires a
/// modulo-(2p+1) orientation.
ZFlow orientation_to_zflow(const Multigraph& g, const OrientationCertificate& cert, int p);
/// Nowhere-zero, one value per edge copy, conservation mod m at every vertex.
bool verify_zflow(const Multigraph& g, const ZFlow& flow, std::string* why = nullptr);
/// No two edge values sum to 0 mod m.
bool is_antisymmetric(const ZFlow& flow);

/// Integer flow: per copy a direction and value in [b, a-b].
struct CircularFlow {
  int a = 0;
  int b = 0;
  std::vector<FlowValue> values;
};

struct CircularFlowLimits {
  int max_edges = 20;
};

/// Exhaustive search for a circular a/b-flow (desk-scale oracle).
Verdict<CircularFlow> find_circular_flow(const Multigraph& g, int a, int b,
                                         CircularFlowLimits limits = {});
bool verify_circular_flow(const Multigraph& g, const CircularFlow& flow);

}  // namespace modflow
