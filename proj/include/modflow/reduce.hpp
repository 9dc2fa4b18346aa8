#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modflow/catalog.hpp"
#include "modflow/multigraph.hpp"
#include "modflow/orient.hpp"
#include "modflow/planar.hpp"

namespace modflow {

// ---- strong catalog -----------------------------------------------------------

struct StrongMember {
  std::string name;
  /// Set for members with a catalog family; the dense 4-vertex graphs have none.
  std::optional<CatalogLabel> label;
  Multigraph graph;
  /// One certificate per boundary, in lexicographic boundary order.
  std::vector<std::pair<Boundary, OrientationCertificate>> certificates;
};

/// Members certified strongly Z_m-connected on first use (m in {5, 7}), in
/// the order the solver tries them. Throws std::logic_error if a member
/// fails certification.
const std::vector<StrongMember>& strong_catalog(int modulus);

/// All 4-vertex multigraphs with 19 edges, multiplicity at most 5 and
/// minimum degree at least 8, one per isomorphism class.
std::vector<Multigraph> dense_k4_family();

struct StrongHit {
  int member = 0;
  std::string name;
  /// Host vertex for each member vertex.
  std::vector<Vertex> image;
  /// The member's copies inside the host.
  SubgraphSpec spec;
};

/// First member (catalog order) with a copy in g; first embedding in
/// lexicographic order. Members with more vertices than g are skipped.
std::optional<StrongHit> find_strong_subgraph(const Multigraph& g, int modulus);

// ---- forbidden configurations -------------------------------------------------

enum class ScanMode { kZ5, kZ7 };

/// Lifts along pattern paths (each path's ends must already be adjacent),
/// then contraction of a vertex set that then carries a strong member.
struct LiftPlan {
  std::vector<std::vector<Vertex>> paths;
  std::vector<Vertex> contract;
};

struct ForbiddenPattern {
  std::string name;
  Multigraph graph;
  LiftPlan plan;
  /// Strong member produced on `plan.contract` by the lifts.
  std::string becomes;
};

const std::vector<ForbiddenPattern>& forbidden_patterns(ScanMode mode);

struct ConfigReport {
  std::string label;
  /// Host vertex for each pattern vertex.
  std::vector<Vertex> witness;
  std::string reason;
  /// The pattern's lift plan in host vertices.
  LiftPlan plan;
};

/// Every copy of a forbidden pattern, one report per distinct set of host
/// edges used.
std::vector<ConfigReport> forbidden_scan(const Multigraph& g, ScanMode mode);

// ---- reductions ---------------------------------------------------------------

enum class StepKind { kContract, kLiftFirst, kLiftSecond, kBase, kSearch };

std::string to_string(StepKind k);

/// One reduction. For kContract and kLiftFirst, `vertices`/`copies` describe
/// the strong subgraph in the lifted graph. For kLiftSecond, `oriented` lists
/// (neighbor, +1 for v->neighbor or -1 for neighbor->v) and `paths` holds
/// {w1, v, w2} lifts, which may have w1 == w2 (the loop is dropped).
struct ReductionStep {
  StepKind kind = StepKind::kBase;
  std::string label;
  std::vector<std::vector<Vertex>> paths;
  std::vector<Vertex> vertices;
  std::map<VertexPair, int> copies;
  Vertex vertex = -1;
  std::vector<std::pair<Vertex, int>> oriented;
  Multigraph before;
  Multigraph after;
  std::vector<int> beta_before;
  std::vector<int> beta_after;
  /// kBase / kSearch: the certificate found for `before` (empty on failure).
  std::optional<OrientationCertificate> certificate;
  std::uint64_t nodes = 0;
};

/// Lifts along each path in turn, then contracts `target`. Throws
/// std::invalid_argument if a path edge is missing, a path's ends are not
/// already adjacent, or target does not carry a strong member afterwards.
ReductionStep lift_first_type(const Multigraph& g, const Boundary& beta,
                              const std::vector<std::vector<Vertex>>& paths,
                              const std::vector<Vertex>& target);

/// Orients the listed copies at v, lifts the listed pairs and deletes v.
/// Throws std::invalid_argument unless every copy at v is used exactly once
/// and the oriented net is congruent to beta(v).
ReductionStep lift_second_type(const Multigraph& g, const Boundary& beta, Vertex v,
                               const std::vector<std::pair<Vertex, int>>& oriented,
                               const std::vector<std::pair<Vertex, Vertex>>& lifts);

/// Undoes the lift of `path` (done on `before`): the net on the new
/// path[0]-path.back() copy is routed back along the path.
OrientationCertificate unlift_path(const Multigraph& before, const std::vector<Vertex>& path,
                                   const OrientationCertificate& lifted);

/// Pulls a certificate for step.after back to one for step.before. Throws
/// std::runtime_error if the strong subgraph cannot absorb the residue.
OrientationCertificate pull_back(const ReductionStep& step, const OrientationCertificate& after_cert);

// ---- solver -------------------------------------------------------------------

struct SolverConfig {
  /// Graphs with at most this many vertices are solved by exhaustive search.
  int base_n = 6;
  std::uint64_t base_nodes = 50'000'000;
  /// Direct search when no reduction applies.
  std::uint64_t search_nodes = 20'000'000;
  /// Cap on reductions that may lose solutions (lift plans and splitting).
  int lossy_attempts = 16;
  /// Minimum edge connectivity of the graph left by a lift plan.
  std::optional<int> lift_connectivity;
  bool splitting = true;
};

struct SolveResult {
  Verdict<OrientationCertificate> verdict;
  std::vector<ReductionStep> trace;
  /// Vertices where no successive pair kept the odd edge connectivity.
  std::vector<std::string> notes;
};

/// Modulo (2p+1)-orientation by reduction. A refutation is only returned
/// when every step taken preserves existence; certificates are re-verified
/// through the whole trace before returning.
SolveResult solve_planar(const Multigraph& g, int p, const std::optional<PlaneGraph>& plane = std::nullopt,
                         SolverConfig config = {});
SolveResult solve_boundary(const Multigraph& g, const Boundary& beta,
                           const std::optional<PlaneGraph>& plane = std::nullopt, SolverConfig config = {});

/// Rebuilds every step from its parameters starting at g and beta, then
/// pulls the final certificate back; returns the certificate for g or the
/// first problem found.
std::variant<OrientationCertificate, std::string> replay_trace(const Multigraph& g, const Boundary& beta,
                                                               const std::vector<ReductionStep>& trace);

}  // namespace modflow
