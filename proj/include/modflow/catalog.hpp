#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modflow/multigraph.hpp"

namespace modflow {

/// Named small multigraphs that show up as obstructions, reducible
/// configurations or strongly connected building blocks.
enum class Family {
  kParallel,          // aK2, params {a}
  kTriangle,          // T_{a,b,c}, params sorted {a,b,c}, all >= 1
  k2K4,
  k3C4,
  k3K4,
  k3K4Plus,
  k5C4Matching,       // 5C4 minus a perfect matching: cyclic multiplicities 5,4,5,4
  k5C4Minus,          // 5C4 minus one edge
  k3C4Sub,            // 3C4 with one copy of a 3-class subdivided
  kT233SubSub,        // T_{2,3,3} with both 3-classes subdivided once
  kT115Sub,           // T_{1,1,5} with one copy of the 5-class subdivided
  kT115Bullet,        // T_{1,1,5} with a 1-class subdivided
  k5C4MatchingSubSub, // 5C4= with both 5-classes subdivided once
  k5C4MatchingSubSubIdentified,
  kT444SubSubSub,     // T_{4,4,4} with each class subdivided once
};

struct CatalogLabel {
  Family family = Family::kParallel;
  std::vector<int> params;

  std::string name() const;
  bool operator==(const CatalogLabel&) const = default;
};

CatalogLabel parallel_label(int a);
CatalogLabel triangle_label(int a, int b, int c);

/// aK2 on vertices {0,1}.
Multigraph parallel_graph(int a);
/// T_{a,b,c}: mu(v0v1)=a, mu(v0v2)=b, mu(v1v2)=c.
Multigraph triangle_graph(int a, int b, int c);
/// k parallel copies of the cycle C_n (n >= 2; n == 2 gives 2k K2).
Multigraph kcycle(int k, int n);
/// k copies of every edge of the simple complete graph K_n.
Multigraph kcomplete(int k, int n);

/// Canonical drawing of a catalog member. For kParallel and kTriangle the
/// params are used; fixed families ignore them.
Multigraph catalog_graph(const CatalogLabel& label);
/// Parses names produced by CatalogLabel::name(), e.g. "4K2", "T(2,3,3)", "3K4+".
std::optional<CatalogLabel> parse_catalog_name(const std::string& name);
/// Every fixed (non-parametric) family.
std::vector<CatalogLabel> fixed_catalog_labels();

/// Returns the label iff g is isomorphic to a catalog graph.
std::optional<CatalogLabel> catalog_match(const Multigraph& g);

/// Lexicographically largest multiplicity vector over all relabelings; two
/// graphs are isomorphic iff their canonical forms agree. Exhaustive over
/// vertex permutations, so intended for n <= 8.
std::vector<int> canonical_form(const Multigraph& g);
bool isomorphic(const Multigraph& a, const Multigraph& b);

/// Injective maps phi from pattern vertices into host vertices with
/// mu_host(phi(i), phi(j)) >= mu_pattern(i, j) for every pattern pair. The
/// visitor returns false to stop the search. Maps are produced in
/// lexicographic order of (phi(0), phi(1), ...).
void for_each_embedding(const Multigraph& pattern, const Multigraph& host,
                        const std::function<bool(const std::vector<Vertex>&)>& visit);

}  // namespace modflow
