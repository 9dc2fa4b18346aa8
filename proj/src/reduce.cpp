#include "modflow/reduce.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <stdexcept>

namespace modflow {

// ---- strong catalog -----------------------------------------------------------

std::vector<Multigraph> dense_k4_family() {
  static const VertexPair pairs[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<Multigraph> out;
  std::set<std::vector<int>> seen;
  int mu[6];
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == 6) {
      if (left != 0) return;
      Multigraph g(4);
      for (int k = 0; k < 6; ++k) {
        if (mu[k] > 0) g.add_edges(pairs[k].u, pairs[k].v, mu[k]);
      }
      for (Vertex v = 0; v < 4; ++v) {
        if (g.degree(v) < 8) return;
      }
      if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
      return;
    }
    for (int m = 0; m <= std::min(5, left); ++m) {
      mu[i] = m;
      self(self, i + 1, left - m);
    }
  };
  rec(rec, 0, 19);
  return out;
}

namespace {

std::string dense_name(const Multigraph& g) {
  std::string s = "K4[";
  bool first = true;
  for (Vertex a = 0; a < 4; ++a) {
    for (Vertex b = a + 1; b < 4; ++b) {
      if (!first) s += ",";
      s += std::to_string(g.multiplicity(a, b));
      first = false;
    }
  }
  return s + "]";
}

std::vector<StrongMember> build_catalog(int modulus) {
  std::vector<std::pair<std::optional<CatalogLabel>, Multigraph>> raw;
  auto add_label = [&](const CatalogLabel& l) { raw.emplace_back(l, catalog_graph(l)); };
  if (modulus == 5) {
    add_label(parallel_label(4));
    add_label(triangle_label(2, 3, 3));
    add_label(CatalogLabel{Family::k2K4, {}});
    add_label(CatalogLabel{Family::k3C4, {}});
  } else if (modulus == 7) {
    add_label(parallel_label(6));
    std::vector<CatalogLabel> triangles;
    for (int a = 1; a <= 10; ++a) {
      for (int b = a; a + b <= 11; ++b) {
        int c = 12 - a - b;
        if (c < b) continue;
        if (edge_connectivity(triangle_graph(a, b, c)) >= 6) triangles.push_back(triangle_label(a, b, c));
      }
    }
    // Largest multiplicity first, then lexicographic.
    std::sort(triangles.begin(), triangles.end(), [](const CatalogLabel& x, const CatalogLabel& y) {
      if (x.params[2] != y.params[2]) return x.params[2] > y.params[2];
      return x.params < y.params;
    });
    for (const auto& t : triangles) add_label(t);
    add_label(CatalogLabel{Family::k3K4Plus, {}});
    add_label(CatalogLabel{Family::k5C4Matching, {}});
    std::set<std::vector<int>> seen;
    for (const auto& [l, g] : raw) seen.insert(canonical_form(g));
    for (auto& g : dense_k4_family()) {
      if (seen.insert(canonical_form(g)).second) raw.emplace_back(std::nullopt, std::move(g));
    }
  } else {
    throw std::invalid_argument("strong catalog exists for moduli 5 and 7 only, got " + std::to_string(modulus));
  }
  std::vector<StrongMember> out;
  for (auto& [label, g] : raw) {
    StrongMember m;
    m.label = label;
    m.name = label ? label->name() : dense_name(g);
    auto certs = certificate_set(g, modulus);
    if (!certs) throw std::logic_error(m.name + " failed strong Z" + std::to_string(modulus) + " certification");
    m.certificates = std::move(*certs);
    m.graph = std::move(g);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

const std::vector<StrongMember>& strong_catalog(int modulus) {
  if (modulus == 5) {
    static const std::vector<StrongMember> z5 = build_catalog(5);
    return z5;
  }
  if (modulus == 7) {
    static const std::vector<StrongMember> z7 = build_catalog(7);
    return z7;
  }
  throw std::invalid_argument("strong catalog exists for moduli 5 and 7 only, got " + std::to_string(modulus));
}

namespace {

SubgraphSpec spec_from_embedding(const Multigraph& pattern, const std::vector<Vertex>& image) {
  SubgraphSpec s;
  s.vertices = image;
  for (const auto& [pair, m] : pattern.classes()) s.copies[VertexPair(image[pair.u], image[pair.v])] = m;
  return s;
}

// Member of the catalog whose graph is isomorphic to h, if any.
const StrongMember* strong_member_of(const Multigraph& h, int modulus) {
  auto form = canonical_form(h);
  for (const auto& m : strong_catalog(modulus)) {
    if (m.graph.vertex_count() == h.vertex_count() && m.graph.edge_count() == h.edge_count() &&
        canonical_form(m.graph) == form) {
      return &m;
    }
  }
  return nullptr;
}

}  // namespace

std::optional<StrongHit> find_strong_subgraph(const Multigraph& g, int modulus) {
  const auto& catalog = strong_catalog(modulus);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& m = catalog[i];
    if (m.graph.vertex_count() > g.vertex_count() || m.graph.edge_count() > g.edge_count()) continue;
    std::optional<StrongHit> hit;
    for_each_embedding(m.graph, g, [&](const std::vector<Vertex>& phi) {
      hit = StrongHit{static_cast<int>(i), m.name, phi, spec_from_embedding(m.graph, phi)};
      return false;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

// ---- forbidden configurations -------------------------------------------------

namespace {

ForbiddenPattern pattern(Family f, LiftPlan plan, std::string becomes) {
  CatalogLabel l{f, {}};
  return {l.name(), catalog_graph(l), std::move(plan), std::move(becomes)};
}

ForbiddenPattern triangle_pattern(int a, int b, int c, LiftPlan plan, std::string becomes) {
  CatalogLabel l = triangle_label(a, b, c);
  return {l.name(), triangle_graph(a, b, c), std::move(plan), std::move(becomes)};
}

std::vector<ForbiddenPattern> build_patterns(ScanMode mode) {
  if (mode == ScanMode::kZ5) {
    return {
        triangle_pattern(3, 1, 1, {{{0, 2, 1}}, {0, 1}}, "4K2"),
        pattern(Family::k3C4Sub, {{{0, 4, 1}}, {0, 1, 2, 3}}, "3C4"),
        pattern(Family::kT233SubSub, {{{0, 3, 2}, {2, 4, 1}}, {0, 1, 2}}, "T(2,3,3)"),
    };
  }
  return {
      triangle_pattern(5, 1, 1, {{{0, 2, 1}}, {0, 1}}, "6K2"),
      pattern(Family::kT115Sub, {{{0, 2, 1}, {0, 3, 1}}, {0, 1}}, "6K2"),
      pattern(Family::kT115Bullet, {{{0, 1, 2, 3}}, {0, 3}}, "6K2"),
      triangle_pattern(4, 2, 2, {{{0, 2, 1}, {0, 2, 1}}, {0, 1}}, "6K2"),
      pattern(Family::k5C4MatchingSubSub, {{{0, 4, 1}, {2, 5, 3}}, {0, 1, 2, 3}}, "5C4="),
      pattern(Family::k5C4MatchingSubSubIdentified, {{{0, 4, 1}, {2, 4, 3}}, {0, 1, 2, 3}}, "5C4="),
      pattern(Family::kT444SubSubSub, {{{1, 3, 2}, {0, 4, 2}, {0, 5, 1}}, {0, 1, 2}}, "T(4,4,4)"),
  };
}

}  // namespace

const std::vector<ForbiddenPattern>& forbidden_patterns(ScanMode mode) {
  static const std::vector<ForbiddenPattern> z5 = build_patterns(ScanMode::kZ5);
  static const std::vector<ForbiddenPattern> z7 = build_patterns(ScanMode::kZ7);
  return mode == ScanMode::kZ5 ? z5 : z7;
}

std::vector<ConfigReport> forbidden_scan(const Multigraph& g, ScanMode mode) {
  std::vector<ConfigReport> out;
  for (const auto& pat : forbidden_patterns(mode)) {
    std::set<std::map<VertexPair, int>> used;
    for_each_embedding(pat.graph, g, [&](const std::vector<Vertex>& phi) {
      auto usage = spec_from_embedding(pat.graph, phi).copies;
      if (!used.insert(usage).second) return true;
      ConfigReport r;
      r.label = pat.name;
      r.witness = phi;
      r.reason = "lifting the marked paths creates " + pat.becomes + " on {";
      for (std::size_t i = 0; i < pat.plan.contract.size(); ++i) {
        r.reason += (i ? "," : "") + std::to_string(phi[pat.plan.contract[i]]);
      }
      r.reason += "}";
      for (const auto& path : pat.plan.paths) {
        std::vector<Vertex> hp;
        for (Vertex x : path) hp.push_back(phi[x]);
        r.plan.paths.push_back(std::move(hp));
      }
      for (Vertex x : pat.plan.contract) r.plan.contract.push_back(phi[x]);
      out.push_back(std::move(r));
      return true;
    });
  }
  return out;
}

// ---- reductions ---------------------------------------------------------------

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::kContract:
      return "contract";
    case StepKind::kLiftFirst:
      return "lift1";
    case StepKind::kLiftSecond:
      return "lift2";
    case StepKind::kBase:
      return "base";
    case StepKind::kSearch:
      return "search";
  }
  return "?";
}

namespace {

std::string edge_name(Vertex a, Vertex b) { return std::to_string(a) + "-" + std::to_string(b); }

Multigraph lift_path(const Multigraph& g, const std::vector<Vertex>& path) {
  if (path.size() < 3) throw std::invalid_argument("a lifted path needs at least two edges");
  Vertex a = path.front();
  Vertex b = path.back();
  if (a == b) throw std::invalid_argument("a lifted path must join distinct vertices");
  for (Vertex x : path) {
    if (x < 0 || x >= g.vertex_count()) throw std::invalid_argument("lifted path vertex out of range");
  }
  if (g.multiplicity(a, b) < 1) {
    throw std::invalid_argument("lift guard: " + edge_name(a, b) + " must already be an edge");
  }
  Multigraph out = g;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (out.multiplicity(path[i], path[i + 1]) < 1) {
      throw std::invalid_argument("lifted path uses a missing edge " + edge_name(path[i], path[i + 1]));
    }
    out.remove_edges(path[i], path[i + 1]);
  }
  out.add_edges(a, b);
  return out;
}

std::vector<Multigraph> lift_chain(const Multigraph& g, const std::vector<std::vector<Vertex>>& paths) {
  std::vector<Multigraph> chain{g};
  for (const auto& p : paths) chain.push_back(lift_path(chain.back(), p));
  return chain;
}

// Lifts, checks that `copies` on `vertices` is a certified strong member
// inside the lifted graph, and contracts it.
ReductionStep build_first_type(const Multigraph& g, const Boundary& beta,
                               const std::vector<std::vector<Vertex>>& paths, const std::vector<Vertex>& vertices,
                               const std::map<VertexPair, int>& copies) {
  Multigraph lifted = lift_chain(g, paths).back();
  SubgraphSpec spec{vertices, copies};
  VertexMask in = mask_of(lifted.vertex_count(), vertices);
  if (std::set<Vertex>(vertices.begin(), vertices.end()).size() != vertices.size()) {
    throw std::invalid_argument("strong subgraph lists a vertex twice");
  }
  for (const auto& [pair, k] : copies) {
    if (!in[pair.u] || !in[pair.v] || k < 1 || k > lifted.multiplicity(pair.u, pair.v)) {
      throw std::invalid_argument("strong subgraph class " + edge_name(pair.u, pair.v) +
                                  " is not present in the lifted graph");
    }
  }
  const StrongMember* member = strong_member_of(spec.as_graph(), beta.modulus());
  if (!member) throw std::invalid_argument("contracted subgraph is not a certified strong member");
  Contraction c = contract(lifted, vertices);
  ReductionStep step;
  step.kind = paths.empty() ? StepKind::kContract : StepKind::kLiftFirst;
  step.label = member->name;
  step.paths = paths;
  step.vertices = vertices;
  step.copies = copies;
  step.before = g;
  step.after = c.graph;
  step.beta_before = beta.values();
  step.beta_after = contracted_boundary(beta, c).values();
  return step;
}

ReductionStep build_second_type(const Multigraph& g, const Boundary& beta, Vertex v,
                                const std::vector<std::pair<Vertex, int>>& oriented,
                                const std::vector<std::pair<Vertex, Vertex>>& lifts) {
  const int n = g.vertex_count();
  if (v < 0 || v >= n) throw std::invalid_argument("second-type lift at a missing vertex");
  std::map<Vertex, int> use;
  int net = 0;
  for (const auto& [u, s] : oriented) {
    if (s != 1 && s != -1) throw std::invalid_argument("oriented copy direction must be +1 or -1");
    ++use[u];
    net += s;
  }
  for (const auto& [w1, w2] : lifts) {
    ++use[w1];
    ++use[w2];
  }
  for (const auto& [u, k] : use) {
    if (u == v || u < 0 || u >= n || k != g.multiplicity(u, v)) {
      throw std::invalid_argument("second-type lift does not use each copy at " + std::to_string(v) +
                                  " exactly once (neighbor " + std::to_string(u) + ")");
    }
  }
  for (Vertex u : g.neighbors(v)) {
    if (!use.count(u)) {
      throw std::invalid_argument("second-type lift leaves copies of " + edge_name(u, v) + " unused");
    }
  }
  const int m = beta.modulus();
  if (mod(net, m) != beta[v]) {
    throw std::invalid_argument("oriented net " + std::to_string(net) + " at " + std::to_string(v) +
                                " is not beta(v) = " + std::to_string(beta[v]) + " mod " + std::to_string(m));
  }
  Multigraph cur = g;
  std::vector<int> b = beta.values();
  for (const auto& [u, s] : oriented) {
    cur.remove_edges(u, v);
    b[u] = mod(b[u] + s, m);
  }
  std::vector<std::vector<Vertex>> paths;
  for (const auto& [w1, w2] : lifts) {
    if (w1 == w2) {
      cur.remove_edges(v, w1, 2);
    } else {
      cur = lift(cur, v, w1, w2);
    }
    paths.push_back({w1, v, w2});
  }
  ReductionStep step;
  step.kind = StepKind::kLiftSecond;
  step.vertex = v;
  step.oriented = oriented;
  step.paths = std::move(paths);
  step.before = g;
  step.after = delete_vertex(cur, v);
  step.beta_before = beta.values();
  b.erase(b.begin() + v);
  step.beta_after = std::move(b);
  return step;
}

void add_net(OrientationCertificate& cert, Vertex from, Vertex to, int amount) {
  VertexPair p(from, to);
  cert.net[p] += from < to ? amount : -amount;
}

int net_along(const OrientationCertificate& cert, Vertex from, Vertex to) {
  auto it = cert.net.find(VertexPair(from, to));
  int o = it == cert.net.end() ? 0 : it->second;
  return from < to ? o : -o;
}

}  // namespace

ReductionStep lift_first_type(const Multigraph& g, const Boundary& beta,
                              const std::vector<std::vector<Vertex>>& paths, const std::vector<Vertex>& target) {
  Multigraph lifted = lift_chain(g, paths).back();
  std::vector<Vertex> sorted = target;
  std::sort(sorted.begin(), sorted.end());
  Multigraph induced = induced_subgraph(lifted, sorted);
  for (const auto& m : strong_catalog(beta.modulus())) {
    if (m.graph.vertex_count() != static_cast<int>(sorted.size())) continue;
    std::optional<std::vector<Vertex>> phi;
    for_each_embedding(m.graph, induced, [&](const std::vector<Vertex>& f) {
      phi = f;
      return false;
    });
    if (!phi) continue;
    std::vector<Vertex> image;
    for (Vertex x : *phi) image.push_back(sorted[x]);
    return build_first_type(g, beta, paths, image, spec_from_embedding(m.graph, image).copies);
  }
  throw std::invalid_argument("target set does not carry a strong Z" + std::to_string(beta.modulus()) +
                              " member after lifting");
}

ReductionStep lift_second_type(const Multigraph& g, const Boundary& beta, Vertex v,
                               const std::vector<std::pair<Vertex, int>>& oriented,
                               const std::vector<std::pair<Vertex, Vertex>>& lifts) {
  return build_second_type(g, beta, v, oriented, lifts);
}

OrientationCertificate unlift_path(const Multigraph& before, const std::vector<Vertex>& path,
                                   const OrientationCertificate& lifted) {
  Vertex a = path.front();
  Vertex b = path.back();
  int total = net_along(lifted, a, b);
  int kept = before.multiplicity(a, b);
  int routed = total;
  OrientationCertificate cert = lifted;
  cert.net.erase(VertexPair(a, b));
  if (kept > 0) {
    auto parts = split_net(total, {kept, 1});
    add_net(cert, a, b, parts[0]);
    routed = parts[1];
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) add_net(cert, path[i], path[i + 1], routed);
  return cert;
}

OrientationCertificate pull_back(const ReductionStep& step, const OrientationCertificate& after_cert) {
  const int m = after_cert.modulus;
  switch (step.kind) {
    case StepKind::kContract:
    case StepKind::kLiftFirst: {
      auto chain = lift_chain(step.before, step.paths);
      Boundary beta(m, step.beta_before);
      auto r = extend_orientation(chain.back(), SubgraphSpec{step.vertices, step.copies}, after_cert, beta);
      if (std::holds_alternative<ExtensionFailure>(r)) {
        throw std::runtime_error(step.label + " could not absorb its residual boundary");
      }
      auto cert = std::get<OrientationCertificate>(r);
      for (std::size_t i = step.paths.size(); i-- > 0;) cert = unlift_path(chain[i], step.paths[i], cert);
      return cert;
    }
    case StepKind::kLiftSecond: {
      const Vertex v = step.vertex;
      OrientationCertificate cert;
      cert.modulus = m;
      for (const auto& [p, o] : after_cert.net) {
        Vertex a = p.u >= v ? p.u + 1 : p.u;
        Vertex b = p.v >= v ? p.v + 1 : p.v;
        cert.net[VertexPair(a, b)] = o;
      }
      // Intermediate graphs: oriented copies removed, then each pair lifted.
      std::vector<Multigraph> chain;
      Multigraph cur = step.before;
      for (const auto& [u, s] : step.oriented) cur.remove_edges(u, v);
      chain.push_back(cur);
      for (const auto& path : step.paths) {
        if (path[0] == path[2]) {
          cur.remove_edges(v, path[0], 2);
        } else {
          cur = lift(cur, v, path[0], path[2]);
        }
        chain.push_back(cur);
      }
      for (std::size_t i = step.paths.size(); i-- > 0;) {
        const auto& path = step.paths[i];
        if (path[0] == path[2]) {
          // One copy each way; the class net is unchanged.
          cert.net[VertexPair(v, path[0])] += 0;
        } else {
          cert = unlift_path(chain[i], path, cert);
        }
      }
      for (const auto& [u, s] : step.oriented) add_net(cert, v, u, s);
      return cert;
    }
    case StepKind::kBase:
    case StepKind::kSearch:
      break;
  }
  throw std::invalid_argument("leaf steps have nothing to pull back");
}

// ---- solver -------------------------------------------------------------------

namespace {

struct Outcome {
  std::optional<OrientationCertificate> cert;
  std::optional<Refutation> refutation;
  std::optional<Refusal> refusal;
  std::vector<ReductionStep> trace;
};

struct Context {
  SolverConfig config;
  int modulus = 0;
  int lossy_used = 0;
  std::vector<std::string> notes;
};

Outcome leaf(const Multigraph& g, const Boundary& beta, StepKind kind, std::uint64_t budget, bool lossless) {
  ReductionStep step;
  step.kind = kind;
  step.before = g;
  step.beta_before = beta.values();
  auto v = beta_orientation(g, beta, SearchLimits{budget});
  Outcome out;
  if (auto* c = std::get_if<OrientationCertificate>(&v)) {
    step.certificate = *c;
    out.cert = *c;
    out.trace.push_back(std::move(step));
  } else if (auto* r = std::get_if<Refutation>(&v)) {
    if (lossless) {
      out.refutation = *r;
    } else {
      out.refusal = Refusal{"a reduction that may lose solutions led to a graph without one"};
    }
  } else {
    out.refusal = std::get<Refusal>(v);
  }
  return out;
}

Outcome run(const Multigraph& g, const Boundary& beta, const std::optional<PlaneGraph>& plane, bool lossless,
            Context& ctx);

// Recurses on step.after and pulls a certificate back through the step.
Outcome through(const ReductionStep& step, const std::optional<PlaneGraph>& plane, bool lossless, Context& ctx) {
  Outcome sub = run(step.after, Boundary(ctx.modulus, step.beta_after), plane, lossless, ctx);
  if (!sub.cert) return sub;
  OrientationCertificate cert;
  try {
    cert = pull_back(step, *sub.cert);
  } catch (const std::runtime_error& e) {
    return Outcome{std::nullopt, std::nullopt, Refusal{e.what()}, {}};
  }
  if (!check_certificate(step.before, Boundary(ctx.modulus, step.beta_before), cert).ok()) {
    throw std::logic_error("pulled-back certificate fails after " + to_string(step.kind) + " " + step.label);
  }
  Outcome out;
  out.cert = cert;
  out.trace.push_back(step);
  out.trace.insert(out.trace.end(), sub.trace.begin(), sub.trace.end());
  return out;
}

std::optional<Outcome> try_lift_plans(const Multigraph& g, const Boundary& beta,
                                      const std::optional<PlaneGraph>& plane, Context& ctx) {
  const ScanMode mode = ctx.modulus == 5 ? ScanMode::kZ5 : ScanMode::kZ7;
  const int need = ctx.config.lift_connectivity.value_or(ctx.modulus == 5 ? 4 : 6);
  for (const auto& report : forbidden_scan(g, mode)) {
    if (ctx.lossy_used >= ctx.config.lossy_attempts) break;
    ++ctx.lossy_used;
    ReductionStep step;
    try {
      step = lift_first_type(g, beta, report.plan.paths, report.plan.contract);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (step.after.vertex_count() > 1 && edge_connectivity(step.after) < need) continue;
    std::optional<PlaneGraph> next;
    if (plane) {
      PlaneGraph p = *plane;
      for (const auto& path : step.paths) p = p.lift_path_beside(path);
      next = p.contracted(step.vertices);
    }
    Outcome out = through(step, next, false, ctx);
    if (out.cert) return out;
  }
  return std::nullopt;
}

std::optional<Outcome> try_splitting(const Multigraph& g, const Boundary& beta, const PlaneGraph& plane,
                                     Context& ctx) {
  if (ctx.lossy_used >= ctx.config.lossy_attempts) return std::nullopt;
  const int p = (ctx.modulus - 1) / 2;
  Vertex v = -1;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (beta[x] == 0 && g.degree(x) > 0 && g.degree(x) % 2 == 0) {
      v = x;
      break;
    }
  }
  if (v < 0) return std::nullopt;
  ++ctx.lossy_used;
  const int goal = std::min(4 * p + 3, odd_edge_connectivity(g));
  PlaneGraph cur = plane;
  std::vector<std::pair<Vertex, Vertex>> lifts;
  bool reported = false;
  while (!cur.rotation(v).empty()) {
    const int d = static_cast<int>(cur.rotation(v).size());
    int pick = 0;
    if (d > 2) {
      pick = -1;
      for (int pos = 0; pos < d && pick < 0; ++pos) {
        if (odd_edge_connectivity(cur.lift_successive(v, pos).graph()) >= goal) pick = pos;
      }
      if (pick < 0) {
        if (!reported) {
          ctx.notes.push_back("vertex " + std::to_string(v) + " of " + describe(g) +
                              ": no successive pair keeps odd edge connectivity " + std::to_string(goal));
          reported = true;
        }
        pick = 0;
      }
    }
    const auto& r = cur.rotation(v);
    lifts.emplace_back(cur.head(r[pick]), cur.head(r[(pick + 1) % d]));
    cur = cur.lift_successive(v, pick);
  }
  ReductionStep step = build_second_type(g, beta, v, {}, lifts);
  PlaneGraph next = cur.without_vertex(v);
  if (!(next.graph() == step.after)) throw std::logic_error("splitting lost track of the embedding");
  Outcome out = through(step, next, false, ctx);
  if (out.cert) return out;
  return std::nullopt;
}

Outcome run(const Multigraph& g, const Boundary& beta, const std::optional<PlaneGraph>& plane, bool lossless,
            Context& ctx) {
  if (g.vertex_count() <= ctx.config.base_n) {
    return leaf(g, beta, StepKind::kBase, ctx.config.base_nodes, lossless);
  }
  if (auto hit = find_strong_subgraph(g, ctx.modulus)) {
    ReductionStep step = build_first_type(g, beta, {}, hit->spec.vertices, hit->spec.copies);
    std::optional<PlaneGraph> next;
    if (plane) next = plane->contracted(hit->spec.vertices);
    return through(step, next, lossless, ctx);
  }
  if (auto out = try_lift_plans(g, beta, plane, ctx)) return *out;
  if (plane && ctx.config.splitting && g.is_connected()) {
    if (auto out = try_splitting(g, beta, *plane, ctx)) return *out;
  }
  return leaf(g, beta, StepKind::kSearch, ctx.config.search_nodes, lossless);
}

}  // namespace

SolveResult solve_boundary(const Multigraph& g, const Boundary& beta, const std::optional<PlaneGraph>& plane,
                           SolverConfig config) {
  if (beta.size() != g.vertex_count()) throw std::invalid_argument("boundary size does not match the graph");
  if (beta.modulus() != 5 && beta.modulus() != 7) {
    throw std::invalid_argument("the solver handles moduli 5 and 7 (p = 2 or 3)");
  }
  if (plane && !(plane->graph() == g)) throw std::invalid_argument("rotation system does not match the graph");
  Context ctx{config, beta.modulus(), 0, {}};
  Outcome out = run(g, beta, plane, true, ctx);
  SolveResult result{Refusal{}, std::move(out.trace), std::move(ctx.notes)};
  if (out.cert) {
    auto replay = replay_trace(g, beta, result.trace);
    if (auto* why = std::get_if<std::string>(&replay)) throw std::logic_error("trace replay failed: " + *why);
    result.verdict = std::get<OrientationCertificate>(replay);
  } else if (out.refutation) {
    result.verdict = *out.refutation;
  } else {
    result.verdict = out.refusal.value_or(Refusal{"no verdict"});
  }
  return result;
}

SolveResult solve_planar(const Multigraph& g, int p, const std::optional<PlaneGraph>& plane, SolverConfig config) {
  if (p != 2 && p != 3) throw std::invalid_argument("p must be 2 or 3");
  return solve_boundary(g, Boundary::zero(2 * p + 1, g.vertex_count()), plane, config);
}

std::variant<OrientationCertificate, std::string> replay_trace(const Multigraph& g, const Boundary& beta,
                                                               const std::vector<ReductionStep>& trace) {
  const int m = beta.modulus();
  std::vector<ReductionStep> rebuilt;
  Multigraph cur = g;
  Boundary cur_beta = beta;
  std::optional<OrientationCertificate> bottom;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    const std::string where = "step " + std::to_string(i + 1) + " (" + to_string(s.kind) + ")";
    if (bottom) return where + " follows a leaf step";
    try {
      switch (s.kind) {
        case StepKind::kContract:
        case StepKind::kLiftFirst:
          rebuilt.push_back(build_first_type(cur, cur_beta, s.paths, s.vertices, s.copies));
          break;
        case StepKind::kLiftSecond: {
          std::vector<std::pair<Vertex, Vertex>> lifts;
          for (const auto& p : s.paths) {
            if (p.size() != 3 || p[1] != s.vertex) return where + ": lift does not pass through the vertex";
            lifts.emplace_back(p[0], p[2]);
          }
          rebuilt.push_back(build_second_type(cur, cur_beta, s.vertex, s.oriented, lifts));
          break;
        }
        case StepKind::kBase:
        case StepKind::kSearch: {
          if (!s.certificate) return where + " has no certificate";
          auto check = check_certificate(cur, cur_beta, *s.certificate);
          if (!check.ok()) return where + ": " + check.problems.front();
          bottom = *s.certificate;
          continue;
        }
      }
    } catch (const std::invalid_argument& e) {
      return where + ": " + e.what();
    }
    cur = rebuilt.back().after;
    cur_beta = Boundary(m, rebuilt.back().beta_after);
  }
  if (!bottom) return std::string("trace has no leaf certificate");
  OrientationCertificate cert = *bottom;
  for (std::size_t i = rebuilt.size(); i-- > 0;) {
    try {
      cert = pull_back(rebuilt[i], cert);
    } catch (const std::runtime_error& e) {
      return "step " + std::to_string(i + 1) + ": " + e.what();
    }
    auto check = check_certificate(rebuilt[i].before, Boundary(m, rebuilt[i].beta_before), cert);
    if (!check.ok()) return "step " + std::to_string(i + 1) + " pull-back: " + check.problems.front();
  }
  return cert;
}

}  // namespace modflow
