#include "modflow/planar.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "modflow/weights.hpp"

namespace modflow {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// ---- PlaneGraph ---------------------------------------------------------------

int PlaneGraph::add_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("plane graph edges cannot be loops");
  int e = edge_count();
  ends_.emplace_back(a, b);
  rot_.at(a).push_back(2 * e);
  rot_.at(b).push_back(2 * e + 1);
  return e;
}

Vertex PlaneGraph::tail(int dart) const {
  const auto& [a, b] = ends_.at(dart >> 1);
  return (dart & 1) ? b : a;
}

Multigraph PlaneGraph::graph() const {
  Multigraph g(vertex_count());
  for (const auto& [a, b] : ends_) g.add_edges(a, b);
  return g;
}

std::vector<EdgeCopy> PlaneGraph::edge_copies() const {
  std::map<VertexPair, int> next;
  std::vector<EdgeCopy> out;
  out.reserve(ends_.size());
  for (const auto& [a, b] : ends_) {
    VertexPair p(a, b);
    out.push_back({p, next[p]++});
  }
  return out;
}

std::vector<std::vector<int>> PlaneGraph::face_walks() const {
  std::vector<int> pos(2 * ends_.size(), -1);
  for (const auto& r : rot_) {
    for (std::size_t i = 0; i < r.size(); ++i) pos[r[i]] = static_cast<int>(i);
  }
  std::vector<bool> seen(pos.size(), false);
  std::vector<std::vector<int>> walks;
  for (int start = 0; start < static_cast<int>(pos.size()); ++start) {
    if (seen[start]) continue;
    std::vector<int> walk;
    int d = start;
    do {
      seen[d] = true;
      walk.push_back(d);
      int r = reverse(d);
      const auto& around = rot_[tail(r)];
      d = around[(pos[r] + 1) % around.size()];
    } while (d != start);
    walks.push_back(std::move(walk));
  }
  return walks;
}

bool PlaneGraph::euler_ok() const {
  const int n = vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : ends_) parent[find(a)] = find(b);
  int components = 0;
  int isolated = 0;
  for (int v = 0; v < n; ++v) {
    if (find(v) == v) ++components;
    if (rot_[v].empty()) ++isolated;
  }
  long long faces = static_cast<long long>(face_walks().size()) + isolated;
  return n - edge_count() + faces == 2LL * components;
}

void PlaneGraph::check_consistent() const {
  std::vector<int> count(2 * ends_.size(), 0);
  for (Vertex v = 0; v < vertex_count(); ++v) {
    for (int d : rot_[v]) {
      if (d < 0 || d >= static_cast<int>(count.size()) || tail(d) != v) {
        throw std::logic_error("dart in the wrong rotation");
      }
      ++count[d];
    }
  }
  for (int c : count) {
    if (c != 1) throw std::logic_error("dart missing or repeated in rotations");
  }
}

namespace {

// Rebuilds a plane graph keeping only live edges and renumbering vertices.
PlaneGraph compact(const std::vector<std::pair<Vertex, Vertex>>& ends, const std::vector<bool>& alive,
                   const std::vector<std::vector<int>>& rot, const std::vector<Vertex>& new_index,
                   int new_n) {
  std::vector<int> new_edge(ends.size(), -1);
  PlaneGraph out(new_n);
  std::vector<std::vector<int>> new_rot(new_n);
  int next = 0;
  for (std::size_t e = 0; e < ends.size(); ++e) {
    if (alive[e]) new_edge[e] = next++;
  }
  // add_edge appends darts; we overwrite rotations afterwards.
  for (std::size_t e = 0; e < ends.size(); ++e) {
    if (alive[e]) out.add_edge(new_index[ends[e].first], new_index[ends[e].second]);
  }
  for (std::size_t v = 0; v < rot.size(); ++v) {
    if (new_index[v] < 0) continue;
    std::vector<int> r;
    for (int d : rot[v]) {
      int e = d >> 1;
      if (alive[e]) r.push_back(2 * new_edge[e] + (d & 1));
    }
    new_rot[new_index[v]] = std::move(r);
  }
  for (int v = 0; v < new_n; ++v) out.set_rotation(v, std::move(new_rot[v]));
  return out;
}

std::vector<int> rotate_to(const std::vector<int>& r, int dart) {
  auto it = std::find(r.begin(), r.end(), dart);
  std::vector<int> out(it, r.end());
  out.insert(out.end(), r.begin(), it);
  return out;
}

}  // namespace

PlaneGraph PlaneGraph::contracted(std::span<const Vertex> s) const {
  const int n = vertex_count();
  if (s.empty()) throw std::invalid_argument("cannot contract an empty set");
  VertexMask in = mask_of(n, s);
  Vertex root = *std::min_element(s.begin(), s.end());
  auto ends = ends_;
  auto rot = rot_;
  std::vector<bool> alive(ends.size(), true);
  std::vector<bool> merged(n, false);
  merged[root] = true;
  std::size_t merged_count = 1;
  std::size_t target = 0;
  for (int v = 0; v < n; ++v) target += in[v] ? 1 : 0;
  while (merged_count < target) {
    // An edge from the merged vertex to an unmerged member of s.
    int pick = -1;
    for (int d : rot[root]) {
      int e = d >> 1;
      Vertex other = (d & 1) ? ends[e].first : ends[e].second;
      if (in[other] && !merged[other]) {
        pick = d;
        break;
      }
    }
    if (pick < 0) throw std::invalid_argument("contracted set does not induce a connected subgraph");
    int e = pick >> 1;
    Vertex y = (pick & 1) ? ends[e].first : ends[e].second;
    auto a = rotate_to(rot[root], pick);
    auto b = rotate_to(rot[y], pick ^ 1);
    std::vector<int> joined(a.begin() + 1, a.end());
    joined.insert(joined.end(), b.begin() + 1, b.end());
    alive[e] = false;
    for (int d : b) {
      int f = d >> 1;
      if (ends[f].first == y) ends[f].first = root;
      if (ends[f].second == y) ends[f].second = root;
    }
    rot[y].clear();
    // Drop loops created by the merge.
    std::vector<int> kept;
    for (int d : joined) {
      int f = d >> 1;
      if (ends[f].first == ends[f].second) {
        alive[f] = false;
      } else {
        kept.push_back(d);
      }
    }
    rot[root] = std::move(kept);
    merged[y] = true;
    ++merged_count;
  }
  std::vector<Vertex> new_index(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (!in[v] || v == root) new_index[v] = next++;
  }
  return compact(ends, alive, rot, new_index, next);
}

PlaneGraph PlaneGraph::lift_successive(Vertex v, int pos) const {
  const auto& r = rot_.at(v);
  if (r.size() < 2) throw std::invalid_argument("lift needs two darts at the vertex");
  int d1 = r[pos % r.size()];
  int d2 = r[(pos + 1) % r.size()];
  Vertex w1 = head(d1);
  Vertex w2 = head(d2);
  PlaneGraph out = *this;
  if (w1 == w2) {
    // The lifted copy would be a loop; it is dropped.
    std::vector<bool> alive(ends_.size(), true);
    alive[d1 >> 1] = false;
    alive[d2 >> 1] = false;
    std::vector<Vertex> id(vertex_count());
    std::iota(id.begin(), id.end(), 0);
    return compact(ends_, alive, rot_, id, vertex_count());
  }
  int e = out.edge_count();
  out.ends_.emplace_back(w1, w2);
  auto replace = [&](Vertex at, int old_dart, int new_dart) {
    auto& rr = out.rot_[at];
    *std::find(rr.begin(), rr.end(), old_dart) = new_dart;
  };
  replace(w1, d1 ^ 1, 2 * e);
  replace(w2, d2 ^ 1, 2 * e + 1);
  auto& rv = out.rot_[v];
  rv.erase(std::remove_if(rv.begin(), rv.end(), [&](int d) { return d == d1 || d == d2; }), rv.end());
  std::vector<bool> alive(out.ends_.size(), true);
  alive[d1 >> 1] = false;
  alive[d2 >> 1] = false;
  std::vector<Vertex> id(vertex_count());
  std::iota(id.begin(), id.end(), 0);
  return compact(out.ends_, alive, out.rot_, id, vertex_count());
}

PlaneGraph PlaneGraph::lift_path_beside(std::span<const Vertex> path) const {
  if (path.size() < 3) throw std::invalid_argument("a lifted path needs at least two edges");
  Vertex first = path.front();
  Vertex last = path.back();
  if (first == last) throw std::invalid_argument("lifted path must join distinct vertices");
  int beside = -1;
  for (int d : rot_.at(first)) {
    if (head(d) == last) {
      beside = d;
      break;
    }
  }
  if (beside < 0) throw std::invalid_argument("lift guard: the new edge must already have a copy");
  std::vector<bool> alive(ends_.size() + 1, true);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int found = -1;
    for (int d : rot_.at(path[i])) {
      if (head(d) == path[i + 1] && alive[d >> 1] && (d >> 1) != (beside >> 1)) {
        found = d;
        break;
      }
    }
    if (found < 0) {
      throw std::invalid_argument("lifted path uses a missing edge " + std::to_string(path[i]) + "-" +
                                  std::to_string(path[i + 1]));
    }
    alive[found >> 1] = false;
  }
  PlaneGraph out = *this;
  int e = out.edge_count();
  out.ends_.emplace_back(first, last);
  // New copy sits just before `beside` at first and just after it at last,
  // so the two bound a 2-face.
  auto& rf = out.rot_[first];
  rf.insert(std::find(rf.begin(), rf.end(), beside), 2 * e);
  auto& rl = out.rot_[last];
  rl.insert(std::find(rl.begin(), rl.end(), beside ^ 1) + 1, 2 * e + 1);
  std::vector<Vertex> id(vertex_count());
  std::iota(id.begin(), id.end(), 0);
  return compact(out.ends_, alive, out.rot_, id, vertex_count());
}

PlaneGraph PlaneGraph::without_vertex(Vertex v) const {
  if (!rot_.at(v).empty()) throw std::invalid_argument("only isolated vertices can be removed");
  std::vector<Vertex> id(vertex_count());
  for (int u = 0; u < vertex_count(); ++u) id[u] = u < v ? u : (u == v ? -1 : u - 1);
  std::vector<bool> alive(ends_.size(), true);
  return compact(ends_, alive, rot_, id, vertex_count() - 1);
}

// ---- RotationSystem -----------------------------------------------------------

RotationSystem::RotationSystem(Multigraph g, std::vector<std::vector<EdgeCopy>> order)
    : graph_(std::move(g)), order_(std::move(order)) {
  const int n = graph_.vertex_count();
  if (static_cast<int>(order_.size()) != n) {
    throw InvalidEmbedding("rotation lists " + std::to_string(order_.size()) + " vertices, graph has " +
                           std::to_string(n));
  }
  if (!graph_.is_connected()) throw InvalidEmbedding("embedded graph must be connected");
  for (Vertex v = 0; v < n; ++v) {
    std::set<EdgeCopy> seen;
    for (const auto& c : order_[v]) {
      if (!c.edge.contains(v)) {
        throw InvalidEmbedding("rotation at " + std::to_string(v) + " lists an edge not incident to it");
      }
      if (c.copy < 0 || c.copy >= graph_.multiplicity(c.edge.u, c.edge.v)) {
        throw InvalidEmbedding("rotation at " + std::to_string(v) + " lists a missing copy of " +
                               std::to_string(c.edge.u) + "-" + std::to_string(c.edge.v));
      }
      if (!seen.insert(c).second) {
        throw InvalidEmbedding("rotation at " + std::to_string(v) + " repeats an edge copy");
      }
    }
    if (static_cast<int>(seen.size()) != graph_.degree(v)) {
      throw InvalidEmbedding("rotation at " + std::to_string(v) + " misses edge copies");
    }
    const auto& r = order_[v];
    std::map<Vertex, int> runs;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto& prev = r[(i + r.size() - 1) % r.size()];
      if (prev.edge != r[i].edge) ++runs[r[i].edge.other(v)];
    }
    for (const auto& [u, count] : runs) {
      if (count > 1) {
        throw InvalidEmbedding("copies of " + std::to_string(std::min(u, v)) + "-" +
                               std::to_string(std::max(u, v)) + " are not consecutive at " +
                               std::to_string(v));
      }
    }
  }
  PlaneGraph p = plane();
  if (!p.euler_ok()) throw InvalidEmbedding("rotation system violates Euler's formula (not a plane embedding)");
}

PlaneGraph RotationSystem::plane() const {
  PlaneGraph p(graph_.vertex_count());
  std::map<EdgeCopy, int> id;
  for (const auto& [pair, m] : graph_.classes()) {
    for (int c = 0; c < m; ++c) id[{pair, c}] = p.add_edge(pair.u, pair.v);
  }
  for (Vertex v = 0; v < graph_.vertex_count(); ++v) {
    std::vector<int> darts;
    for (const auto& c : order_[v]) darts.push_back(2 * id.at(c) + (v == c.edge.u ? 0 : 1));
    p.set_rotation(v, std::move(darts));
  }
  return p;
}

RotationSystem RotationSystem::from_neighbor_order(const Multigraph& g,
                                                   const std::vector<std::vector<Vertex>>& neighbors) {
  const int n = g.vertex_count();
  if (static_cast<int>(neighbors.size()) != n) throw InvalidEmbedding("neighbor order size mismatch");
  std::vector<std::vector<EdgeCopy>> order(n);
  for (Vertex v = 0; v < n; ++v) {
    auto expected = g.neighbors(v);
    auto given = neighbors[v];
    std::sort(given.begin(), given.end());
    if (given != expected) {
      throw InvalidEmbedding("neighbor order at " + std::to_string(v) + " does not list each neighbor once");
    }
    for (Vertex u : neighbors[v]) {
      int m = g.multiplicity(u, v);
      VertexPair p(u, v);
      for (int i = 0; i < m; ++i) order[v].push_back({p, v < u ? m - 1 - i : i});
    }
  }
  return RotationSystem(g, std::move(order));
}

// ---- faces and strings --------------------------------------------------------

std::vector<int> Face::profile_type() const {
  auto p = profile;
  std::sort(p.rbegin(), p.rend());
  return p;
}

FaceStructure trace_faces(const RotationSystem& r) {
  PlaneGraph p = r.plane();
  auto walks = p.face_walks();
  auto copies = p.edge_copies();
  const int n = p.vertex_count();
  const long long f = n == 1 && p.edge_count() == 0 ? 1 : static_cast<long long>(walks.size());
  if (n + f - p.edge_count() != 2) {
    throw InvalidEmbedding("face tracing gives " + std::to_string(f) + " faces, Euler needs " +
                           std::to_string(2 - n + p.edge_count()));
  }
  FaceStructure out;
  std::vector<int> face_of(2 * p.edge_count(), -1);
  for (std::size_t i = 0; i < walks.size(); ++i) {
    Face face;
    face.id = static_cast<int>(i);
    face.darts = walks[i];
    for (int d : walks[i]) {
      face.walk.push_back(copies[d >> 1]);
      face_of[d] = face.id;
    }
    out.faces.push_back(std::move(face));
  }
  auto& faces = out.faces;
  auto& s = out.strings;
  s.link_of_dart.assign(face_of.size(), -1);
  s.string_of_face.assign(faces.size(), 0);
  std::vector<bool> placed(faces.size(), false);
  for (const auto& face : faces) {
    if (face.length() < 3) continue;
    for (int d : face.darts) {
      if (s.link_of_dart[d] >= 0) continue;
      Link link;
      link.face_a = face.id;
      link.dart_a = d;
      int cur = d;
      int g = face_of[cur ^ 1];
      while (faces[g].length() == 2) {
        const auto& two = faces[g].darts;
        int other = two[0] == (cur ^ 1) ? two[1] : two[0];
        link.two_faces.push_back(g);
        placed[g] = true;
        cur = other;
        g = face_of[cur ^ 1];
        ++link.edges;
      }
      link.face_b = g;
      link.dart_b = cur ^ 1;
      int id = static_cast<int>(s.links.size());
      s.link_of_dart[d] = id;
      s.link_of_dart[link.dart_b] = id;
      for (int t : link.two_faces) s.string_of_face[t] = id;
      s.links.push_back(std::move(link));
    }
  }
  for (const auto& face : faces) {
    if (face.length() != 2 || placed[face.id]) continue;
    std::vector<int> chain;
    std::queue<int> todo;
    todo.push(face.id);
    placed[face.id] = true;
    while (!todo.empty()) {
      int g = todo.front();
      todo.pop();
      chain.push_back(g);
      for (int d : faces[g].darts) {
        int h = face_of[d ^ 1];
        if (!placed[h]) {
          placed[h] = true;
          todo.push(h);
        }
      }
    }
    int code = -1 - static_cast<int>(s.closed_strings.size());
    for (int g : chain) s.string_of_face[g] = code;
    s.closed_strings.push_back(std::move(chain));
  }
  for (auto& face : faces) {
    if (face.length() < 3) continue;
    for (int d : face.darts) face.profile.push_back(s.links[s.link_of_dart[d]].edges);
  }
  return out;
}

std::vector<Face> faces(const RotationSystem& r) { return trace_faces(r).faces; }

// ---- discharging --------------------------------------------------------------

Rational ChargeLedger::total_initial() const {
  return std::accumulate(initial.begin(), initial.end(), Rational(0));
}

Rational ChargeLedger::total_final() const {
  return std::accumulate(final_charge.begin(), final_charge.end(), Rational(0));
}

Rational discharge_target(Ruleset rules) {
  return rules == Ruleset::kZ5 ? Rational(22, 9) : Rational(34, 15);
}

namespace {

bool is_type(const Face& f, std::initializer_list<int> type) {
  return f.length() == 3 && f.profile_type() == std::vector<int>(type);
}

}  // namespace

DischargeResult discharge(const RotationSystem& r, Ruleset rules) {
  FaceStructure fs = trace_faces(r);
  const auto& faces = fs.faces;
  const auto& links = fs.strings.links;
  DischargeResult result;
  result.target = discharge_target(rules);
  auto& ledger = result.ledger;
  for (const auto& f : faces) ledger.initial.push_back(Rational(f.length()));
  std::vector<Rational> charge = ledger.initial;
  // Transfers of one rule are computed from the state before that rule.
  auto apply = [&](std::vector<Transfer>& pass) {
    for (const auto& t : pass) {
      charge[t.from] -= t.amount;
      charge[t.to] += t.amount;
      ledger.transfers.push_back(t);
    }
    pass.clear();
  };
  std::vector<Transfer> pass;
  const Rational r1 = rules == Ruleset::kZ5 ? Rational(2, 9) : Rational(2, 15);
  for (const auto& link : links) {
    for (int g : link.two_faces) {
      pass.push_back({link.face_a, g, r1, "R1"});
      pass.push_back({link.face_b, g, r1, "R1"});
    }
  }
  apply(pass);

  auto both_ways = [&](const Link& link, auto&& fn) {
    fn(faces[link.face_a], faces[link.face_b], link);
    fn(faces[link.face_b], faces[link.face_a], link);
  };
  if (rules == Ruleset::kZ5) {
    for (const auto& link : links) {
      both_ways(link, [&](const Face& to, const Face& from, const Link&) {
        if (is_type(to, {2, 2, 2}) && (from.length() >= 4 || is_type(from, {2, 1, 1}))) {
          pass.push_back({from.id, to.id, Rational(1, 9), "R2"});
        }
      });
    }
    apply(pass);
    for (const auto& link : links) {
      both_ways(link, [&](const Face& to, const Face& from, const Link&) {
        if (is_type(to, {2, 2, 2}) && is_type(from, {2, 2, 1})) {
          pass.push_back({from.id, to.id, Rational(1, 18), "R3"});
        }
      });
    }
    apply(pass);
  } else {
    for (const auto& link : links) {
      both_ways(link, [&](const Face& to, const Face& from, const Link& l) {
        if (to.length() != 3 || from.length() < 4) return;
        if (l.edges <= 3) {
          pass.push_back({from.id, to.id, Rational(2, 15), "R2"});
        } else if (l.edges == 4) {
          pass.push_back({from.id, to.id, Rational(1, 15), "R2"});
        }
      });
    }
    apply(pass);
    const Rational target = result.target;
    for (const auto& f : faces) {
      if (f.length() != 3 || charge[f.id] <= target) continue;
      std::vector<int> recipients;
      for (int d : f.darts) {
        const Link& link = links[fs.strings.link_of_dart[d]];
        int other = link.dart_a == d ? link.face_b : link.face_a;
        if (other != f.id && faces[other].length() == 3 && charge[other] < target) {
          recipients.push_back(other);
        }
      }
      if (recipients.empty()) continue;
      Rational share = (charge[f.id] - target) / static_cast<long long>(recipients.size());
      for (int g : recipients) pass.push_back({f.id, g, share, "R3"});
    }
    apply(pass);
  }
  ledger.final_charge = charge;
  result.min_final = charge.empty() ? Rational(0) : *std::min_element(charge.begin(), charge.end());
  for (const auto& f : faces) {
    if (charge[f.id] < result.target) result.below_target.push_back(f.id);
  }
  return result;
}

ChargeBound charge_bound(const RotationSystem& r, Ruleset rules) {
  const Multigraph& g = r.graph();
  WeightKind kind = rules == Ruleset::kZ5 ? WeightKind::kW : WeightKind::kRho;
  auto mw = min_weight(g, kind);
  if (auto* refusal = std::get_if<Refusal>(&mw)) {
    throw PreconditionFailed("cannot establish the weight precondition: " + refusal->reason);
  }
  int value = std::get<MinWeight>(mw).value;
  if (value < 0) {
    throw PreconditionFailed(std::string(kind == WeightKind::kW ? "w" : "rho") + "(G) = " +
                             std::to_string(value) + " < 0; the bound is only derived for nonnegative weight");
  }
  ChargeBound out;
  out.total_length = 2 * g.edge_count();
  long long f = static_cast<long long>(faces(r).size());
  out.bound = rules == Ruleset::kZ5 ? Rational(22, 9) * f - Rational(2, 3)
                                    : Rational(34, 15) * f - Rational(2, 5);
  out.holds = Rational(out.total_length) <= out.bound;
  return out;
}

// ---- generators ---------------------------------------------------------------

RotationSystem kcycle_embedding(int k, int n) {
  Multigraph g = kcycle(k, n);
  if (n == 2) return RotationSystem::from_neighbor_order(g, {{1}, {0}});
  std::vector<std::vector<Vertex>> nb(n);
  for (int i = 0; i < n; ++i) nb[i] = {(i + 1) % n, (i + n - 1) % n};
  return RotationSystem::from_neighbor_order(g, nb);
}

namespace {

std::vector<std::vector<Vertex>> neighbor_order_of(const RotationSystem& r) {
  std::vector<std::vector<Vertex>> nb(r.graph().vertex_count());
  for (Vertex v = 0; v < r.graph().vertex_count(); ++v) {
    for (const auto& c : r.order()[v]) {
      Vertex u = c.edge.other(v);
      if (nb[v].empty() || nb[v].back() != u) nb[v].push_back(u);
    }
    if (nb[v].size() > 1 && nb[v].front() == nb[v].back()) nb[v].pop_back();
  }
  return nb;
}

}  // namespace

RotationSystem replicate(const RotationSystem& base, int k) {
  if (k < 1) throw std::invalid_argument("replication factor must be positive");
  if (base.graph().max_multiplicity() > 1) throw InvalidEmbedding("replicate needs a simple plane base");
  return RotationSystem::from_neighbor_order(scale(base.graph(), k), neighbor_order_of(base));
}

RotationSystem from_triangles(int n, const std::vector<std::array<Vertex, 3>>& triangles) {
  std::vector<std::map<Vertex, Vertex>> succ(n);
  Multigraph g(n);
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      Vertex a = t[i], b = t[(i + 1) % 3], c = t[(i + 2) % 3];
      if (!succ.at(a).emplace(b, c).second) throw InvalidEmbedding("triangles are not consistently oriented");
      if (a < b && g.multiplicity(a, b) == 0) g.add_edges(a, b);
    }
  }
  std::vector<std::vector<Vertex>> nb(n);
  for (Vertex a = 0; a < n; ++a) {
    if (succ[a].empty()) throw InvalidEmbedding("vertex " + std::to_string(a) + " is in no triangle");
    Vertex start = succ[a].begin()->first;
    Vertex b = start;
    do {
      nb[a].push_back(b);
      auto it = succ[a].find(b);
      if (it == succ[a].end()) throw InvalidEmbedding("triangles do not close around a vertex");
      b = it->second;
    } while (b != start && nb[a].size() <= succ[a].size());
    if (nb[a].size() != succ[a].size()) throw InvalidEmbedding("triangles around a vertex form several cycles");
  }
  return RotationSystem::from_neighbor_order(g, nb);
}

std::vector<std::array<Vertex, 3>> tetrahedron_triangles() {
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
}

std::vector<std::array<Vertex, 3>> bipyramid_triangles(int k) {
  if (k < 3) throw std::invalid_argument("bipyramid needs a cycle of length at least 3");
  std::vector<std::array<Vertex, 3>> t;
  for (int i = 0; i < k; ++i) {
    int j = (i + 1) % k;
    t.push_back({i, j, k});
    t.push_back({j, i, k + 1});
  }
  return t;
}

std::vector<std::array<Vertex, 3>> random_triangulation(int n, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("random triangulation needs n >= 4");
  std::mt19937_64 rng(seed);
  auto tris = tetrahedron_triangles();
  for (Vertex v = 4; v < n; ++v) {
    std::size_t i = rng() % tris.size();
    auto [a, b, c] = tris[i];
    tris[i] = {a, b, v};
    tris.push_back({b, c, v});
    tris.push_back({c, a, v});
  }
  std::set<VertexPair> edges;
  std::vector<int> degree(n, 0);
  for (const auto& t : tris) {
    for (int i = 0; i < 3; ++i) {
      if (edges.insert(VertexPair(t[i], t[(i + 1) % 3])).second) {
        ++degree[t[i]];
        ++degree[t[(i + 1) % 3]];
      }
    }
  }
  for (int step = 0; step < 4 * n; ++step) {
    std::size_t i = rng() % tris.size();
    int k = static_cast<int>(rng() % 3);
    Vertex a = tris[i][k], b = tris[i][(k + 1) % 3], c = tris[i][(k + 2) % 3];
    std::size_t j = tris.size();
    Vertex d = -1;
    for (std::size_t x = 0; x < tris.size(); ++x) {
      for (int y = 0; y < 3; ++y) {
        if (tris[x][y] == b && tris[x][(y + 1) % 3] == a) {
          j = x;
          d = tris[x][(y + 2) % 3];
        }
      }
    }
    if (j == tris.size() || c == d || edges.count(VertexPair(c, d)) || degree[a] <= 3 || degree[b] <= 3) {
      continue;
    }
    tris[i] = {a, d, c};
    tris[j] = {d, b, c};
    edges.erase(VertexPair(a, b));
    edges.insert(VertexPair(c, d));
    --degree[a];
    --degree[b];
    ++degree[c];
    ++degree[d];
  }
  return tris;
}

std::optional<RotationSystem> find_embedding(const Multigraph& g, std::uint64_t max_orders) {
  const int n = g.vertex_count();
  if (!g.is_connected()) return std::nullopt;
  std::vector<std::vector<Vertex>> nb(n);
  std::uint64_t total = 1;
  for (Vertex v = 0; v < n; ++v) {
    nb[v] = g.neighbors(v);
    for (std::size_t k = 2; k < nb[v].size(); ++k) {
      total *= k;
      if (total > max_orders) return std::nullopt;
    }
  }
  // Skeleton edges once; rotations are rebuilt for each choice of orders.
  std::vector<std::vector<Vertex>> order = nb;
  std::map<VertexPair, int> edge_id;
  PlaneGraph skeleton(n);
  for (const auto& [pair, m] : g.classes()) edge_id[pair] = skeleton.add_edge(pair.u, pair.v);
  const int target_faces = 2 - n + skeleton.edge_count();
  auto darts_of = [&](Vertex v) {
    std::vector<int> d;
    for (Vertex u : order[v]) d.push_back(2 * edge_id.at(VertexPair(u, v)) + (v < u ? 0 : 1));
    return d;
  };
  for (Vertex v = 0; v < n; ++v) skeleton.set_rotation(v, darts_of(v));
  // Odometer over permutations of order[v][1..].
  while (true) {
    if (static_cast<int>(skeleton.face_walks().size()) == target_faces) {
      return RotationSystem::from_neighbor_order(g, order);
    }
    Vertex v = 0;
    for (; v < n; ++v) {
      if (order[v].size() > 2 && std::next_permutation(order[v].begin() + 1, order[v].end())) break;
      // next_permutation wrapped this vertex back to sorted order; carry.
    }
    if (v == n) return std::nullopt;
    for (Vertex u = 0; u <= v; ++u) skeleton.set_rotation(u, darts_of(u));
  }
}

}  // namespace modflow
