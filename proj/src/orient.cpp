#include "modflow/orient.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace modflow {

void check_modulus(int modulus) {
  if (modulus < 3 || modulus % 2 == 0) {
    throw std::invalid_argument("modulus must be odd and at least 3, got " +
                                std::to_string(modulus));
  }
}

int mod(long long value, int modulus) {
  long long r = value % modulus;
  return static_cast<int>(r < 0 ? r + modulus : r);
}

Boundary::Boundary(int modulus, std::vector<int> values) : modulus_(modulus), values_(std::move(values)) {
  check_modulus(modulus_);
  long long sum = 0;
  for (int& x : values_) {
    x = mod(x, modulus_);
    sum += x;
  }
  if (sum % modulus_ != 0) {
    throw std::invalid_argument("boundary values must sum to 0 mod " + std::to_string(modulus_));
  }
}

Boundary Boundary::zero(int modulus, int n) { return Boundary(modulus, std::vector<int>(n, 0)); }

Boundary Boundary::negated() const {
  std::vector<int> neg(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) neg[i] = mod(-values_[i], modulus_);
  return Boundary(modulus_, neg);
}

int OrientationCertificate::outflow(Vertex v) const {
  int total = 0;
  for (const auto& [pair, o] : net) {
    if (pair.u == v) total += o;
    if (pair.v == v) total -= o;
  }
  return total;
}

CertificateCheck check_certificate(const Multigraph& g, const Boundary& beta,
                                   const OrientationCertificate& cert) {
  CertificateCheck result;
  auto complain = [&](std::string msg, std::optional<Vertex> v = std::nullopt) {
    result.problems.push_back(std::move(msg));
    if (v && !result.first_bad_vertex) result.first_bad_vertex = v;
  };
  if (cert.modulus != beta.modulus()) complain("certificate modulus differs from boundary modulus");
  if (beta.size() != g.vertex_count()) complain("boundary size differs from vertex count");
  for (const auto& [pair, o] : cert.net) {
    int m = g.multiplicity(pair.u, pair.v);
    if (m == 0) {
      complain("net given for absent class " + std::to_string(pair.u) + "-" + std::to_string(pair.v));
      continue;
    }
    if (std::abs(o) > m || (o - m) % 2 != 0) {
      complain("net " + std::to_string(o) + " impossible for class " + std::to_string(pair.u) +
               "-" + std::to_string(pair.v) + " of multiplicity " + std::to_string(m));
    }
  }
  std::vector<long long> out(g.vertex_count(), 0);
  for (const auto& [pair, m] : g.classes()) {
    auto it = cert.net.find(pair);
    if (it == cert.net.end()) {
      complain("class " + std::to_string(pair.u) + "-" + std::to_string(pair.v) + " not oriented");
      continue;
    }
    out[pair.u] += it->second;
    out[pair.v] -= it->second;
  }
  if (!result.ok() || beta.size() != g.vertex_count()) return result;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (mod(out[v], beta.modulus()) != beta[v]) {
      complain("vertex " + std::to_string(v) + " has d+ - d- = " + std::to_string(out[v]) +
                   ", needs " + std::to_string(beta[v]) + " mod " + std::to_string(beta.modulus()),
               v);
    }
  }
  return result;
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

struct ClassRef {
  VertexPair pair;
  int mult;
};

// Vertex order that keeps the frontier small: repeatedly take the vertex
// with the most edges into the already placed set.
std::vector<ClassRef> search_order(const Multigraph& g) {
  const int n = g.vertex_count();
  std::vector<int> pos(n, -1);
  std::vector<long long> attach(n, 0);
  auto deg = g.degrees();
  for (int placed = 0; placed < n; ++placed) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (pos[v] >= 0) continue;
      if (best < 0 || attach[v] > attach[best] ||
          (attach[v] == attach[best] && deg[v] > deg[best])) {
        best = v;
      }
    }
    pos[best] = placed;
    for (const auto& [pair, m] : g.classes()) {
      if (pair.contains(best)) attach[pair.other(best)] += m;
    }
  }
  std::vector<ClassRef> order;
  for (const auto& [pair, m] : g.classes()) order.push_back({pair, m});
  std::sort(order.begin(), order.end(), [&](const ClassRef& a, const ClassRef& b) {
    auto key = [&](const ClassRef& c) {
      int hi = std::max(pos[c.pair.u], pos[c.pair.v]);
      int lo = std::min(pos[c.pair.u], pos[c.pair.v]);
      return std::pair(hi, lo);
    };
    return key(a) < key(b);
  });
  return order;
}

// Can sum + x hit target mod m for some x in {-r, -r+2, ..., r}?
bool residue_reachable(long long sum, int r, int target, int m) {
  if (r + 1 >= m) return true;
  int inv2 = (m + 1) / 2;
  long long j = mod(static_cast<long long>(mod(target - sum + r, m)) * inv2, m);
  return j <= r;
}

class OrientationSearch {
 public:
  OrientationSearch(const Multigraph& g, const Boundary& beta, SearchLimits limits)
      : g_(g), beta_(beta), m_(beta.modulus()), limits_(limits), order_(search_order(g)) {
    const int n = g.vertex_count();
    sum_.assign(n, 0);
    remaining_.assign(n, 0);
    for (const auto& c : order_) {
      remaining_[c.pair.u] += c.mult;
      remaining_[c.pair.v] += c.mult;
    }
    suffix_.assign(order_.size() + 1, 1);
    for (std::size_t i = order_.size(); i-- > 0;) {
      suffix_[i] = saturating_mul(suffix_[i + 1], static_cast<std::uint64_t>(order_[i].mult + 1));
    }
    choice_.assign(order_.size(), 0);
  }

  Verdict<OrientationCertificate> run() {
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (!residue_reachable(0, remaining_[v], beta_[v], m_)) return refutation_all();
    }
    bool found = false;
    try {
      found = dfs(0);
    } catch (const NodeLimit&) {
      return Refusal{"search node limit " + std::to_string(limits_.max_nodes) + " reached"};
    }
    if (!found) return Refutation{suffix_[0], covered_, nodes_};
    OrientationCertificate cert;
    cert.modulus = m_;
    for (std::size_t i = 0; i < order_.size(); ++i) cert.net[order_[i].pair] = choice_[i];
    return cert;
  }

 private:
  struct NodeLimit {};

  Refutation refutation_all() const { return Refutation{suffix_[0], suffix_[0], 0}; }

  bool dfs(std::size_t i) {
    if (++nodes_ > limits_.max_nodes && limits_.max_nodes != 0) throw NodeLimit{};
    if (i == order_.size()) {
      covered_ = saturating_add(covered_, 1);
      return true;
    }
    const auto& c = order_[i];
    const Vertex u = c.pair.u;
    const Vertex v = c.pair.v;
    remaining_[u] -= c.mult;
    remaining_[v] -= c.mult;
    bool found = false;
    for (int o = -c.mult; o <= c.mult && !found; o += 2) {
      sum_[u] += o;
      sum_[v] -= o;
      if (residue_reachable(sum_[u], remaining_[u], beta_[u], m_) &&
          residue_reachable(sum_[v], remaining_[v], beta_[v], m_)) {
        choice_[i] = o;
        found = dfs(i + 1);
      } else {
        covered_ = saturating_add(covered_, suffix_[i + 1]);
      }
      if (!found) {
        sum_[u] -= o;
        sum_[v] += o;
      }
    }
    if (!found) {
      remaining_[u] += c.mult;
      remaining_[v] += c.mult;
    }
    return found;
  }

  const Multigraph& g_;
  const Boundary& beta_;
  int m_;
  SearchLimits limits_;
  std::vector<ClassRef> order_;
  std::vector<long long> sum_;
  std::vector<int> remaining_;
  std::vector<std::uint64_t> suffix_;
  std::vector<int> choice_;
  std::uint64_t covered_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Verdict<OrientationCertificate> beta_orientation(const Multigraph& g, const Boundary& beta,
                                                 SearchLimits limits) {
  check_modulus(beta.modulus());
  if (beta.size() != g.vertex_count()) {
    throw std::invalid_argument("boundary has " + std::to_string(beta.size()) +
                                " values for a graph with " + std::to_string(g.vertex_count()) +
                                " vertices");
  }
  return OrientationSearch(g, beta, limits).run();
}

Verdict<OrientationCertificate> mod_orientation(const Multigraph& g, int p, SearchLimits limits) {
  if (p < 1) throw std::invalid_argument("p must be at least 1");
  return beta_orientation(g, Boundary::zero(2 * p + 1, g.vertex_count()), limits);
}

namespace {

std::optional<Refusal> strong_guard(const Multigraph& g, int modulus, const StrongConfig& config,
                                    std::uint64_t& count) {
  check_modulus(modulus);
  const int n = g.vertex_count();
  if (n < 1) throw std::invalid_argument("strong connectivity needs at least one vertex");
  if (n > config.max_vertices) {
    return Refusal{"graph has " + std::to_string(n) + " vertices, guard is " +
                   std::to_string(config.max_vertices)};
  }
  count = 1;
  for (int i = 0; i + 1 < n; ++i) count = saturating_mul(count, static_cast<std::uint64_t>(modulus));
  if (count > config.max_boundaries) {
    return Refusal{"too many boundaries (" + std::to_string(modulus) + "^" + std::to_string(n - 1) +
                   "), guard is " + std::to_string(config.max_boundaries)};
  }
  return std::nullopt;
}

Boundary decode_boundary(std::uint64_t index, int modulus, int n) {
  std::vector<int> values(n, 0);
  long long sum = 0;
  for (int i = n - 2; i >= 0; --i) {
    values[i] = static_cast<int>(index % modulus);
    index /= modulus;
    sum += values[i];
  }
  values[n - 1] = mod(-sum, modulus);
  return Boundary(modulus, values);
}

}  // namespace

std::vector<Boundary> all_boundaries(int modulus, int n) {
  check_modulus(modulus);
  std::uint64_t count = 1;
  for (int i = 0; i + 1 < n; ++i) count *= modulus;
  std::vector<Boundary> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(decode_boundary(k, modulus, n));
  return out;
}

Verdict<StrongResult> strongly_connected(const Multigraph& g, int modulus, StrongConfig config) {
  std::uint64_t count = 0;
  if (auto refusal = strong_guard(g, modulus, config, count)) return *refusal;
  const int n = g.vertex_count();
  // Digit i (vertex i < n-1) has weight m^(n-2-i); vertex n-1 is implied.
  std::vector<std::uint64_t> weight(n, 0);
  for (int i = n - 2, w = 0; i >= 0; --i, ++w) {
    weight[i] = 1;
    for (int k = 0; k < w; ++k) weight[i] *= modulus;
  }
  std::vector<std::uint8_t> reach(count, 0);
  std::vector<std::uint8_t> next(count, 0);
  reach[0] = 1;
  auto digit = [&](std::uint64_t s, Vertex v) -> int {
    return weight[v] == 0 ? 0 : static_cast<int>((s / weight[v]) % modulus);
  };
  auto shift = [&](std::uint64_t s, Vertex v, int r) -> std::uint64_t {
    if (weight[v] == 0) return s;
    int d = digit(s, v);
    int nd = (d + r) % modulus;
    return s + static_cast<std::uint64_t>(nd) * weight[v] - static_cast<std::uint64_t>(d) * weight[v];
  };
  for (const auto& [pair, m] : g.classes()) {
    std::set<int> residues;
    for (int o = -m; o <= m; o += 2) residues.insert(mod(o, modulus));
    std::fill(next.begin(), next.end(), 0);
    for (std::uint64_t s = 0; s < count; ++s) {
      if (!reach[s]) continue;
      for (int r : residues) {
        std::uint64_t t = shift(shift(s, pair.u, r), pair.v, modulus - r);
        next[t] = 1;
      }
    }
    reach.swap(next);
  }
  StrongResult result;
  result.boundaries_checked = count;
  result.strongly_connected = true;
  for (std::uint64_t s = 0; s < count; ++s) {
    if (!reach[s]) {
      result.strongly_connected = false;
      result.witness = decode_boundary(s, modulus, n);
      break;
    }
  }
  return result;
}

Verdict<StrongResult> strongly_connected_by_search(const Multigraph& g, int modulus,
                                                   StrongConfig config) {
  std::uint64_t count = 0;
  if (auto refusal = strong_guard(g, modulus, config, count)) return *refusal;
  StrongResult result;
  result.strongly_connected = true;
  for (std::uint64_t k = 0; k < count; ++k) {
    Boundary beta = decode_boundary(k, modulus, g.vertex_count());
    ++result.boundaries_checked;
    if (!std::holds_alternative<OrientationCertificate>(beta_orientation(g, beta))) {
      result.strongly_connected = false;
      result.witness = beta;
      break;
    }
  }
  return result;
}

std::optional<std::vector<std::pair<Boundary, OrientationCertificate>>> certificate_set(
    const Multigraph& g, int modulus) {
  std::vector<std::pair<Boundary, OrientationCertificate>> out;
  for (const auto& beta : all_boundaries(modulus, g.vertex_count())) {
    auto verdict = beta_orientation(g, beta);
    auto* cert = std::get_if<OrientationCertificate>(&verdict);
    if (!cert) return std::nullopt;
    out.emplace_back(beta, *cert);
  }
  return out;
}

Multigraph SubgraphSpec::as_graph() const {
  std::map<Vertex, Vertex> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<Vertex>(i);
  Multigraph h(static_cast<int>(vertices.size()));
  for (const auto& [pair, m] : copies) {
    auto a = index.find(pair.u);
    auto b = index.find(pair.v);
    if (a == index.end() || b == index.end()) {
      throw std::invalid_argument("subgraph copies reference a vertex outside the subgraph");
    }
    h.add_edges(a->second, b->second, m);
  }
  return h;
}

SubgraphSpec SubgraphSpec::induced(const Multigraph& g, std::vector<Vertex> vertices) {
  SubgraphSpec spec;
  VertexMask in = mask_of(g.vertex_count(), vertices);
  spec.vertices = std::move(vertices);
  for (const auto& [pair, m] : g.classes()) {
    if (in[pair.u] && in[pair.v]) spec.copies[pair] = m;
  }
  return spec;
}

Boundary contracted_boundary(const Boundary& beta, const Contraction& c) {
  std::vector<int> values(c.graph.vertex_count(), 0);
  for (std::size_t v = 0; v < c.image.size(); ++v) {
    values[c.image[v]] = mod(values[c.image[v]] + beta[static_cast<Vertex>(v)], beta.modulus());
  }
  return Boundary(beta.modulus(), values);
}

std::vector<int> split_net(int total, const std::vector<int>& multiplicities) {
  int sum = std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
  if (std::abs(total) > sum || (total - sum) % 2 != 0) {
    throw std::invalid_argument("net " + std::to_string(total) + " cannot be split over " +
                                std::to_string(sum) + " copies");
  }
  std::vector<int> nets(multiplicities.size());
  int remaining = total + sum;
  for (std::size_t i = 0; i < multiplicities.size(); ++i) {
    int add = std::min(remaining, 2 * multiplicities[i]);
    nets[i] = -multiplicities[i] + add;
    remaining -= add;
  }
  return nets;
}

std::variant<OrientationCertificate, ExtensionFailure> extend_orientation(
    const Multigraph& g, const SubgraphSpec& h, const OrientationCertificate& contracted_cert,
    const Boundary& beta) {
  const int m = beta.modulus();
  Contraction c = contract(g, h.vertices);
  Boundary contracted_beta = contracted_boundary(beta, c);
  if (!check_certificate(c.graph, contracted_beta, contracted_cert).ok()) {
    throw std::invalid_argument("extend_orientation: certificate does not achieve the contracted boundary");
  }
  VertexMask in_h = mask_of(g.vertex_count(), h.vertices);
  for (const auto& [pair, k] : h.copies) {
    if (!in_h[pair.u] || !in_h[pair.v] || k < 0 || k > g.multiplicity(pair.u, pair.v)) {
      throw std::invalid_argument("extend_orientation: H is not a subgraph of G");
    }
  }
  auto net_of = [&](Vertex a, Vertex b) {
    // Net directed a -> b in the contracted certificate.
    VertexPair p(a, b);
    int o = contracted_cert.net.at(p);
    return a < b ? o : -o;
  };

  OrientationCertificate cert;
  cert.modulus = m;
  // Edges crossing out of V(H), grouped by the outside endpoint.
  std::map<Vertex, std::vector<std::pair<Vertex, int>>> crossing;
  for (const auto& [pair, mult] : g.classes()) {
    bool iu = in_h[pair.u];
    bool iv = in_h[pair.v];
    if (iu && iv) {
      auto it = h.copies.find(pair);
      int extra = mult - (it == h.copies.end() ? 0 : it->second);
      cert.net[pair] = extra;
    } else if (!iu && !iv) {
      cert.net[pair] = net_of(c.image[pair.u], c.image[pair.v]);
    } else {
      Vertex inside = iu ? pair.u : pair.v;
      Vertex outside = iu ? pair.v : pair.u;
      crossing[outside].emplace_back(inside, mult);
    }
  }
  for (const auto& [outside, members] : crossing) {
    std::vector<int> mults;
    for (const auto& [inside, mult] : members) mults.push_back(mult);
    auto nets = split_net(net_of(c.merged, c.image[outside]), mults);
    for (std::size_t i = 0; i < members.size(); ++i) {
      Vertex inside = members[i].first;
      VertexPair p(inside, outside);
      cert.net[p] = inside < outside ? nets[i] : -nets[i];
    }
  }

  // Residual boundary for H, then let H absorb it.
  std::vector<int> residual(h.vertices.size());
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    Vertex v = h.vertices[i];
    residual[i] = mod(beta[v] - cert.outflow(v), m);
  }
  Boundary gamma(m, residual);
  Multigraph hg = h.as_graph();
  auto verdict = beta_orientation(hg, gamma);
  auto* inner = std::get_if<OrientationCertificate>(&verdict);
  if (!inner) return ExtensionFailure{gamma};
  for (const auto& [hp, o] : inner->net) {
    Vertex a = h.vertices[hp.u];
    Vertex b = h.vertices[hp.v];
    VertexPair p(a, b);
    cert.net[p] += a < b ? o : -o;
  }
  return cert;
}

// ---- flows --------------------------------------------------------------------

ZFlow orientation_to_zflow(const Multigraph& g, const OrientationCertificate& cert, int p) {
  if (p < 1 || cert.modulus != 2 * p + 1) {
    throw std::invalid_argument("certificate modulus must be 2p+1");
  }
  if (!check_certificate(g, Boundary::zero(cert.modulus, g.vertex_count()), cert).ok()) {
    throw std::invalid_argument("certificate is not a modulo orientation");
  }
  ZFlow flow;
  flow.modulus = cert.modulus;
  for (const auto& [pair, m] : g.classes()) {
    int o = cert.net.at(pair);
    int forward = (m + o) / 2;
    for (int copy = 0; copy < m; ++copy) {
      flow.values.push_back({pair, copy, p, copy < forward ? Direction::kForward : Direction::kBackward});
    }
  }
  return flow;
}

bool verify_zflow(const Multigraph& g, const ZFlow& flow, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (flow.modulus < 2) return fail("bad modulus");
  std::set<std::pair<VertexPair, int>> seen;
  std::vector<long long> out(g.vertex_count(), 0);
  for (const auto& fv : flow.values) {
    int m = g.multiplicity(fv.edge.u, fv.edge.v);
    if (fv.copy < 0 || fv.copy >= m) {
      return fail("edge " + std::to_string(fv.edge.u) + "-" + std::to_string(fv.edge.v) + " copy " +
                  std::to_string(fv.copy) + " does not exist");
    }
    if (!seen.insert({fv.edge, fv.copy}).second) return fail("edge copy listed twice");
    if (mod(fv.value, flow.modulus) == 0) {
      return fail("edge " + std::to_string(fv.edge.u) + "-" + std::to_string(fv.edge.v) +
                  " has flow value 0 (nowhere-zero violated)");
    }
    Vertex tail = fv.dir == Direction::kForward ? fv.edge.u : fv.edge.v;
    Vertex head = fv.edge.other(tail);
    out[tail] += fv.value;
    out[head] -= fv.value;
  }
  if (static_cast<int>(seen.size()) != g.edge_count()) return fail("some edge copies carry no value");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (mod(out[v], flow.modulus) != 0) {
      return fail("conservation fails at vertex " + std::to_string(v));
    }
  }
  return true;
}

bool is_antisymmetric(const ZFlow& flow) {
  if (flow.modulus < 2) return false;
  std::vector<int> count(flow.modulus, 0);
  for (const auto& fv : flow.values) ++count[mod(fv.value, flow.modulus)];
  if (count[0] >= 2) return false;
  for (int r = 1; r < flow.modulus; ++r) {
    int s = flow.modulus - r;
    if (count[r] > 0 && count[s] > 0 && (r != s || count[r] >= 2)) return false;
  }
  return true;
}

namespace {

// Signed value choices per class: sum -> one multiset of signed copy values.
std::map<int, std::vector<int>> class_sums(int mult, int a, int b) {
  std::vector<int> values;
  for (int x = b; x <= a - b; ++x) {
    values.push_back(x);
    values.push_back(-x);
  }
  std::map<int, std::vector<int>> sums{{0, {}}};
  for (int copy = 0; copy < mult; ++copy) {
    std::map<int, std::vector<int>> next;
    for (const auto& [s, picks] : sums) {
      for (int x : values) {
        if (next.count(s + x)) continue;
        auto extended = picks;
        extended.push_back(x);
        next.emplace(s + x, std::move(extended));
      }
    }
    sums.swap(next);
  }
  return sums;
}

}  // namespace

Verdict<CircularFlow> find_circular_flow(const Multigraph& g, int a, int b,
                                         CircularFlowLimits limits) {
  if (b <= 0 || a < 2 * b) throw std::invalid_argument("circular flow needs a >= 2b > 0");
  if (g.edge_count() > limits.max_edges) {
    return Refusal{"graph has " + std::to_string(g.edge_count()) + " edges, oracle guard is " +
                   std::to_string(limits.max_edges)};
  }
  auto order = search_order(g);
  std::vector<std::vector<std::pair<int, std::vector<int>>>> options;
  for (const auto& c : order) {
    auto sums = class_sums(c.mult, a, b);
    options.emplace_back(sums.begin(), sums.end());
  }
  const int n = g.vertex_count();
  std::vector<long long> balance(n, 0);
  std::vector<long long> capacity(n, 0);
  for (const auto& c : order) {
    capacity[c.pair.u] += static_cast<long long>(c.mult) * (a - b);
    capacity[c.pair.v] += static_cast<long long>(c.mult) * (a - b);
  }
  std::vector<std::uint64_t> suffix(order.size() + 1, 1);
  for (std::size_t i = order.size(); i-- > 0;) suffix[i] = saturating_mul(suffix[i + 1], options[i].size());
  std::vector<std::size_t> pick(order.size(), 0);
  std::uint64_t covered = 0;
  std::uint64_t nodes = 0;
  auto ok = [&](Vertex v) { return std::llabs(balance[v]) <= capacity[v]; };
  for (Vertex v = 0; v < n; ++v) {
    if (capacity[v] == 0 && balance[v] != 0) return Refutation{suffix[0], suffix[0], 0};
  }
  auto dfs = [&](auto&& self, std::size_t i) -> bool {
    ++nodes;
    if (i == order.size()) {
      covered = saturating_add(covered, 1);
      return true;
    }
    const auto& c = order[i];
    capacity[c.pair.u] -= static_cast<long long>(c.mult) * (a - b);
    capacity[c.pair.v] -= static_cast<long long>(c.mult) * (a - b);
    for (std::size_t k = 0; k < options[i].size(); ++k) {
      int s = options[i][k].first;
      balance[c.pair.u] += s;
      balance[c.pair.v] -= s;
      if (ok(c.pair.u) && ok(c.pair.v)) {
        pick[i] = k;
        if (self(self, i + 1)) return true;
      } else {
        covered = saturating_add(covered, suffix[i + 1]);
      }
      balance[c.pair.u] -= s;
      balance[c.pair.v] += s;
    }
    capacity[c.pair.u] += static_cast<long long>(c.mult) * (a - b);
    capacity[c.pair.v] += static_cast<long long>(c.mult) * (a - b);
    return false;
  };
  if (!dfs(dfs, 0)) return Refutation{suffix[0], covered, nodes};
  CircularFlow flow{a, b, {}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& picks = options[i][pick[i]].second;
    for (std::size_t copy = 0; copy < picks.size(); ++copy) {
      int x = picks[copy];
      flow.values.push_back({order[i].pair, static_cast<int>(copy), std::abs(x),
                             x > 0 ? Direction::kForward : Direction::kBackward});
    }
  }
  return flow;
}

bool verify_circular_flow(const Multigraph& g, const CircularFlow& flow) {
  std::set<std::pair<VertexPair, int>> seen;
  std::vector<long long> out(g.vertex_count(), 0);
  for (const auto& fv : flow.values) {
    int m = g.multiplicity(fv.edge.u, fv.edge.v);
    if (fv.copy < 0 || fv.copy >= m || !seen.insert({fv.edge, fv.copy}).second) return false;
    if (fv.value < flow.b || fv.value > flow.a - flow.b) return false;
    Vertex tail = fv.dir == Direction::kForward ? fv.edge.u : fv.edge.v;
    out[tail] += fv.value;
    out[fv.edge.other(tail)] -= fv.value;
  }
  if (static_cast<int>(seen.size()) != g.edge_count()) return false;
  return std::all_of(out.begin(), out.end(), [](long long x) { return x == 0; });
}

}  // namespace modflow
