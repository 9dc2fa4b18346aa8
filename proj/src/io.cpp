#include "modflow/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace modflow {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

int to_int(const std::string& s, int line, const char* what) {
  int value = 0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || first == s.data() + s.size()) {
    throw ParseError(line, std::string("expected an integer ") + what + ", got '" + s + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void expect_count(const Line& l, std::size_t n, const char* usage) {
  if (l.tokens.size() != n) throw ParseError(l.number, std::string("expected '") + usage + "'");
}

int header(const std::vector<Line>& lines, const char* keyword, const char* what) {
  if (lines.empty()) throw ParseError(0, std::string("empty input, expected '") + keyword + " <" + what + ">'");
  const Line& h = lines.front();
  if (h.tokens[0] != keyword || h.tokens.size() != 2) {
    throw ParseError(h.number, std::string("expected header '") + keyword + " <" + what + ">'");
  }
  return to_int(h.tokens[1], h.number, what);
}

Vertex vertex_in(const std::string& s, int n, int line) {
  int v = to_int(s, line, "vertex");
  if (v < 0 || v >= n) {
    throw ParseError(line, "vertex " + std::to_string(v) + " out of range 0.." + std::to_string(n - 1));
  }
  return v;
}

int modulus_of(const Line& l, int m) {
  try {
    check_modulus(m);
  } catch (const std::invalid_argument& e) {
    throw ParseError(l.number, e.what());
  }
  return m;
}

}  // namespace

Multigraph parse_graph(std::istream& in) {
  auto lines = tokenize(in);
  int n = header(lines, "mg", "n");
  if (n < 0) throw ParseError(lines[0].number, "vertex count must be nonnegative");
  Multigraph g(n);
  std::set<VertexPair> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "c") throw ParseError(l.number, "expected 'c <u> <v> <mult>', got '" + l.tokens[0] + "'");
    expect_count(l, 4, "c <u> <v> <mult>");
    Vertex u = vertex_in(l.tokens[1], n, l.number);
    Vertex v = vertex_in(l.tokens[2], n, l.number);
    int m = to_int(l.tokens[3], l.number, "multiplicity");
    if (u == v) throw ParseError(l.number, "loops are not allowed");
    if (m < 1) throw ParseError(l.number, "multiplicity must be positive");
    if (!seen.insert(VertexPair(u, v)).second) {
      throw ParseError(l.number, "class " + std::to_string(u) + "-" + std::to_string(v) + " listed twice");
    }
    g.add_edges(u, v, m);
  }
  return g;
}

std::string format_graph(const Multigraph& g) {
  std::ostringstream out;
  out << "mg " << g.vertex_count() << "\n";
  for (const auto& [p, m] : g.classes()) out << "c " << p.u << " " << p.v << " " << m << "\n";
  return out.str();
}

OrientationFile parse_orientation(std::istream& in) {
  auto lines = tokenize(in);
  OrientationFile f;
  f.certificate.modulus = modulus_of(lines.empty() ? Line{} : lines[0], header(lines, "orient", "m"));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] == "beta") {
      if (f.beta) throw ParseError(l.number, "beta given twice");
      std::vector<int> b;
      for (std::size_t k = 1; k < l.tokens.size(); ++k) b.push_back(to_int(l.tokens[k], l.number, "residue"));
      f.beta = std::move(b);
      continue;
    }
    if (l.tokens[0] != "net") throw ParseError(l.number, "expected 'net <u> <v> <o>' or 'beta ...'");
    expect_count(l, 4, "net <u> <v> <o>");
    int u = to_int(l.tokens[1], l.number, "vertex");
    int v = to_int(l.tokens[2], l.number, "vertex");
    int o = to_int(l.tokens[3], l.number, "net");
    if (u < 0 || v < 0 || u == v) throw ParseError(l.number, "bad class " + l.tokens[1] + "-" + l.tokens[2]);
    VertexPair p(u, v);
    if (f.certificate.net.count(p)) throw ParseError(l.number, "class listed twice");
    f.certificate.net[p] = u < v ? o : -o;
  }
  return f;
}

std::string format_orientation(const OrientationCertificate& cert, const std::vector<int>* beta) {
  std::ostringstream out;
  out << "orient " << cert.modulus << "\n";
  if (beta) {
    out << "beta";
    for (int b : *beta) out << " " << b;
    out << "\n";
  }
  for (const auto& [p, o] : cert.net) out << "net " << p.u << " " << p.v << " " << o << "\n";
  return out.str();
}

ZFlow parse_flow(std::istream& in) {
  auto lines = tokenize(in);
  ZFlow f;
  f.modulus = modulus_of(lines.empty() ? Line{} : lines[0], header(lines, "flow", "m"));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "val") throw ParseError(l.number, "expected 'val <u> <v> <copy> <value> uv|vu'");
    expect_count(l, 6, "val <u> <v> <copy> <value> uv|vu");
    int u = to_int(l.tokens[1], l.number, "vertex");
    int v = to_int(l.tokens[2], l.number, "vertex");
    if (u < 0 || v < 0 || u == v) throw ParseError(l.number, "bad class");
    FlowValue fv;
    fv.edge = VertexPair(u, v);
    fv.copy = to_int(l.tokens[3], l.number, "copy");
    fv.value = to_int(l.tokens[4], l.number, "value");
    const std::string& d = l.tokens[5];
    if (d != "uv" && d != "vu") throw ParseError(l.number, "direction must be uv or vu");
    // Direction is relative to the order written; stored relative to u < v.
    bool forward = (d == "uv") == (u < v);
    fv.dir = forward ? Direction::kForward : Direction::kBackward;
    f.values.push_back(fv);
  }
  return f;
}

std::string format_flow(const ZFlow& flow) {
  std::ostringstream out;
  out << "flow " << flow.modulus << "\n";
  for (const auto& v : flow.values) {
    out << "val " << v.edge.u << " " << v.edge.v << " " << v.copy << " " << v.value << " "
        << (v.dir == Direction::kForward ? "uv" : "vu") << "\n";
  }
  return out.str();
}

Partition parse_partition(std::istream& in) {
  auto lines = tokenize(in);
  if (lines.size() != 1) throw ParseError(lines.empty() ? 0 : lines[1].number, "expected one 'part <n>: ...' line");
  const Line& l = lines[0];
  if (l.tokens[0] != "part" || l.tokens.size() < 2 || l.tokens[1].back() != ':') {
    throw ParseError(l.number, "expected 'part <n>: <block ids>'");
  }
  int n = to_int(l.tokens[1].substr(0, l.tokens[1].size() - 1), l.number, "n");
  if (static_cast<int>(l.tokens.size()) - 2 != n) {
    throw ParseError(l.number, "expected " + std::to_string(n) + " block ids");
  }
  std::vector<int> ids;
  for (std::size_t i = 2; i < l.tokens.size(); ++i) ids.push_back(to_int(l.tokens[i], l.number, "block id"));
  Partition p(ids);
  if (p.rgs() != ids) throw ParseError(l.number, "block ids must be a restricted-growth string");
  return p;
}

std::string format_partition(const Partition& p) {
  std::ostringstream out;
  out << "part " << p.size() << ":";
  for (int b : p.rgs()) out << " " << b;
  out << "\n";
  return out.str();
}

RotationSystem parse_rotation(std::istream& in, const Multigraph& g) {
  auto lines = tokenize(in);
  const int n = g.vertex_count();
  std::vector<std::vector<EdgeCopy>> order(n);
  std::vector<bool> seen(n, false);
  for (const Line& l : lines) {
    if (l.tokens[0] != "rot" || l.tokens.size() < 2 || l.tokens[1].back() != ':') {
      throw ParseError(l.number, "expected 'rot <v>: <u>:<copy> ...'");
    }
    Vertex v = vertex_in(l.tokens[1].substr(0, l.tokens[1].size() - 1), n, l.number);
    if (seen[v]) throw ParseError(l.number, "rotation of " + std::to_string(v) + " given twice");
    seen[v] = true;
    for (std::size_t i = 2; i < l.tokens.size(); ++i) {
      auto parts = split(l.tokens[i], ':');
      if (parts.size() != 2) throw ParseError(l.number, "expected <u>:<copy>, got '" + l.tokens[i] + "'");
      Vertex u = vertex_in(parts[0], n, l.number);
      if (u == v) throw ParseError(l.number, "rotation lists a loop");
      order[v].push_back({VertexPair(u, v), to_int(parts[1], l.number, "copy")});
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!seen[v] && g.degree(v) > 0) throw ParseError(0, "no rotation given for vertex " + std::to_string(v));
  }
  try {
    return RotationSystem(g, std::move(order));
  } catch (const InvalidEmbedding& e) {
    throw ParseError(0, std::string("invalid rotation system: ") + e.what());
  }
}

std::string format_rotation(const RotationSystem& r) {
  std::ostringstream out;
  for (Vertex v = 0; v < r.graph().vertex_count(); ++v) {
    out << "rot " << v << ":";
    for (const auto& c : r.order()[v]) out << " " << c.edge.other(v) << ":" << c.copy;
    out << "\n";
  }
  return out.str();
}

// step <kind> then keyed groups: label <name> | paths a,b,c ... | h a,b ... |
// copies u-v:k ... | vertex v | orient u:+1 ... | nodes k | net u-v:o ...
TraceFile parse_trace(std::istream& in) {
  auto lines = tokenize(in);
  TraceFile t;
  t.modulus = modulus_of(lines.empty() ? Line{} : lines[0], header(lines, "trace", "m"));
  static const std::map<std::string, StepKind> kinds = {{"contract", StepKind::kContract},
                                                        {"lift1", StepKind::kLiftFirst},
                                                        {"lift2", StepKind::kLiftSecond},
                                                        {"base", StepKind::kBase},
                                                        {"search", StepKind::kSearch}};
  static const std::set<std::string> keys = {"label", "paths", "h", "copies", "vertex", "orient", "nodes", "net"};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "step" || l.tokens.size() < 2 || !kinds.count(l.tokens[1])) {
      throw ParseError(l.number, "expected 'step contract|lift1|lift2|base|search ...'");
    }
    ReductionStep s;
    s.kind = kinds.at(l.tokens[1]);
    std::string key;
    auto pair_value = [&](const std::string& tok) {
      auto colon = split(tok, ':');
      auto dash = split(colon[0], '-');
      if (colon.size() != 2 || dash.size() != 2) throw ParseError(l.number, "expected u-v:k, got '" + tok + "'");
      int u = to_int(dash[0], l.number, "vertex");
      int v = to_int(dash[1], l.number, "vertex");
      if (u < 0 || v < 0 || u == v) throw ParseError(l.number, "bad class '" + colon[0] + "'");
      return std::make_tuple(u, v, to_int(colon[1], l.number, "count"));
    };
    for (std::size_t k = 2; k < l.tokens.size(); ++k) {
      const std::string& tok = l.tokens[k];
      if (keys.count(tok)) {
        key = tok;
        continue;
      }
      if (key.empty()) throw ParseError(l.number, "value '" + tok + "' before any key");
      if (key == "label") {
        s.label = tok;
      } else if (key == "paths" || key == "h") {
        std::vector<Vertex> vs;
        for (const auto& x : split(tok, ',')) vs.push_back(to_int(x, l.number, "vertex"));
        if (key == "paths") {
          s.paths.push_back(std::move(vs));
        } else {
          s.vertices = std::move(vs);
        }
      } else if (key == "copies") {
        auto [u, v, c] = pair_value(tok);
        s.copies[VertexPair(u, v)] = c;
      } else if (key == "vertex") {
        s.vertex = to_int(tok, l.number, "vertex");
      } else if (key == "orient") {
        auto parts = split(tok, ':');
        if (parts.size() != 2) throw ParseError(l.number, "expected u:+1 or u:-1, got '" + tok + "'");
        s.oriented.emplace_back(to_int(parts[0], l.number, "vertex"), to_int(parts[1], l.number, "direction"));
      } else if (key == "nodes") {
        s.nodes = static_cast<std::uint64_t>(to_int(tok, l.number, "node count"));
      } else if (key == "net") {
        auto [u, v, o] = pair_value(tok);
        if (!s.certificate) s.certificate = OrientationCertificate{t.modulus, {}};
        s.certificate->net[VertexPair(u, v)] = u < v ? o : -o;
      }
    }
    if ((s.kind == StepKind::kBase || s.kind == StepKind::kSearch) && !s.certificate) {
      s.certificate = OrientationCertificate{t.modulus, {}};
    }
    t.steps.push_back(std::move(s));
  }
  return t;
}

std::string format_trace(int modulus, const std::vector<ReductionStep>& steps) {
  std::ostringstream out;
  out << "trace " << modulus << "\n";
  for (const auto& s : steps) {
    out << "step " << to_string(s.kind);
    if (!s.label.empty()) out << " label " << s.label;
    if (!s.paths.empty()) {
      out << " paths";
      for (const auto& p : s.paths) {
        out << " ";
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
      }
    }
    if (!s.vertices.empty()) {
      out << " h ";
      for (std::size_t i = 0; i < s.vertices.size(); ++i) out << (i ? "," : "") << s.vertices[i];
    }
    if (!s.copies.empty()) {
      out << " copies";
      for (const auto& [p, k] : s.copies) out << " " << p.u << "-" << p.v << ":" << k;
    }
    if (s.kind == StepKind::kLiftSecond) out << " vertex " << s.vertex;
    if (!s.oriented.empty()) {
      out << " orient";
      for (const auto& [u, d] : s.oriented) out << " " << u << ":" << (d > 0 ? "+1" : "-1");
    }
    if (s.certificate) {
      out << " nodes " << s.nodes;
      if (!s.certificate->net.empty()) {
        out << " net";
        for (const auto& [p, o] : s.certificate->net) out << " " << p.u << "-" << p.v << ":" << o;
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace modflow
