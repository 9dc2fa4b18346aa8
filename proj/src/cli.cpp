#include "modflow/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "modflow/catalog.hpp"
#include "modflow/io.hpp"

namespace modflow {

namespace {

using json = nlohmann::ordered_json;

struct Report {
  json data = json::object();
  std::ostringstream text;
};

json to_json(const OrientationCertificate& c) {
  json nets = json::array();
  for (const auto& [p, o] : c.net) nets.push_back({{"u", p.u}, {"v", p.v}, {"net", o}});
  return {{"modulus", c.modulus}, {"nets", nets}};
}

json to_json(const Refutation& r) {
  return {{"search_space", r.search_space}, {"covered", r.covered}, {"nodes", r.nodes}, {"complete", r.complete()}};
}

json to_json(const Multigraph& g) {
  json classes = json::array();
  for (const auto& [p, m] : g.classes()) classes.push_back({p.u, p.v, m});
  return {{"n", g.vertex_count()}, {"edges", g.edge_count()}, {"classes", classes}};
}

std::string join(const std::vector<int>& v, const char* sep = " ") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

void print_certificate(std::ostream& out, const OrientationCertificate& c) {
  for (const auto& [p, o] : c.net) out << "  net " << p.u << " " << p.v << " " << o << "\n";
}

template <class T, class F>
T load(const std::string& path, F parse) {
  std::istringstream in(read_file(path));
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Multigraph load_graph(const std::string& path) { return load<Multigraph>(path, parse_graph); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f || !(f << content)) throw std::runtime_error("cannot write '" + path + "'");
}

Boundary make_boundary(int modulus, const std::vector<int>& values, int n) {
  if (static_cast<int>(values.size()) != n) {
    throw std::invalid_argument("boundary has " + std::to_string(values.size()) + " values, graph has " +
                                std::to_string(n) + " vertices");
  }
  return Boundary(modulus, values);
}

struct Options {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::uint64_t max_nodes = 0;
  int max_vertices = 0;

  std::string graph;
  std::string cert;
  std::string flow;
  std::string trace;
  std::vector<int> beta;
  int modulus = 0;
  bool certificates = false;
  std::uint64_t max_boundaries = 0;
  std::string kind = "both";
  std::string partition;
  std::string mode;
  int p = 2;
  std::string rotation;
  int base_n = -1;
  std::string trace_out;
  std::string cert_out;
  bool no_splitting = false;
  std::string rules = "z5";

  int k = 0;
  int n = 0;
  std::string base;
  std::string base_rotation;
  std::string name;
  std::string out_path;
  std::string rotation_out;
};

// ---- commands -----------------------------------------------------------------

int cmd_check(const Options& o, Report& r) {
  Multigraph g = load_graph(o.graph);
  int given = !o.cert.empty() + !o.flow.empty() + !o.trace.empty();
  if (given > 1) throw std::invalid_argument("give at most one of --cert, --flow, --trace");
  r.data["inputs"] = {{"graph", o.graph}};
  if (!o.flow.empty()) {
    ZFlow f = load<ZFlow>(o.flow, parse_flow);
    std::string why;
    bool ok = verify_zflow(g, f, &why);
    r.data["inputs"]["flow"] = o.flow;
    r.data["verdict"] = ok ? "pass" : "fail";
    if (!ok) r.data["problems"] = json::array({why});
    r.text << "flow check: " << (ok ? "pass" : "fail") << "\n";
    if (!ok) r.text << "  " << why << "\n";
    return 0;
  }
  if (!o.trace.empty()) {
    TraceFile t = load<TraceFile>(o.trace, parse_trace);
    Boundary beta = o.beta.empty() ? Boundary::zero(t.modulus, g.vertex_count())
                                   : make_boundary(t.modulus, o.beta, g.vertex_count());
    auto replay = replay_trace(g, beta, t.steps);
    r.data["inputs"]["trace"] = o.trace;
    r.data["boundary"] = beta.values();
    if (const auto* cert = std::get_if<OrientationCertificate>(&replay)) {
      r.data["verdict"] = "pass";
      r.data["certificate"] = to_json(*cert);
      r.text << "trace check: pass (" << t.steps.size() << " steps)\n";
    } else {
      r.data["verdict"] = "fail";
      r.data["problems"] = json::array({std::get<std::string>(replay)});
      r.text << "trace check: fail\n  " << std::get<std::string>(replay) << "\n";
    }
    return 0;
  }
  if (!o.cert.empty()) {
    OrientationFile f = load<OrientationFile>(o.cert, parse_orientation);
    const int m = f.certificate.modulus;
    std::vector<int> values = !o.beta.empty() ? o.beta : f.beta ? *f.beta : std::vector<int>(g.vertex_count(), 0);
    Boundary beta = make_boundary(m, values, g.vertex_count());
    CertificateCheck c = check_certificate(g, beta, f.certificate);
    r.data["inputs"]["certificate"] = o.cert;
    r.data["boundary"] = beta.values();
    r.data["verdict"] = c.ok() ? "pass" : "fail";
    r.data["problems"] = c.problems;
    if (c.first_bad_vertex) r.data["first_bad_vertex"] = *c.first_bad_vertex;
    r.text << "certificate check (Z" << m << ", boundary " << join(beta.values()) << "): "
           << (c.ok() ? "pass" : "fail") << "\n";
    if (c.first_bad_vertex) r.text << "  first bad vertex: " << *c.first_bad_vertex << "\n";
    for (const auto& p : c.problems) r.text << "  " << p << "\n";
    return 0;
  }
  // No certificate: decide the boundary exhaustively.
  if (o.modulus == 0 || o.beta.empty()) {
    throw std::invalid_argument("give --cert, --flow, --trace, or --modulus with --beta");
  }
  Boundary beta = make_boundary(o.modulus, o.beta, g.vertex_count());
  auto v = beta_orientation(g, beta, {o.max_nodes});
  r.data["boundary"] = beta.values();
  r.data["modulus"] = o.modulus;
  if (const auto* cert = std::get_if<OrientationCertificate>(&v)) {
    r.data["verdict"] = "achievable";
    r.data["certificate"] = to_json(*cert);
    r.text << "boundary " << join(beta.values()) << " mod " << o.modulus << ": achievable\n";
    print_certificate(r.text, *cert);
    return 0;
  }
  if (const auto* ref = std::get_if<Refutation>(&v)) {
    r.data["verdict"] = "unachievable";
    r.data["refutation"] = to_json(*ref);
    r.text << "boundary " << join(beta.values()) << " mod " << o.modulus << ": unachievable (" << ref->covered
           << " of " << ref->search_space << " net vectors exhausted)\n";
    return 0;
  }
  r.data["verdict"] = "refused";
  r.data["reason"] = std::get<Refusal>(v).reason;
  r.text << "refused: " << std::get<Refusal>(v).reason << "\n";
  return 1;
}

int cmd_strong(const Options& o, Report& r) {
  Multigraph g = load_graph(o.graph);
  StrongConfig cfg;
  if (o.max_boundaries) cfg.max_boundaries = o.max_boundaries;
  if (o.max_vertices) cfg.max_vertices = o.max_vertices;
  r.data["inputs"] = {{"graph", o.graph}, {"modulus", o.modulus}};
  auto v = strongly_connected(g, o.modulus, cfg);
  if (const auto* ref = std::get_if<Refusal>(&v)) {
    r.data["verdict"] = "refused";
    r.data["reason"] = ref->reason;
    r.text << "refused: " << ref->reason << "\n";
    return 1;
  }
  const auto& s = std::get<StrongResult>(v);
  r.data["verdict"] = s.strongly_connected ? "yes" : "no";
  r.data["boundaries_checked"] = s.boundaries_checked;
  r.text << "strongly Z" << o.modulus << "-connected: " << (s.strongly_connected ? "yes" : "no") << "\n";
  if (s.witness) {
    r.data["witness"] = s.witness->values();
    r.text << "witness boundary: " << join(s.witness->values()) << "\n";
  }
  r.text << "boundaries: " << s.boundaries_checked << "\n";
  if (s.strongly_connected && o.certificates) {
    auto set = certificate_set(g, o.modulus);
    json certs = json::array();
    for (const auto& [b, c] : *set) {
      certs.push_back({{"boundary", b.values()}, {"certificate", to_json(c)}});
      r.text << "boundary " << join(b.values()) << ":";
      for (const auto& [p, n] : c.net) r.text << " " << p.u << "-" << p.v << ":" << n;
      r.text << "\n";
    }
    r.data["certificates"] = certs;
  }
  return 0;
}

int cmd_weight(const Options& o, Report& r) {
  Multigraph g = load_graph(o.graph);
  r.data["inputs"] = {{"graph", o.graph}, {"kind", o.kind}};
  if (!o.partition.empty()) {
    Partition p = load<Partition>(o.partition, parse_partition);
    if (p.size() != g.vertex_count()) throw std::invalid_argument("partition size does not match the graph");
    WeightReport w = weight_report(g, p);
    r.data["inputs"]["partition"] = o.partition;
    r.data["verdict"] = "computed";
    r.data["partition"] = p.rgs();
    r.data["class"] = to_string(p.classify());
    r.data["w"] = w.w;
    r.data["rho"] = w.rho;
    r.text << "partition " << join(p.rgs()) << " (" << to_string(p.classify()) << ")\n";
    r.text << "w = " << w.w << "\nrho = " << w.rho << "\n";
    return 0;
  }
  PartitionLimits limits;
  if (o.max_vertices) limits.max_vertices = o.max_vertices;
  std::vector<std::pair<std::string, WeightKind>> kinds;
  if (o.kind != "rho") kinds.emplace_back("w", WeightKind::kW);
  if (o.kind != "w") kinds.emplace_back("rho", WeightKind::kRho);
  for (const auto& [label, kind] : kinds) {
    auto v = min_weight(g, kind, limits);
    if (const auto* ref = std::get_if<Refusal>(&v)) {
      r.data["verdict"] = "refused";
      r.data["reason"] = ref->reason;
      r.text << "refused: " << ref->reason << "\n";
      return 1;
    }
    const auto& m = std::get<MinWeight>(v);
    r.data[label] = {{"value", m.value},
                     {"argmin", m.argmin.rgs()},
                     {"class", to_string(m.argmin.classify())},
                     {"ties", m.ties}};
    r.text << label << "(G) = " << m.value << ", attained by " << join(m.argmin.rgs()) << " ("
           << to_string(m.argmin.classify()) << "), " << m.ties << " minimizing partition"
           << (m.ties == 1 ? "" : "s") << "\n";
  }
  r.data["verdict"] = "computed";
  return 0;
}

int cmd_troublesome(const Options& o, Report& r) {
  Multigraph g = load_graph(o.graph);
  std::string mode = o.mode.empty() ? "troublesome" : o.mode;
  SpecialMode sm = mode == "problematic" ? SpecialMode::kProblematic : SpecialMode::kTroublesome;
  PartitionLimits limits;
  if (o.max_vertices) limits.max_vertices = o.max_vertices;
  r.data["inputs"] = {{"graph", o.graph}, {"mode", mode}};
  auto v = find_special_partition(g, sm, limits);
  if (const auto* ref = std::get_if<Refusal>(&v)) {
    r.data["verdict"] = "refused";
    r.data["reason"] = ref->reason;
    r.text << "refused: " << ref->reason << "\n";
    return 1;
  }
  const auto& found = std::get<std::optional<SpecialPartition>>(v);
  r.data["verdict"] = found ? "found" : "none";
  if (found) {
    r.data["partition"] = found->partition.rgs();
    r.data["label"] = found->label.name();
    r.text << mode << " partition: " << join(found->partition.rgs()) << " contracts to " << found->label.name()
           << "\n";
  } else {
    r.text << "no " << mode << " partition\n";
  }
  return 0;
}

ScanMode parse_scan_mode(const std::string& s) {
  if (s == "z5") return ScanMode::kZ5;
  if (s == "z7") return ScanMode::kZ7;
  throw std::invalid_argument("mode must be z5 or z7");
}

json plan_json(const LiftPlan& p) { return {{"paths", p.paths}, {"contract", p.contract}}; }

int cmd_scan(const Options& o, Report& r) {
  Multigraph g = load_graph(o.graph);
  std::string mode = o.mode.empty() ? "z5" : o.mode;
  auto reports = forbidden_scan(g, parse_scan_mode(mode));
  r.data["inputs"] = {{"graph", o.graph}, {"mode", mode}};
  r.data["verdict"] = reports.empty() ? "clean" : "forbidden";
  json list = json::array();
  r.text << "forbidden configurations (" << mode << "): " << reports.size() << "\n";
  for (const auto& c : reports) {
    list.push_back({{"label", c.label}, {"witness", c.witness}, {"reason", c.reason}, {"plan", plan_json(c.plan)}});
    r.text << "  " << c.label << " at " << join(c.witness, ",") << ": " << c.reason << "\n";
  }
  r.data["reports"] = list;
  return 0;
}

int cmd_solve(const Options& o, Report& r) {
  Multigraph g = load_graph(o.graph);
  if (o.p != 2 && o.p != 3) throw std::invalid_argument("--p must be 2 or 3");
  std::optional<PlaneGraph> plane;
  r.data["inputs"] = {{"graph", o.graph}, {"p", o.p}};
  if (!o.rotation.empty()) {
    std::istringstream in(read_file(o.rotation));
    try {
      plane = parse_rotation(in, g).plane();
    } catch (const ParseError& e) {
      throw std::invalid_argument(o.rotation + ": " + e.what());
    }
    r.data["inputs"]["rotation"] = o.rotation;
  }
  SolverConfig cfg;
  if (o.base_n >= 0) cfg.base_n = o.base_n;
  if (o.max_nodes) cfg.base_nodes = cfg.search_nodes = o.max_nodes;
  cfg.splitting = !o.no_splitting;
  SolveResult s = solve_planar(g, o.p, plane, cfg);
  const int m = 2 * o.p + 1;

  json steps = json::array();
  for (const auto& st : s.trace) {
    steps.push_back({{"kind", to_string(st.kind)},
                     {"label", st.label},
                     {"n_before", st.before.vertex_count()},
                     {"n_after", st.after.vertex_count()}});
  }
  r.data["steps"] = steps;
  r.data["notes"] = s.notes;
  if (!o.trace_out.empty()) write_file(o.trace_out, format_trace(m, s.trace));

  r.text << "modulo " << m << "-orientation of " << describe(g) << "\n";
  r.text << "reduction steps: " << s.trace.size();
  for (std::size_t i = 0; i < s.trace.size(); ++i) {
    r.text << (i ? ", " : " (") << to_string(s.trace[i].kind)
           << (s.trace[i].label.empty() ? "" : " " + s.trace[i].label);
  }
  r.text << (s.trace.empty() ? "\n" : ")\n");
  for (const auto& n : s.notes) r.text << "note: " << n << "\n";

  if (const auto* cert = std::get_if<OrientationCertificate>(&s.verdict)) {
    r.data["verdict"] = "found";
    r.data["certificate"] = to_json(*cert);
    if (!o.cert_out.empty()) write_file(o.cert_out, format_orientation(*cert));
    r.text << "verdict: found (re-verified)\n";
    print_certificate(r.text, *cert);
    return 0;
  }
  if (const auto* ref = std::get_if<Refutation>(&s.verdict)) {
    r.data["verdict"] = "refuted";
    r.data["refutation"] = to_json(*ref);
    r.text << "verdict: no modulo " << m << "-orientation (" << ref->covered << " of " << ref->search_space
           << " net vectors exhausted)\n";
    return 0;
  }
  r.data["verdict"] = "refused";
  r.data["reason"] = std::get<Refusal>(s.verdict).reason;
  r.text << "verdict: refused (" << std::get<Refusal>(s.verdict).reason << ")\n";
  return 1;
}

int cmd_discharge(const Options& o, Report& r) {
  Multigraph g = load_graph(o.graph);
  if (o.rotation.empty()) throw std::invalid_argument("discharge needs --rotation");
  if (o.rules != "z5" && o.rules != "z7") throw std::invalid_argument("--rules must be z5 or z7");
  Ruleset rules = o.rules == "z5" ? Ruleset::kZ5 : Ruleset::kZ7;
  std::istringstream in(read_file(o.rotation));
  std::optional<RotationSystem> rs;
  try {
    rs.emplace(parse_rotation(in, g));
  } catch (const ParseError& e) {
    throw std::invalid_argument(o.rotation + ": " + e.what());
  }
  FaceStructure fs = trace_faces(*rs);
  DischargeResult d = discharge(*rs, rules);
  r.data["inputs"] = {{"graph", o.graph}, {"rotation", o.rotation}, {"rules", o.rules}};

  json faces = json::array();
  r.text << "faces: " << fs.faces.size() << "\n";
  r.text << std::left << std::setw(6) << "face" << std::setw(8) << "length" << std::setw(12) << "type"
         << std::setw(10) << "initial" << "final\n";
  for (const auto& f : fs.faces) {
    std::string type = f.length() == 2 ? "2-face" : "(" + join(f.profile_type(), ",") + ")";
    faces.push_back({{"id", f.id},
                     {"length", f.length()},
                     {"type", type},
                     {"initial", to_string(d.ledger.initial[f.id])},
                     {"final", to_string(d.ledger.final_charge[f.id])}});
    r.text << std::setw(6) << f.id << std::setw(8) << f.length() << std::setw(12) << type << std::setw(10)
           << to_string(d.ledger.initial[f.id]) << to_string(d.ledger.final_charge[f.id]) << "\n";
  }
  json transfers = json::array();
  r.text << "transfers: " << d.ledger.transfers.size() << "\n";
  for (const auto& t : d.ledger.transfers) {
    transfers.push_back({{"from", t.from}, {"to", t.to}, {"amount", to_string(t.amount)}, {"rule", t.rule}});
    r.text << "  " << t.rule << ": face " << t.from << " -> face " << t.to << " " << to_string(t.amount) << "\n";
  }
  bool conserved = d.ledger.total_final() == Rational(2 * g.edge_count());
  r.data["faces"] = faces;
  r.data["transfers"] = transfers;
  r.data["total_initial"] = to_string(d.ledger.total_initial());
  r.data["total_final"] = to_string(d.ledger.total_final());
  r.data["conserved"] = conserved;
  r.data["target"] = to_string(d.target);
  r.data["min_final"] = to_string(d.min_final);
  r.data["below_target"] = d.below_target;
  r.text << "total: " << to_string(d.ledger.total_initial()) << " -> " << to_string(d.ledger.total_final())
         << (conserved ? " (conserved)" : " (NOT conserved)") << "\n";
  r.text << "minimum final charge: " << to_string(d.min_final) << ", target " << to_string(d.target) << ", "
         << d.below_target.size() << " face" << (d.below_target.size() == 1 ? "" : "s") << " below\n";
  try {
    ChargeBound b = charge_bound(*rs, rules);
    r.data["bound"] = {{"total_length", b.total_length}, {"bound", to_string(b.bound)}, {"holds", b.holds}};
    r.text << "charge bound: 2||G|| = " << b.total_length << " vs " << to_string(b.bound) << ": "
           << (b.holds ? "holds" : "fails") << "\n";
  } catch (const PreconditionFailed& e) {
    r.data["bound"] = {{"skipped", e.what()}};
    r.text << "charge bound: not applicable (" << e.what() << ")\n";
  }
  r.data["verdict"] = conserved ? "conserved" : "not conserved";
  return 0;
}

int cmd_gen(const std::string& family, const Options& o, Report& r) {
  Multigraph g;
  std::optional<RotationSystem> rot;
  json params = json::object();
  if (family == "kcycle") {
    if (o.k < 1 || o.n < 2) throw std::invalid_argument("kcycle needs --k >= 1 and --n >= 2");
    params = {{"k", o.k}, {"n", o.n}};
    if (o.n >= 3) {
      rot.emplace(kcycle_embedding(o.k, o.n));
      g = rot->graph();
    } else {
      g = kcycle(o.k, o.n);
    }
  } else if (family == "replicate") {
    if (o.k < 1) throw std::invalid_argument("replicate needs --k >= 1");
    Multigraph base = load_graph(o.base);
    if (base.max_multiplicity() > 1) throw std::invalid_argument("replicate needs a simple base graph");
    std::optional<RotationSystem> base_rot;
    if (!o.base_rotation.empty()) {
      std::istringstream in(read_file(o.base_rotation));
      try {
        base_rot.emplace(parse_rotation(in, base));
      } catch (const ParseError& e) {
        throw std::invalid_argument(o.base_rotation + ": " + e.what());
      }
    } else {
      base_rot = find_embedding(base);
      if (!base_rot) throw std::invalid_argument("base graph has no plane embedding");
    }
    rot.emplace(replicate(*base_rot, o.k));
    g = rot->graph();
    params = {{"base", o.base}, {"k", o.k}};
  } else if (family == "catalog") {
    auto label = parse_catalog_name(o.name);
    if (!label) throw std::invalid_argument("unknown catalog name '" + o.name + "'");
    g = catalog_graph(*label);
    rot = find_embedding(g);
    params = {{"name", o.name}};
  } else if (family == "triangulation") {
    if (o.n < 4) throw std::invalid_argument("triangulation needs --n >= 4");
    RotationSystem base = from_triangles(o.n, random_triangulation(o.n, o.seed));
    rot.emplace(o.k > 1 ? replicate(base, o.k) : base);
    g = rot->graph();
    params = {{"n", o.n}, {"seed", o.seed}, {"k", std::max(o.k, 1)}};
  }
  std::string graph_text = format_graph(g);
  std::string rot_text = rot ? format_rotation(*rot) : "";
  if (!o.out_path.empty()) write_file(o.out_path, graph_text);
  if (!o.rotation_out.empty()) {
    if (!rot) throw std::invalid_argument("no plane embedding to write");
    write_file(o.rotation_out, rot_text);
  }
  r.data["inputs"] = {{"family", family}, {"params", params}};
  r.data["verdict"] = "generated";
  r.data["graph"] = to_json(g);
  r.data["edge_connectivity"] = edge_connectivity(g);
  r.data["graph_text"] = graph_text;
  if (rot) r.data["rotation_text"] = rot_text;
  if (o.out_path.empty()) {
    r.text << graph_text;
  } else {
    r.text << "wrote " << o.out_path << " (" << describe(g) << ")\n";
  }
  if (!o.rotation_out.empty()) r.text << "wrote " << o.rotation_out << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modulo orientations, strong group connectivity, partition weights and discharging"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Options o;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--seed", o.seed, "Seed for randomized generators");
  app.add_option("--max-nodes", o.max_nodes, "Search node guard (0 = default)");
  app.add_option("--max-vertices", o.max_vertices, "Vertex guard for exhaustive checks (0 = default)");

  auto* check = app.add_subcommand("check", "Verify a certificate, flow or trace, or decide one boundary");
  check->add_option("graph", o.graph)->required();
  check->add_option("--cert", o.cert, "Orientation certificate file");
  check->add_option("--flow", o.flow, "Z_m flow file");
  check->add_option("--trace", o.trace, "Reduction trace file");
  check->add_option("--beta", o.beta, "Boundary, comma separated")->delimiter(',');
  check->add_option("--modulus", o.modulus, "Modulus for a bare --beta check");

  auto* strong = app.add_subcommand("strong", "Decide strong Z_m-connectivity");
  strong->add_option("graph", o.graph)->required();
  strong->add_option("--modulus,-m", o.modulus)->required();
  strong->add_flag("--certificates", o.certificates, "List one certificate per boundary");
  strong->add_option("--max-boundaries", o.max_boundaries);

  auto* weight = app.add_subcommand("weight", "Minimum partition weights w and rho");
  weight->add_option("graph", o.graph)->required();
  weight->add_option("--kind", o.kind)->check(CLI::IsMember({"w", "rho", "both"}));
  weight->add_option("--partition", o.partition, "Evaluate one partition file instead");

  auto* trouble = app.add_subcommand("troublesome", "Find a troublesome or problematic partition");
  trouble->add_option("graph", o.graph)->required();
  trouble->add_option("--mode", o.mode)->check(CLI::IsMember({"troublesome", "problematic"}));

  auto* scan = app.add_subcommand("scan", "List forbidden configurations");
  scan->add_option("graph", o.graph)->required();
  scan->add_option("--mode", o.mode)->check(CLI::IsMember({"z5", "z7"}));

  auto* solve = app.add_subcommand("solve", "Find a modulo (2p+1)-orientation by reduction");
  solve->add_option("graph", o.graph)->required();
  solve->add_option("--p", o.p)->check(CLI::IsMember({2, 3}));
  solve->add_option("--rotation", o.rotation, "Rotation file enabling the splitting step");
  solve->add_option("--base-n", o.base_n, "Exhaustive search at or below this many vertices");
  solve->add_option("--trace", o.trace_out, "Write the reduction trace here");
  solve->add_option("--cert-out", o.cert_out, "Write the certificate here");
  solve->add_flag("--no-splitting", o.no_splitting);

  auto* dis = app.add_subcommand("discharge", "Run the discharging rules on an embedding");
  dis->add_option("graph", o.graph)->required();
  dis->add_option("--rotation", o.rotation)->required();
  dis->add_option("--rules", o.rules)->check(CLI::IsMember({"z5", "z7"}));

  auto* gen = app.add_subcommand("gen", "Generate graphs and rotations");
  gen->require_subcommand(1);
  auto add_outputs = [&](CLI::App* c) {
    c->add_option("--out,-o", o.out_path, "Graph file (default: report)");
    c->add_option("--rotation-out", o.rotation_out, "Rotation file");
  };
  auto* g_kcycle = gen->add_subcommand("kcycle", "k parallel copies of C_n");
  g_kcycle->add_option("--k", o.k)->required();
  g_kcycle->add_option("--n", o.n)->required();
  auto* g_rep = gen->add_subcommand("replicate", "Multiply every class of a simple plane graph");
  g_rep->add_option("--base", o.base)->required();
  g_rep->add_option("--base-rotation", o.base_rotation);
  g_rep->add_option("--k", o.k)->required();
  auto* g_cat = gen->add_subcommand("catalog", "A named catalog graph");
  g_cat->add_option("name", o.name)->required();
  auto* g_tri = gen->add_subcommand("triangulation", "Random plane triangulation, optionally replicated");
  g_tri->add_option("--n", o.n)->required();
  g_tri->add_option("--k", o.k);
  for (auto* c : {g_kcycle, g_rep, g_cat, g_tri}) {
    c->fallthrough();
    add_outputs(c);
  }
  for (auto* c : {check, strong, weight, trouble, scan, solve, dis, gen}) c->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report r;
  std::string command;
  auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (check->parsed()) {
      command = "check";
      code = cmd_check(o, r);
    } else if (strong->parsed()) {
      command = "strong";
      check_modulus(o.modulus);
      code = cmd_strong(o, r);
    } else if (weight->parsed()) {
      command = "weight";
      code = cmd_weight(o, r);
    } else if (trouble->parsed()) {
      command = "troublesome";
      code = cmd_troublesome(o, r);
    } else if (scan->parsed()) {
      command = "scan";
      code = cmd_scan(o, r);
    } else if (solve->parsed()) {
      command = "solve";
      code = cmd_solve(o, r);
    } else if (dis->parsed()) {
      command = "discharge";
      code = cmd_discharge(o, r);
    } else {
      command = "gen";
      for (auto* c : {g_kcycle, g_rep, g_cat, g_tri}) {
        if (c->parsed()) code = cmd_gen(c->get_name(), o, r);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (o.format == "structured") {
    json doc = json::object();
    doc["command"] = command;
    doc["version"] = kToolVersion;
    for (auto& [key, value] : r.data.items()) doc[key] = value;
    doc["seconds"] = seconds;
    out << doc.dump(2) << "\n";
  } else {
    out << r.text.str();
    if (command != "gen" || !o.out_path.empty()) {
      out << "time: " << std::fixed << std::setprecision(3) << seconds << " s\n";
    }
  }
  return code;
}

}  // namespace modflow
