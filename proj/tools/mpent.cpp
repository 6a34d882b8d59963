// Copyright 2026 The mpent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <locale>
#include <sstream>
#include <optional>
#include <string>

#include "mpent/entopt.hpp"
#include "mpent/gf2uniform.hpp"
#include "mpent/io.hpp"
#include "mpent/kpolytope.hpp"
#include "mpent/states.hpp"
#include "mpent/verify.hpp"

namespace {

using namespace mpent;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCapacity = 3;

struct Output {
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty())
      std::cout << text;
    else
      write_file(path, text);
  }
};

RunManifest manifest(const std::string& command, json params, std::uint64_t seed = 0) {
  RunManifest m;
  m.command = command;
  m.parameters = std::move(params);
  m.seed = seed;
  m.timestamp = RunManifest::utc_now();
  return m;
}

std::string csv_manifest_line(const RunManifest& m) { return "# manifest " + m.to_json().dump() + "\n"; }

// ---- state build ----------------------------------------------------------

struct StateArgs {
  std::string kind;
  int n = 3;
  int d = 2;
  int p = 1;
  std::string graph;
  std::string out;
};

int cmd_state_build(const StateArgs& a) {
  std::optional<PureState> psi;
  if (a.kind == "ghz")
    psi = ghz(a.n, a.d);
  else if (a.kind == "det")
    psi = determinant_state(a.n);
  else if (a.kind == "gdet")
    psi = generalized_determinant(a.d, a.p);
  else if (a.kind == "graph") {
    if (a.graph.empty()) throw InvalidInput("state build graph needs --graph FILE");
    psi = graph_state(parse_edge_list(read_file(a.graph)));
  } else if (a.kind == "hexacode")
    psi = hexacode_state();
  else
    throw InvalidInput("unknown state kind '" + a.kind + "'");

  if (a.out.empty()) throw InvalidInput("state build needs --out PATH");
  write_state(a.out, *psi);
  std::uint64_t nonzero = 0;
  for (std::uint64_t k = 0; k < psi->size(); ++k) nonzero += std::abs(psi->amp()[k]) > 1e-15;
  std::cout << "n=" << psi->n() << " d=" << psi->d() << " amplitudes=" << psi->size() << " nonzero=" << nonzero
            << "\n";
  return kExitOk;
}

// ---- entropy --------------------------------------------------------------

struct EntropyArgs {
  std::string state;
  OptConfig cfg;
  bool polytope_bound = false;
  int embed = 0;
  std::string basis_out;
  std::string report_out;
};

/// The P_6^3 chain bounds S from below by 4 whenever every 3-qubit reduced
/// state of a 6-qubit state is maximally mixed.
bool three_party_marginals_mixed(const PureState& psi) {
  if (psi.n() != 6 || psi.d() != 2) return false;
  const MatrixXcd id = MatrixXcd::Identity(8, 8) / 8.0;
  for (std::uint64_t s = 0; s < 64; ++s) {
    if (std::popcount(s) != 3) continue;
    std::vector<int> w;
    for (int i = 0; i < 6; ++i)
      if ((s >> i) & 1) w.push_back(i);
    if ((partial_trace(psi, w).mat() - id).cwiseAbs().maxCoeff() > 1e-10) return false;
  }
  return true;
}

int cmd_entropy(const EntropyArgs& a) {
  PureState psi = read_state(a.state);
  if (a.embed > 0) psi = embed_local_dimension(psi, a.embed);
  OptResult r = minimize_entropy(psi, a.cfg);
  json extra = json::object();
  if (a.polytope_bound) {
    if (!three_party_marginals_mixed(psi)) {
      extra["polytope_bound"] = "not applicable: needs 6 qubits with maximally mixed 3-qubit marginals";
    } else {
      const Inf6Report chain = verify_inf6_chain();
      extra["polytope_bound"] = chain.pass ? "applied" : "chain failed";
      if (chain.pass) add_lower_bound(r, chain.infimum, "polytope: inf over P6^3 = 4");
    }
  }

  RunManifest m = manifest("entropy",
                           {{"state", a.state},
                            {"restarts", a.cfg.restarts},
                            {"tol", a.cfg.tol},
                            {"max_sweeps", a.cfg.max_sweeps},
                            {"overlap_bound", a.cfg.overlap_bound},
                            {"polytope_bound", a.polytope_bound},
                            {"embed", a.embed}},
                           a.cfg.seed);
  m.add_input(a.state);

  json report = opt_result_to_json(r);
  report["manifest"] = m.to_json();
  report["n"] = psi.n();
  report["d"] = psi.d();
  for (auto& [k, v] : extra.items()) report[k] = v;
  if (!a.basis_out.empty()) {
    write_file(a.basis_out, basis_to_json(r.basis).dump() + "\n");
    report["basis_path"] = a.basis_out;
  }
  Output{a.report_out}.write(report.dump(2) + "\n");
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

json suite_to_json(const SuiteReport& s) {
  json checks = json::array();
  for (const auto& c : s.checks)
    checks.push_back({{"name", c.name},
                      {"measured", c.measured},
                      {"target", c.target},
                      {"tol", c.tol},
                      {"pass", c.pass},
                      {"note", c.note}});
  return {{"suite", s.suite}, {"pass", s.pass()}, {"seconds", s.seconds}, {"time_limit", s.time_limit},
          {"checks", checks}};
}

std::string short_num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << v;
  return os.str();
}

void print_suite(const SuiteReport& s, std::ostream& out) {
  for (const auto& c : s.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << "[" << s.suite << "] " << c.name << ": measured " << short_num(c.measured)
        << " target " << short_num(c.target);
    if (c.tol > 0) out << " tol " << c.tol;
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << "\n";
  }
  out << (s.pass() ? "PASS " : "FAIL ") << "[" << s.suite << "] runtime " << format_fixed(s.seconds, 3) << " s";
  if (s.time_limit > 0) out << " (limit " << s.time_limit << " s)";
  out << "\n";
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int max_m, const std::string& format,
               const std::string& out_path) {
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  json reports = json::array();
  bool ok = true;
  std::ostringstream text;
  for (const auto& name : names) {
    const SuiteReport rep = run_suite(name, seed, max_m);
    ok = ok && rep.pass();
    reports.push_back(suite_to_json(rep));
    print_suite(rep, text);
  }
  const RunManifest m = manifest("verify", {{"suite", suite}, {"m", max_m}}, seed);
  if (format == "json") {
    Output{out_path}.write(json{{"manifest", m.to_json()}, {"pass", ok}, {"suites", reports}}.dump(2) + "\n");
  } else {
    Output{out_path}.write("# manifest " + m.to_json().dump() + "\n" + text.str() +
                           (ok ? "ALL PASS\n" : "SOME CHECKS FAILED\n"));
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

// ---- table1 ---------------------------------------------------------------

int cmd_table1(const std::string& format, const std::string& out_path) {
  const RunManifest m = manifest("table1", json::object());
  const auto rows = table1();
  if (format == "json") {
    json j = json::array();
    for (const auto& r : rows) j.push_back({{"p", r.p}, {"n", r.n}, {"normalized_entropy", r.normalized}});
    Output{out_path}.write(json{{"manifest", m.to_json()}, {"rows", j}}.dump(2) + "\n");
  } else {
    std::string csv = csv_manifest_line(m) + "p,n,normalized_entropy,rounded\n";
    for (const auto& r : rows)
      csv += std::to_string(r.p) + "," + std::to_string(r.n) + "," + format_full(r.normalized) + "," +
             format_fixed(r.normalized, 2) + "\n";
    Output{out_path}.write(csv);
  }
  return kExitOk;
}

// ---- graphs ---------------------------------------------------------------

int cmd_graph_search(int m, const std::string& mode, std::uint64_t budget, std::uint64_t seed,
                     const std::string& out_dir) {
  SearchMode sm;
  if (mode == "exhaustive")
    sm = SearchMode::exhaustive;
  else if (mode == "random")
    sm = SearchMode::random;
  else
    throw InvalidInput("mode must be exhaustive or random");
  const auto found = search_maximally_uniform(m, sm, budget, seed);
  const RunManifest man = manifest("graphs search", {{"m", m}, {"mode", mode}, {"budget", budget}}, seed);
  std::string csv = csv_manifest_line(man) + "graph_id,passes,min_stabilizer_weight,edge_file\n";
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  for (const auto& r : found) {
    std::string file;
    if (!out_dir.empty()) {
      file = (std::filesystem::path(out_dir) / ("graph_" + std::to_string(r.candidate_id) + ".edges")).string();
      write_file(file, format_edge_list(r.graph));
    }
    csv += std::to_string(r.candidate_id) + ",1," + std::to_string(min_stabilizer_weight(r.graph)) + "," + file + "\n";
  }
  if (out_dir.empty())
    std::cout << csv;
  else
    write_file((std::filesystem::path(out_dir) / "summary.csv").string(), csv);
  std::cerr << found.size() << " maximally uniform graphs on " << 2 * m << " vertices\n";
  return kExitOk;
}

int cmd_graph_check(const std::string& path) {
  const GraphSpec g = parse_edge_list(read_file(path));
  RunManifest m = manifest("graphs check", {{"graph", path}});
  m.add_input(path);
  json j{{"manifest", m.to_json()}, {"vertices", g.v()}, {"edges", g.edges().size()}};
  if (g.v() % 2 == 0 && g.v() > 0) j["maximally_uniform"] = is_maximally_uniform_graph(g);
  if (g.v() > 0 && g.v() <= 24) j["min_stabilizer_weight"] = min_stabilizer_weight(g);
  json gens = json::array();
  for (const auto& s : stabilizer_generators(g)) gens.push_back(s.str());
  j["stabilizer_generators"] = gens;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ---- polytope -------------------------------------------------------------

PolytopeSpec named_spec(const std::string& name) {
  if (name == "p53-face") return p53_face_spec();
  if (name == "p53") return {5, 3, {}};
  if (name == "p22") return {2, 2, {}};
  if (name == "p21") return {2, 1, {}};
  throw InvalidInput("unknown polytope '" + name + "' (p53-face, p53, p22, p21)");
}

int cmd_polytope_vertices(const std::string& name, const std::string& method, const std::string& out_path) {
  const PolytopeSpec spec = named_spec(name);
  std::vector<BitDistribution> verts;
  if (method == "closed-form") {
    if (name != "p53-face") throw InvalidInput("closed-form enumeration exists only for p53-face");
    for (const auto& pt : enumerate_vertices_p53()) verts.push_back(qpoint_to_distribution(pt));
  } else if (method == "active-set") {
    verts = enumerate_vertices_generic(spec).vertices;
  } else {
    throw InvalidInput("method must be closed-form or active-set");
  }
  const RunManifest m = manifest("polytope vertices", {{"polytope", name}, {"method", method}});
  std::string csv = csv_manifest_line(m) + "vertex,entropy";
  for (std::size_t x = 0; x < (std::size_t{1} << spec.n); ++x) csv += ",p" + std::to_string(x);
  csv += "\n";
  for (std::size_t i = 0; i < verts.size(); ++i) {
    csv += std::to_string(i) + "," + format_full(verts[i].entropy());
    for (double v : verts[i].p()) csv += "," + format_full(v);
    csv += "\n";
  }
  Output{out_path}.write(csv);
  return kExitOk;
}

int cmd_polytope_chain(const std::string& out_path) {
  const Inf6Report rep = verify_inf6_chain();
  json links = json::array();
  for (const auto& l : rep.links)
    links.push_back({{"name", l.name}, {"pass", l.pass}, {"value", l.value}, {"detail", l.detail}});
  const RunManifest m = manifest("polytope chain", json::object(), 7);
  Output{out_path}.write(
      json{{"manifest", m.to_json()}, {"links", links}, {"pass", rep.pass}, {"infimum", rep.infimum}}.dump(2) + "\n");
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpent: minimum local-measurement entropy of multipartite pure states"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // state build
  auto* state = app.add_subcommand("state", "Build named states");
  state->require_subcommand(1);
  auto* build = state->add_subcommand("build", "Write a JSON state file");
  StateArgs sa;
  build->add_option("kind", sa.kind, "ghz | det | gdet | graph | hexacode")->required();
  build->add_option("--n", sa.n, "party count (ghz, det)");
  build->add_option("--d", sa.d, "local dimension (ghz, gdet)");
  build->add_option("--p", sa.p, "block length (gdet)");
  build->add_option("--graph", sa.graph, "edge-list file (graph)");
  build->add_option("--out", sa.out, "output state file")->required();

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Bracket S[psi] for a state file");
  EntropyArgs ea;
  entropy->add_option("state", ea.state, "state JSON file")->required()->check(CLI::ExistingFile);
  entropy->add_option("--seed", ea.cfg.seed, "PRNG seed");
  entropy->add_option("--restarts", ea.cfg.restarts, "optimizer restarts");
  entropy->add_option("--tol", ea.cfg.tol, "per-sweep improvement threshold");
  entropy->add_option("--max-sweeps", ea.cfg.max_sweeps, "sweep budget per restart");
  entropy->add_flag("--overlap-bound", ea.cfg.overlap_bound, "add -log2 max product overlap (heuristic)");
  entropy->add_flag("--polytope-bound", ea.polytope_bound, "add the P6^3 bound when applicable");
  entropy->add_option("--embed", ea.embed, "zero-pad each party to dimension D before optimizing");
  entropy->add_option("--basis-out", ea.basis_out, "write witness basis JSON here");
  std::string entropy_format = "json";
  entropy->add_option("--format", entropy_format, "json")->check(CLI::IsMember({"json"}));
  entropy->add_option("--out", ea.report_out, "write report here instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::uint64_t verify_seed = 0;
  int verify_m = 3;
  std::string verify_format = "text", verify_out;
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  verify->add_option("suite", suite, "suite name or all")->required()->check(CLI::IsMember(allowed));
  verify->add_option("--seed", verify_seed, "override suite seed (0 keeps defaults)");
  verify->add_option("--m", verify_m, "largest m for the graph suite (1..3)")->check(CLI::Range(1, 3));
  verify->add_option("--format", verify_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", verify_out, "write report here instead of stdout");

  // table1
  auto* t1 = app.add_subcommand("table1", "Normalized entropy of qubit determinant states");
  std::string t1_format = "csv", t1_out;
  t1->add_option("--format", t1_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  t1->add_option("--out", t1_out, "output file");

  // graphs
  auto* graphs = app.add_subcommand("graphs", "Maximally uniform graph tools");
  graphs->require_subcommand(1);
  auto* search = graphs->add_subcommand("search", "Search graphs on 2m vertices");
  int gm = 3;
  std::string gmode = "exhaustive", gout;
  std::uint64_t gbudget = 10000, gseed = 1;
  search->add_option("--m", gm, "half the vertex count")->required();
  search->add_option("--mode", gmode, "exhaustive | random")->check(CLI::IsMember({"exhaustive", "random"}));
  search->add_option("--budget", gbudget, "random samples");
  search->add_option("--seed", gseed, "PRNG seed (random mode)");
  search->add_option("--out", gout, "directory for edge lists and summary.csv");
  auto* check = graphs->add_subcommand("check", "Uniformity and stabilizer weight of an edge-list graph");
  std::string gfile;
  check->add_option("graph", gfile, "edge-list file")->required()->check(CLI::ExistingFile);

  // polytope
  auto* poly = app.add_subcommand("polytope", "k-uniform distribution polytopes");
  poly->require_subcommand(1);
  auto* verts = poly->add_subcommand("vertices", "Vertex list as CSV");
  std::string pname = "p53-face", pmethod = "active-set", pout;
  verts->add_option("--polytope", pname, "p53-face | p53 | p22 | p21");
  verts->add_option("--method", pmethod, "active-set | closed-form");
  std::string pformat = "csv";
  verts->add_option("--format", pformat, "csv")->check(CLI::IsMember({"csv"}));
  verts->add_option("--out", pout, "output file");
  auto* chain = poly->add_subcommand("chain", "Check the P6^3 minimum-entropy chain (JSON)");
  std::string cout_path;
  chain->add_option("--out", cout_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*build) return cmd_state_build(sa);
    if (*entropy) return cmd_entropy(ea);
    if (*verify) return cmd_verify(suite, verify_seed, verify_m, verify_format, verify_out);
    if (*t1) return cmd_table1(t1_format, t1_out);
    if (*search) return cmd_graph_search(gm, gmode, gbudget, gseed, gout);
    if (*check) return cmd_graph_check(gfile);
    if (*verts) return cmd_polytope_vertices(pname, pmethod, pout);
    if (*chain) return cmd_polytope_chain(cout_path);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
