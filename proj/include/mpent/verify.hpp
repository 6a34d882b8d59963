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

#pragma once

// Verification suites. Each suite reproduces one group of closed-form
// results with pinned tolerances and reports one line per check.

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mpent/entopt.hpp"
#include "mpent/gf2uniform.hpp"
#include "mpent/kpolytope.hpp"
#include "mpent/random.hpp"
#include "mpent/states.hpp"

namespace mpent {

struct Check {
  std::string name;
  double measured;
  double target;
  double tol;
  bool pass;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means none

  bool pass() const {
    bool ok = time_limit <= 0.0 || seconds < time_limit;
    for (const auto& c : checks) ok = ok && c.pass;
    return ok;
  }
};

namespace detail {

class SuiteBuilder {
 public:
  explicit SuiteBuilder(std::string name, double limit) : start_(std::chrono::steady_clock::now()) {
    rep_.suite = std::move(name);
    rep_.time_limit = limit;
  }

  /// |measured - target| <= tol.
  void near(const std::string& name, double measured, double target, double tol, std::string note = "") {
    rep_.checks.push_back({name, measured, target, tol, std::abs(measured - target) <= tol, std::move(note)});
  }
  /// measured <= bound.
  void at_most(const std::string& name, double measured, double bound, std::string note = "") {
    rep_.checks.push_back({name, measured, bound, 0.0, measured <= bound, std::move(note)});
  }
  void truth(const std::string& name, bool ok, std::string note = "") {
    rep_.checks.push_back({name, ok ? 1.0 : 0.0, 1.0, 0.0, ok, std::move(note)});
  }

  SuiteReport finish() {
    rep_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(rep_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
  SuiteReport rep_;
};

}  // namespace detail

struct Table1Row {
  int p;
  std::uint64_t n;
  double normalized;  // log2((2^p)!) / (p 2^p)
};

/// Normalized entropy of the qubit generalized determinant states.
inline std::vector<Table1Row> table1(const std::vector<int>& ps = {1, 2, 3, 4, 5, 10}) {
  std::vector<Table1Row> rows;
  for (int p : ps) {
    const std::uint64_t levels = std::uint64_t{1} << p;
    const std::uint64_t n = static_cast<std::uint64_t>(p) * levels;
    rows.push_back({p, n, log2_factorial(levels) / static_cast<double>(n)});
  }
  return rows;
}

inline SuiteReport verify_bipartite(std::uint64_t seed = 2024) {
  detail::SuiteBuilder b("bipartite", 60.0);
  OptConfig cfg;
  cfg.restarts = 20;
  cfg.seed = seed;
  Rng rng = stream_rng(seed, 99);
  double worst = 0.0;
  int count = 0;
  for (int k = 0; k < 50; ++k) {
    const int d = 2 + k % 3;
    const PureState psi = random_state(2, d, rng);
    const double exact = bipartite_exact(psi).first;
    const OptResult r = minimize_entropy(psi, cfg);
    worst = std::max(worst, std::abs(r.s_upper - exact));
    ++count;
  }
  b.at_most("max |S_opt - E| over 50 random states, d in {2,3,4}", worst, 1e-4, std::to_string(count) + " states");
  return b.finish();
}

inline SuiteReport verify_ghz(std::uint64_t seed = 1) {
  detail::SuiteBuilder b("ghz", 1.0);
  const PureState g = ghz(3, 2);
  OptConfig cfg;
  cfg.restarts = 4;
  cfg.seed = seed;
  const OptResult r = minimize_entropy(g, cfg);
  b.near("s_upper", r.s_upper, 1.0, 1e-6);
  b.near("s_lower", r.s_lower, 1.0, 1e-6, r.lower_bound_witness);
  b.at_most("bracket width", r.width(), 1e-6);
  for (int q = 0; q < 3; ++q) b.near("subset bound from qubit " + std::to_string(q + 1), subset_lower_bound(g, {q}), 1.0, 1e-12);
  return b.finish();
}

inline SuiteReport verify_det(std::uint64_t seed = 3) {
  detail::SuiteBuilder b("det", 300.0);
  for (int n = 2; n <= 4; ++n) {
    const PureState det = determinant_state(n);
    const double target = log2_factorial(n);
    const std::string tag = "n=" + std::to_string(n) + " ";
    b.near(tag + "standard-basis entropy = log2(n!)", entropy_for_bases(det, ProductBasis::standard(n, n)), target, 1e-12);
    OptConfig cfg;
    cfg.restarts = 8;
    cfg.seed = seed;
    const OptResult r = minimize_entropy(det, cfg);
    b.at_most(tag + "optimizer s_upper <= log2(n!) + 1e-3", r.s_upper, target + 1e-3);
    const OverlapResult ov = max_product_overlap(det, cfg);
    b.near(tag + "max product overlap = 1/n!", ov.value, 1.0 / factorial(n), 1e-6);
    Rng rng = stream_rng(seed, 1000 + n);
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      const MatrixXcd v = haar_special_unitary(n, rng);
      const PureState moved = apply_product(det, std::vector<MatrixXcd>(n, v));
      worst = std::max(worst, (moved.amp() - det.amp()).cwiseAbs().maxCoeff());
    }
    b.at_most(tag + "SU(n) singlet: max |V^n Det - Det|", worst, 1e-9);
  }
  return b.finish();
}

inline SuiteReport verify_gdet_table1() {
  detail::SuiteBuilder b("gdet-table1", 0.0);
  const std::map<int, double> published = {{1, 0.50}, {2, 0.57}, {3, 0.64}, {4, 0.69}, {5, 0.74}, {10, 0.86}};
  for (const auto& row : table1()) {
    const double rounded = std::round(row.normalized * 100.0) / 100.0;
    b.near("p=" + std::to_string(row.p) + " normalized entropy (2 decimals)", rounded, published.at(row.p), 1e-12,
           "raw " + std::to_string(row.normalized));
  }
  const PureState g = generalized_determinant(2, 2);
  b.near("d=2 p=2 materialized standard-basis entropy = log2 24", entropy_for_bases(g, ProductBasis::standard(8, 2)),
         std::log2(24.0), 1e-10);
  const auto support = generalized_determinant_support(2, 3);
  std::vector<double> p(support.size(), 1.0 / static_cast<double>(support.size()));
  b.near("d=2 p=3 distribution-only entropy = log2 8!", shannon_entropy(p), log2_factorial(8), 1e-9);
  return b.finish();
}

inline SuiteReport verify_hexacode(std::uint64_t seed = 5) {
  detail::SuiteBuilder b("hexacode", 120.0);
  const GraphSpec g = hexacode_graph();
  const PureState h = graph_state(g);

  const auto p = outcome_distribution(h, hexacode_reference_basis());
  bool shape = true;
  for (std::uint64_t x = 0; x < 64; ++x) {
    auto bit = [x](int i) { return static_cast<int>((x >> (6 - i)) & 1); };  // 1-based qubit
    const bool on = bit(1) == (bit(2) ^ bit(3) ^ bit(4)) && bit(6) == (bit(3) ^ bit(4) ^ bit(5));
    shape = shape && std::abs(p[x] - (on ? 1.0 / 16 : 0.0)) <= 1e-12;
  }
  b.truth("(a) reference bases give 1/16 on both parity constraints, 0 elsewhere", shape);
  b.near("(a) reference entropy", shannon_entropy(p), 4.0, 1e-12);

  const auto whites = balanced_white_sets(6);
  double worst_pt = 0.0, worst_closed = 0.0;
  for (std::uint64_t w : whites) {
    std::vector<int> set;
    for (int i = 0; i < 6; ++i)
      if ((w >> i) & 1) set.push_back(i);
    const MatrixXcd id = MatrixXcd::Identity(8, 8) / 8.0;
    worst_pt = std::max(worst_pt, (partial_trace(h, set).mat() - id).cwiseAbs().maxCoeff());
    worst_closed = std::max(worst_closed, (graph_reduced_density(g, set).mat() - id).cwiseAbs().maxCoeff());
  }
  b.at_most("(b) " + std::to_string(whites.size()) + " partitions: max |rho_w - 1/8| via partial trace", worst_pt, 1e-12);
  b.at_most("(b) " + std::to_string(whites.size()) + " partitions: max |rho_w - 1/8| via closed form", worst_closed, 1e-12);
  b.near("(b) representative count", static_cast<double>(whites.size()), 10.0, 0.0);
  b.near("(c) min stabilizer weight", min_stabilizer_weight(g), 4.0, 0.0);

  OptConfig cfg;
  cfg.restarts = 12;
  cfg.seed = seed;
  OptResult r = minimize_entropy(h, cfg);
  bool uniform = true;
  for (const auto& rec : r.restarts)
    uniform = uniform && is_k_uniform(BitDistribution(6, outcome_distribution(h, rec.basis), 1e-9), 3, 1e-9);
  b.truth("(d) every optimizer outcome distribution is 3-uniform", uniform,
          std::to_string(r.restarts.size()) + " restarts");
  b.near("subset lower bound alone", r.s_lower, 3.0, 1e-9, r.lower_bound_witness);
  const Inf6Report chain = verify_inf6_chain();
  if (chain.pass) add_lower_bound(r, chain.infimum, "polytope: inf over P6^3 = 4");
  b.truth("(e) polytope bound chain holds", chain.pass);
  b.near("(e) s_lower", r.s_lower, 4.0, 1e-9, r.lower_bound_witness);
  b.at_most("(e) s_upper <= 4 + 1e-6", r.s_upper, 4.0 + 1e-6);
  b.at_most("(e) bracket width", r.width(), 1e-6);
  return b.finish();
}

inline SuiteReport verify_polytope() {
  detail::SuiteBuilder b("polytope", 60.0);
  const auto pts = enumerate_vertices_p53();
  b.near("closed-form vertex count", static_cast<double>(pts.size()), 11.0, 0.0);

  // Listed extremal points: q=-1; q_i=-1; q_i=1/3 with the others -1/3.
  std::vector<QPoint53> listed{{-1.0, {0, 0, 0, 0, 0}}};
  for (int i = 0; i < 5; ++i) {
    QPoint53 a{0.0, {0, 0, 0, 0, 0}};
    a.qi[i] = -1.0;
    listed.push_back(a);
  }
  for (int i = 0; i < 5; ++i) {
    QPoint53 c{0.0, {-1.0 / 3, -1.0 / 3, -1.0 / 3, -1.0 / 3, -1.0 / 3}};
    c.qi[i] = 1.0 / 3;
    listed.push_back(c);
  }
  auto matches = [](const std::vector<BitDistribution>& xs, const std::vector<BitDistribution>& ys) {
    if (xs.size() != ys.size()) return false;
    for (const auto& x : xs) {
      int hits = 0;
      for (const auto& y : ys) hits += detail::same_distribution(x, y, 1e-9);
      if (hits != 1) return false;
    }
    return true;
  };
  std::vector<BitDistribution> closed, expected;
  for (const auto& pt : pts) closed.push_back(qpoint_to_distribution(pt));
  for (const auto& pt : listed) expected.push_back(qpoint_to_distribution(pt));
  b.truth("closed-form vertices match the listed eleven points", matches(closed, expected));

  const VertexSet generic = enumerate_vertices_generic(p53_face_spec());
  b.truth("active-set oracle returns the same eleven vertices", matches(closed, generic.vertices),
          std::to_string(generic.vertices.size()) + " vertices from " + std::to_string(generic.subsets) + " active sets");

  int fours = 0, others = 0;
  const double type3 = 17.0 / 6.0 + std::log2(3.0);
  double min_s = 1e9;
  for (const auto& v : closed) {
    const double s = v.entropy();
    min_s = std::min(min_s, s);
    if (std::abs(s - 4.0) <= 1e-9) ++fours;
    else if (std::abs(s - type3) <= 1e-9) ++others;
  }
  b.near("vertices with entropy 4", fours, 6.0, 0.0);
  b.near("vertices with entropy 17/6 + log2 3", others, 5.0, 0.0);
  b.near("min entropy over face vertices", min_entropy_over_polytope(p53_face_spec()), 4.0, 1e-9);
  bool uniform = true;
  for (const auto& v : generic.vertices) uniform = uniform && is_k_uniform(v, 3, 1e-9);
  b.truth("every vertex is 3-uniform", uniform);
  const Inf6Report chain = verify_inf6_chain();
  for (const auto& l : chain.links) b.truth("chain link: " + l.name, l.pass, l.detail);
  b.near("chain verdict: inf over P6^3", chain.pass ? chain.infimum : -1.0, 4.0, 0.0);
  return b.finish();
}

inline SuiteReport verify_graphs(int max_m = 3) {
  detail::SuiteBuilder b("graphs", 0.0);
  const auto m1 = search_maximally_uniform(1, SearchMode::exhaustive);
  b.truth("m=1 exhaustive finds exactly the single edge",
          m1.size() == 1 && m1[0].graph == GraphSpec::from_edges(2, {{0, 1}}));
  if (max_m >= 2) {
    const auto m2 = search_maximally_uniform(2, SearchMode::exhaustive);
    b.near("m=2 exhaustive (64 graphs) finds none", static_cast<double>(m2.size()), 0.0, 0.0);
  }
  if (max_m >= 3) {
    const auto m3 = search_maximally_uniform(3, SearchMode::exhaustive);
    bool prism = false;
    int min_w = 1000;
    for (const auto& r : m3) {
      prism = prism || isomorphic(r.graph, hexacode_graph());
      min_w = std::min(min_w, min_stabilizer_weight(r.graph));
    }
    b.truth("m=3 exhaustive contains the prism", prism, std::to_string(m3.size()) + " labelled graphs");
    b.truth("m=3: every found graph has min stabilizer weight >= 4", min_w >= 4,
            "min weight " + std::to_string(min_w));
    b.truth("hexacode graph passes the maximal-uniformity test", is_maximally_uniform_graph(hexacode_graph()));
  }
  return b.finish();
}

inline SuiteReport verify_properties(std::uint64_t seed = 11) {
  detail::SuiteBuilder b("properties", 0.0);
  Rng rng = stream_rng(seed, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double fourier_err = 0.0;
  for (int n = 1; n <= 12; ++n)
    for (int t = 0; t < 3; ++t) {
      std::vector<double> p(std::size_t{1} << n);
      double total = 0.0;
      for (double& x : p) total += (x = unit(rng));
      for (double& x : p) x /= total;
      const BitDistribution dist(n, p);
      const auto back = inverse_fourier(fourier(dist));
      for (std::size_t x = 0; x < p.size(); ++x) fourier_err = std::max(fourier_err, std::abs(back[x] - p[x]));
    }
  b.at_most("Fourier roundtrip max error, n <= 12", fourier_err, 1e-12);

  double duality = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4, d = 2 + t % 2;
    const PureState psi = random_state(n, d, rng);
    std::vector<int> x;
    for (int i = 0; i < n; ++i)
      if (unit(rng) < 0.5) x.push_back(i);
    if (x.empty()) x.push_back(0);
    if (static_cast<int>(x.size()) == n) x.pop_back();
    auto a = spectrum(partial_trace(psi, x));
    auto c = spectrum(partial_trace(psi, complement(n, x)));
    std::sort(a.rbegin(), a.rend());
    std::sort(c.rbegin(), c.rend());
    for (std::size_t i = 0; i < std::max(a.size(), c.size()); ++i)
      duality = std::max(duality, std::abs((i < a.size() ? a[i] : 0.0) - (i < c.size() ? c[i] : 0.0)));
  }
  b.at_most("partial-trace spectrum duality", duality, 1e-9);

  OptConfig cfg;
  cfg.restarts = 8;
  cfg.seed = seed;
  const PureState singlet = determinant_state(2);
  const PureState g3 = ghz(3, 2);
  std::vector<std::pair<PureState, OptResult>> runs;
  auto run = [&](const PureState& s) {
    runs.emplace_back(s, minimize_entropy(s, cfg));
    return runs.back().second.s_upper;
  };
  const double s_singlet = run(singlet), s_ghz = run(g3);
  const double s_ss = run(tensor(singlet, singlet)), s_gs = run(tensor(g3, singlet));
  b.at_most("additivity |S(singlet^2) - 2 S(singlet)|", std::abs(s_ss - 2 * s_singlet), 1e-3);
  b.at_most("additivity |S(GHZ3 x singlet) - S(GHZ3) - S(singlet)|", std::abs(s_gs - s_ghz - s_singlet), 1e-3);

  bool marginal_ok = true;
  int outputs = 0;
  for (const auto& [s, r] : runs)
    for (const auto& rec : r.restarts) {
      const auto p = outcome_distribution(s, rec.basis);
      const double joint = shannon_entropy(p);
      for (double m : party_marginal_entropies(p, s.n(), s.d())) marginal_ok = marginal_ok && m <= joint + 1e-12;
      ++outputs;
    }
  b.truth("single-party marginal entropy <= joint entropy on all optimizer outputs", marginal_ok,
          std::to_string(outputs) + " outputs");

  double graph_err = 0.0;
  int subsets = 0;
  for (int t = 0; t < 100; ++t) {
    const int v = 2 + t % 7;  // 2..8 vertices
    std::vector<std::pair<int, int>> edges;
    for (auto e : all_vertex_pairs(v))
      if (unit(rng) < 0.5) edges.push_back(e);
    const GraphSpec g = GraphSpec::from_edges(v, edges);
    const PureState psi = graph_state(g);
    for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << v); ++s) {
      std::vector<int> w;
      for (int i = 0; i < v; ++i)
        if ((s >> i) & 1) w.push_back(i);
      graph_err = std::max(graph_err, (graph_reduced_density(g, w).mat() - partial_trace(psi, w).mat()).cwiseAbs().maxCoeff());
      ++subsets;
    }
  }
  b.at_most("closed-form graph rho_w vs partial trace, 100 random graphs v <= 8", graph_err, 1e-10,
            std::to_string(subsets) + " subsets");
  return b.finish();
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bipartite", "ghz", "det", "gdet-table1", "hexacode",
                                              "polytope", "graphs", "properties"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed = 0, int max_m = 3) {
  auto pick = [seed](std::uint64_t fallback) { return seed == 0 ? fallback : seed; };
  if (name == "bipartite") return verify_bipartite(pick(2024));
  if (name == "ghz") return verify_ghz(pick(1));
  if (name == "det") return verify_det(pick(3));
  if (name == "gdet-table1") return verify_gdet_table1();
  if (name == "hexacode") return verify_hexacode(pick(5));
  if (name == "polytope") return verify_polytope();
  if (name == "graphs") return verify_graphs(max_m);
  if (name == "properties") return verify_properties(pick(11));
  throw InvalidInput("unknown suite '" + name + "'");
}

}  // namespace mpent
