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

// Constructors for the named states: GHZ, determinant, generalized
// determinant, graph states and the hexacode state.

#include <bit>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mpent/hilbert.hpp"

namespace mpent {

/// Unoriented simple graph on at most 64 vertices; adj[i] has bit j set iff
/// (i, j) is an edge. Vertices are 0-based in code, 1-based in files.
class GraphSpec {
 public:
  explicit GraphSpec(int v = 0, std::vector<std::uint64_t> adj = {}) : v_(v), adj_(std::move(adj)) {
    if (v < 0 || v > 64) throw InvalidInput("graph vertex count must be in [0, 64]");
    if (adj_.empty()) adj_.assign(v, 0);
    if (static_cast<int>(adj_.size()) != v) throw InvalidInput("adjacency row count != vertex count");
    const std::uint64_t all = v == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
    for (int i = 0; i < v; ++i) {
      if (adj_[i] & ~all) throw InvalidInput("adjacency row references a missing vertex");
      if ((adj_[i] >> i) & 1) throw InvalidInput("graph has a self loop at vertex " + std::to_string(i + 1));
      for (int j = 0; j < v; ++j)
        if (((adj_[i] >> j) & 1) != ((adj_[j] >> i) & 1)) throw InvalidInput("adjacency is not symmetric");
    }
  }

  static GraphSpec from_edges(int v, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::uint64_t> adj(v, 0);
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= v || b >= v) throw InvalidInput("edge endpoint out of range");
      if (a == b) throw InvalidInput("self loops are not allowed");
      adj[a] |= std::uint64_t{1} << b;
      adj[b] |= std::uint64_t{1} << a;
    }
    return GraphSpec(v, std::move(adj));
  }

  int v() const { return v_; }
  std::uint64_t row(int i) const { return adj_[i]; }
  const std::vector<std::uint64_t>& rows() const { return adj_; }
  bool has_edge(int i, int j) const { return (adj_[i] >> j) & 1; }
  int degree(int i) const { return std::popcount(adj_[i]); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < v_; ++i)
      for (int j = i + 1; j < v_; ++j)
        if (has_edge(i, j)) e.emplace_back(i, j);
    return e;
  }

  /// a(x) = sum_{i<j} A_ij x_i x_j mod 2, with x given as a vertex bitmask.
  int quadratic_form(std::uint64_t x) const {
    int twice = 0;
    for (int i = 0; i < v_; ++i)
      if ((x >> i) & 1) twice += std::popcount(adj_[i] & x);
    return (twice / 2) & 1;
  }

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;

 private:
  int v_;
  std::vector<std::uint64_t> adj_;
};

/// Flat qubit index (vertex 0 most significant) to vertex bitmask.
inline std::uint64_t flat_to_mask(std::uint64_t flat, int v) {
  std::uint64_t m = 0;
  for (int i = 0; i < v; ++i)
    if ((flat >> (v - 1 - i)) & 1) m |= std::uint64_t{1} << i;
  return m;
}

inline std::uint64_t mask_to_flat(std::uint64_t mask, int v) { return flat_to_mask(mask, v); }

/// Digit map [0, d^p) -> base-d strings of length p, most significant first.
struct CodeMap {
  int d;
  int p;
  std::vector<std::vector<int>> table;

  static CodeMap lexicographic(int d, int p) {
    CodeMap m{d, p, {}};
    const auto count = ipow(d, p);
    m.table.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) m.table.push_back(Indexer{p, d}.digits(k));
    return m;
  }

  bool is_bijection() const {
    std::vector<bool> seen(ipow(d, p), false);
    if (table.size() != seen.size()) return false;
    for (const auto& s : table) {
      if (static_cast<int>(s.size()) != p) return false;
      std::uint64_t f = Indexer{p, d}.flat(s);
      if (seen[f]) return false;
      seen[f] = true;
    }
    return true;
  }
};

inline PureState ghz(int n, int d) {
  if (n < 2) throw InvalidInput("GHZ needs n >= 2");
  check_capacity(n, d);
  const Indexer idx{n, d};
  VectorXcd amp = VectorXcd::Zero(idx.size());
  for (int k = 0; k < d; ++k) amp[idx.flat(std::vector<int>(n, k))] = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(n, d, std::move(amp));
}

/// Sign of a permutation given as images 0..N-1.
inline int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// (n!)^{-1/2} sum eps_{i_1..i_n} |i_1,...,i_n>, d = n.
inline PureState determinant_state(int n) {
  if (n < 2 || n > 7) throw CapacityError("determinant_state supports 2 <= n <= 7, got " + std::to_string(n));
  const Indexer idx{n, n};
  VectorXcd amp = VectorXcd::Zero(idx.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const double norm = 1.0 / std::sqrt(factorial(n));
  do {
    amp[idx.flat(perm)] = permutation_sign(perm) * norm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return PureState(n, n, std::move(amp));
}

/// Flat index of the generalized-determinant term for permutation perm.
inline std::uint64_t gdet_flat_index(const CodeMap& code, const std::vector<int>& perm) {
  std::uint64_t f = 0;
  for (int level : perm)
    for (int digit : code.table[level]) f = f * code.d + digit;
  return f;
}

/// Party count n = p d^p of the generalized determinant state.
inline int gdet_party_count(int d, int p) {
  if (d < 2 || p < 1) throw InvalidInput("generalized determinant needs d >= 2, p >= 1");
  const auto levels = ipow(d, p);
  if (levels > 64) throw CapacityError("d^p too large");
  return p * static_cast<int>(levels);
}

/// |Det_{d^p}> re-encoded into n = p d^p parties of dimension d through the
/// lexicographic digit map.
inline PureState generalized_determinant(int d, int p) {
  const int n = gdet_party_count(d, p);
  check_capacity(n, d);
  const CodeMap code = CodeMap::lexicographic(d, p);
  const int levels = static_cast<int>(code.table.size());
  VectorXcd amp = VectorXcd::Zero(ipow(d, n));
  std::vector<int> perm(levels);
  std::iota(perm.begin(), perm.end(), 0);
  const double norm = 1.0 / std::sqrt(factorial(levels));
  do {
    amp[gdet_flat_index(code, perm)] = permutation_sign(perm) * norm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return PureState(n, d, std::move(amp));
}

/// Standard-basis outcome support of the generalized determinant state
/// without materializing amplitudes; every listed outcome has probability
/// 1/(d^p)!. Limited to (d^p)! <= 10^7 and n log2 d <= 64.
inline std::vector<std::uint64_t> generalized_determinant_support(int d, int p) {
  const int n = gdet_party_count(d, p);
  const int levels = static_cast<int>(ipow(d, p));
  if (factorial(levels) > 1e7) throw CapacityError("(d^p)! exceeds the 10^7 outcome limit");
  if (n * std::log2(static_cast<double>(d)) > 64.0) throw CapacityError("outcome labels exceed 64 bits");
  const CodeMap code = CodeMap::lexicographic(d, p);
  std::vector<std::uint64_t> support;
  std::vector<int> perm(levels);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    support.push_back(gdet_flat_index(code, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return support;
}

/// amp[x] = 2^{-v/2} (-1)^{a(x)}.
inline PureState graph_state(const GraphSpec& g) {
  check_capacity(g.v(), 2);
  const std::uint64_t size = std::uint64_t{1} << g.v();
  VectorXcd amp(size);
  const double mag = std::pow(2.0, -0.5 * g.v());
  for (std::uint64_t x = 0; x < size; ++x) amp[x] = g.quadratic_form(flat_to_mask(x, g.v())) ? -mag : mag;
  return PureState(g.v(), 2, std::move(amp));
}

/// Triangular prism: inner triangle 1-2-3, outer triangle 4-5-6, spokes 1-4, 2-5, 3-6.
inline GraphSpec hexacode_graph() {
  return GraphSpec::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
}

inline PureState hexacode_state() { return graph_state(hexacode_graph()); }

inline MatrixXcd hadamard_basis() {
  MatrixXcd h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

/// Standard basis on qubits 2..5 and {|+>,|->} on qubits 1 and 6.
inline ProductBasis hexacode_reference_basis() {
  std::vector<MatrixXcd> u(6, MatrixXcd::Identity(2, 2));
  u[0] = hadamard_basis();
  u[5] = hadamard_basis();
  return ProductBasis(6, 2, std::move(u));
}

/// Parses "i j" lines (1-based). Blank lines and '#' comments are skipped;
/// a "# vertices N" comment fixes the vertex count, otherwise the largest
/// index is used.
inline GraphSpec parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int declared = -1;
  int max_vertex = 0;
  std::vector<std::pair<int, int>> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#') {
      std::string key;
      int value;
      if (ls >> key >> value && key == "vertices") declared = value;
      continue;
    }
    int a, b;
    std::istringstream pair_stream(line);
    std::string extra;
    if (!(pair_stream >> a >> b) || (pair_stream >> extra))
      throw InvalidInput("edge list line " + std::to_string(lineno) + ": expected 'i j'");
    if (a < 1 || b < 1) throw InvalidInput("edge list line " + std::to_string(lineno) + ": vertices are 1-based");
    max_vertex = std::max({max_vertex, a, b});
    edges.emplace_back(a - 1, b - 1);
  }
  const int v = declared >= 0 ? declared : max_vertex;
  if (max_vertex > v) throw InvalidInput("edge references vertex beyond declared count");
  return GraphSpec::from_edges(v, edges);
}

inline std::string format_edge_list(const GraphSpec& g) {
  std::ostringstream out;
  out << "# vertices " << g.v() << "\n";
  for (auto [a, b] : g.edges()) out << a + 1 << " " << b + 1 << "\n";
  return out.str();
}

}  // namespace mpent
