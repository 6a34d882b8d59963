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

// GF(2) combinatorics on bit strings and graphs: Fourier transforms of
// n-bit distributions, k-uniformity, adjacency blocks over GF(2), graph-state
// reduced density matrices, stabilizer groups and the search for maximally
// uniform graphs.

#include <bit>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mpent/hilbert.hpp"
#include "mpent/random.hpp"
#include "mpent/states.hpp"

namespace mpent {

/// Probability vector over n-bit strings. Index x carries bit 1 in its most
/// significant position, matching the qubit flat-index convention.
class BitDistribution {
 public:
  BitDistribution(int n, std::vector<double> p, double tol = 1e-10) : n_(n), p_(std::move(p)) {
    if (n < 0 || n > 30) throw InvalidInput("bit count out of range");
    if (p_.size() != (std::size_t{1} << n)) throw InvalidInput("distribution length != 2^n");
    double total = 0.0;
    for (double& x : p_) {
      if (x < -tol) throw InvalidInput("negative probability " + std::to_string(x));
      if (x < 0.0) x = 0.0;
      total += x;
    }
    if (std::abs(total - 1.0) > tol) throw InvalidInput("distribution sums to " + std::to_string(total));
  }

  int n() const { return n_; }
  const std::vector<double>& p() const { return p_; }
  double operator[](std::size_t x) const { return p_[x]; }
  double entropy() const { return shannon_entropy(p_); }

 private:
  int n_;
  std::vector<double> p_;
};

inline int weight(std::uint64_t y) { return std::popcount(y); }

/// In-place Walsh-Hadamard butterfly: v[y] <- sum_x (-1)^{x.y} v[x].
inline void walsh_hadamard(std::vector<double>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1)
    for (std::size_t i = 0; i < v.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

/// q(y) = sum_x (-1)^{x.y} p(x).
inline std::vector<double> fourier(const BitDistribution& dist) {
  std::vector<double> q = dist.p();
  walsh_hadamard(q);
  return q;
}

/// p(x) = 2^{-n} sum_y (-1)^{x.y} q(y). Returns raw values; wrap in
/// BitDistribution to validate.
inline std::vector<double> inverse_fourier(std::vector<double> q) {
  if (q.empty() || !std::has_single_bit(q.size())) throw InvalidInput("Fourier vector length must be 2^n");
  walsh_hadamard(q);
  const double scale = 1.0 / static_cast<double>(q.size());
  for (double& x : q) x *= scale;
  return q;
}

/// Fourier criterion: |q(y)| <= tol whenever 1 <= wt(y) <= k.
inline bool is_k_uniform(const BitDistribution& dist, int k, double tol = 1e-9) {
  if (k < 0 || k > dist.n()) throw InvalidInput("uniformity order out of range");
  const auto q = fourier(dist);
  for (std::size_t y = 1; y < q.size(); ++y)
    if (weight(y) <= k && std::abs(q[y]) > tol) return false;
  return true;
}

/// Marginal of dist on the listed bit positions (0-based, ascending), with
/// the first listed bit most significant.
inline std::vector<double> marginal(const BitDistribution& dist, const std::vector<int>& bits) {
  const int n = dist.n();
  std::vector<double> out(std::size_t{1} << bits.size(), 0.0);
  for (std::size_t x = 0; x < dist.p().size(); ++x) {
    std::size_t m = 0;
    for (int b : bits) m = (m << 1) | ((x >> (n - 1 - b)) & 1);
    out[m] += dist[x];
  }
  return out;
}

/// Direct criterion: every k-bit marginal equals 2^{-k} within tol.
inline bool is_k_uniform_marginal(const BitDistribution& dist, int k, double tol = 1e-9) {
  if (k < 0 || k > dist.n()) throw InvalidInput("uniformity order out of range");
  if (k == 0) return true;
  const double target = std::ldexp(1.0, -k);
  std::vector<int> bits(k);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << dist.n()); ++s) {
    if (weight(s) != k) continue;
    bits.clear();
    for (int i = 0; i < dist.n(); ++i)
      if ((s >> i) & 1) bits.push_back(i);
    for (double v : marginal(dist, bits))
      if (std::abs(v - target) > tol) return false;
  }
  return true;
}

/// Sums out one bit position, returning an (n-1)-bit distribution.
inline BitDistribution drop_bit(const BitDistribution& dist, int bit) {
  std::vector<int> keep;
  for (int i = 0; i < dist.n(); ++i)
    if (i != bit) keep.push_back(i);
  return BitDistribution(dist.n() - 1, marginal(dist, keep), 1e-9);
}

/// Row-major bit matrix over GF(2); row r has bit c set iff entry (r, c) = 1.
struct Gf2Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint64_t> bits;

  static Gf2Matrix zeros(int r, int c) { return {r, c, std::vector<std::uint64_t>(r, 0)}; }
  static Gf2Matrix identity(int k) {
    Gf2Matrix m = zeros(k, k);
    for (int i = 0; i < k; ++i) m.bits[i] = std::uint64_t{1} << i;
    return m;
  }
  bool at(int r, int c) const { return (bits[r] >> c) & 1; }
  void set(int r, int c, bool v) {
    if (v)
      bits[r] |= std::uint64_t{1} << c;
    else
      bits[r] &= ~(std::uint64_t{1} << c);
  }
  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;
};

/// Rank of a set of GF(2) row vectors by elimination.
inline int gf2_rank(std::vector<std::uint64_t> rows) {
  int rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t pivot_row = rows[i];
    if (pivot_row == 0) continue;
    ++rank;
    const std::uint64_t pivot = pivot_row & (~pivot_row + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & pivot) rows[j] ^= pivot_row;
  }
  return rank;
}

inline int gf2_rank(const Gf2Matrix& m) { return gf2_rank(m.bits); }

struct BipartitionBlocks {
  Gf2Matrix ww;  // |w| x |w|
  Gf2Matrix bw;  // |b| x |w|
};

inline std::vector<int> validate_vertex_subset(const GraphSpec& g, std::vector<int> w) {
  return validate_subset(g.v(), std::move(w));
}

/// A^ww and A^bw with rows and columns in ascending vertex order.
inline BipartitionBlocks bipartition_blocks(const GraphSpec& g, std::vector<int> w) {
  w = validate_vertex_subset(g, std::move(w));
  const std::vector<int> b = complement(g.v(), w);
  const int nw = static_cast<int>(w.size());
  const int nb = static_cast<int>(b.size());
  BipartitionBlocks out{Gf2Matrix::zeros(nw, nw), Gf2Matrix::zeros(nb, nw)};
  for (int c = 0; c < nw; ++c) {
    for (int r = 0; r < nw; ++r) out.ww.set(r, c, g.has_edge(w[r], w[c]));
    for (int r = 0; r < nb; ++r) out.bw.set(r, c, g.has_edge(b[r], w[c]));
  }
  return out;
}

/// Closed-form reduced state of a graph state on the vertices w:
/// <x|rho_w|y> = (-1)^{a_ww(x) + a_ww(y)} 2^{-v} sum_z (-1)^{z . A^bw (x+y)},
/// where a_ww is the quadratic form of the induced subgraph on w.
inline DensityMatrix graph_reduced_density(const GraphSpec& g, std::vector<int> w) {
  w = validate_vertex_subset(g, std::move(w));
  const BipartitionBlocks blocks = bipartition_blocks(g, w);
  const int nw = static_cast<int>(w.size());
  const int nb = g.v() - nw;
  const std::size_t dim = std::size_t{1} << nw;

  // x is indexed with w[0] most significant; induced quadratic form on the
  // white block uses the same bit order as Gf2Matrix columns (bit c = w[c]).
  auto column_mask = [nw](std::size_t x) {
    std::uint64_t m = 0;
    for (int c = 0; c < nw; ++c)
      if ((x >> (nw - 1 - c)) & 1) m |= std::uint64_t{1} << c;
    return m;
  };
  const GraphSpec white(nw, blocks.ww.bits);

  MatrixXcd rho(dim, dim);
  const double scale = std::ldexp(1.0, -g.v());
  for (std::size_t x = 0; x < dim; ++x) {
    const std::uint64_t xm = column_mask(x);
    for (std::size_t y = 0; y < dim; ++y) {
      const std::uint64_t ym = column_mask(y);
      const int phase = white.quadratic_form(xm) ^ white.quadratic_form(ym);
      std::uint64_t u = 0;  // A^bw (x + y) as an nb-bit vector
      for (int r = 0; r < nb; ++r) u |= static_cast<std::uint64_t>(std::popcount(blocks.bw.bits[r] & (xm ^ ym)) & 1) << r;
      double sum = 0.0;
      for (std::uint64_t z = 0; z < (std::uint64_t{1} << nb); ++z) sum += (std::popcount(z & u) & 1) ? -1.0 : 1.0;
      rho(x, y) = (phase ? -1.0 : 1.0) * scale * sum;
    }
  }
  return DensityMatrix(std::move(rho), 1e-10);
}

/// Balanced bipartitions of 2m vertices with vertex 0 on the white side,
/// as white-vertex bitmasks; C(2m, m)/2 of them.
inline std::vector<std::uint64_t> balanced_white_sets(int v) {
  if (v % 2 != 0 || v < 2) throw InvalidInput("balanced bipartitions need an even vertex count >= 2");
  if (v > 30) throw CapacityError("too many vertices for bipartition enumeration");
  const int m = v / 2;
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << v); ++s)
    if ((s & 1) && std::popcount(s) == m) out.push_back(s);
  return out;
}

inline bool is_maximally_uniform(const std::vector<std::uint64_t>& adj, int v,
                                 const std::vector<std::uint64_t>& white_sets) {
  const int m = v / 2;
  std::vector<std::uint64_t> rows;
  rows.reserve(m);
  for (std::uint64_t w : white_sets) {
    rows.clear();
    for (int b = 0; b < v; ++b)
      if (!((w >> b) & 1)) rows.push_back(adj[b] & w);
    if (gf2_rank(rows) != m) return false;
  }
  return true;
}

/// True iff A^bw is nondegenerate over GF(2) for every balanced bipartition.
inline bool is_maximally_uniform_graph(const GraphSpec& g) {
  if (g.v() % 2 != 0) throw InvalidInput("maximal uniformity needs an even vertex count");
  return is_maximally_uniform(g.rows(), g.v(), balanced_white_sets(g.v()));
}

enum class SearchMode { exhaustive, random };

struct GraphSearchResult {
  std::uint64_t candidate_id;  // edge-subset bitmask over the lexicographic edge list
  GraphSpec graph;
};

inline std::vector<std::pair<int, int>> all_vertex_pairs(int v) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) e.emplace_back(i, j);
  return e;
}

/// Enumerates (exhaustive) or samples (random) graphs on 2m vertices and
/// keeps those that are maximally uniform, in candidate-id order.
inline std::vector<GraphSearchResult> search_maximally_uniform(int m, SearchMode mode, std::uint64_t budget = 0,
                                                               std::uint64_t seed = 1) {
  if (m < 1) throw InvalidInput("m must be >= 1");
  const int v = 2 * m;
  if (mode == SearchMode::exhaustive && v > 8) throw CapacityError("exhaustive search supports 2m <= 8");
  if (v > 30) throw CapacityError("search supports 2m <= 30");
  const auto pairs = all_vertex_pairs(v);
  const auto white_sets = balanced_white_sets(v);

  auto build = [&](std::uint64_t id) {
    std::vector<std::uint64_t> adj(v, 0);
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if ((id >> e) & 1) {
        adj[pairs[e].first] |= std::uint64_t{1} << pairs[e].second;
        adj[pairs[e].second] |= std::uint64_t{1} << pairs[e].first;
      }
    return adj;
  };
  auto passes = [&](const std::vector<std::uint64_t>& adj) {
    // A vertex of degree < m fits in W with all its neighbours, giving a
    // zero column of A^bw.
    for (int i = 0; i < v; ++i)
      if (std::popcount(adj[i]) < m) return false;
    return is_maximally_uniform(adj, v, white_sets);
  };

  std::vector<std::uint64_t> candidates;
  if (mode == SearchMode::random) {
    Rng rng = stream_rng(seed, 0);
    std::uniform_int_distribution<std::uint64_t> bits(0, pairs.size() == 64 ? ~std::uint64_t{0}
                                                                            : (std::uint64_t{1} << pairs.size()) - 1);
    candidates.reserve(budget);
    for (std::uint64_t s = 0; s < budget; ++s) candidates.push_back(bits(rng));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }
  const std::uint64_t total = mode == SearchMode::exhaustive ? (std::uint64_t{1} << pairs.size()) : candidates.size();

  // Chunked so each work unit is large; chunk results concatenate in order.
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
  std::vector<std::vector<GraphSearchResult>> found(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const std::uint64_t id = mode == SearchMode::exhaustive ? i : candidates[i];
      auto adj = build(id);
      if (passes(adj)) found[c].push_back({id, GraphSpec(v, std::move(adj))});
    }
  });
  std::vector<GraphSearchResult> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

/// Vertex relabelling test for small graphs (v <= 8): true iff some
/// permutation maps a onto b.
inline bool isomorphic(const GraphSpec& a, const GraphSpec& b) {
  if (a.v() != b.v() || a.edges().size() != b.edges().size()) return false;
  std::vector<int> perm(a.v());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < a.v() && ok; ++i)
      for (int j = i + 1; j < a.v() && ok; ++j) ok = a.has_edge(i, j) == b.has_edge(perm[i], perm[j]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

enum class Pauli : std::uint8_t { I, X, Y, Z };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

/// Tensor product of single-qubit Paulis with a global phase i^phase.
/// Elements of graph-state stabilizer groups always carry phase 0 or 2.
struct PauliString {
  int phase = 0;  // power of i, mod 4
  std::vector<Pauli> factors;

  int sign() const {
    if (phase % 2 != 0) throw InvalidInput("Pauli string has an imaginary phase");
    return phase == 0 ? 1 : -1;
  }
  int weight() const {
    return static_cast<int>(std::count_if(factors.begin(), factors.end(), [](Pauli p) { return p != Pauli::I; }));
  }
  std::string str() const {
    std::string s = phase == 0 ? "+" : phase == 1 ? "+i" : phase == 2 ? "-" : "-i";
    for (Pauli p : factors) s += pauli_char(p);
    return s;
  }
  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// a * b with phase bookkeeping (XY = iZ, YZ = iX, ZX = iY).
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.factors.size() != b.factors.size()) throw InvalidInput("Pauli strings of different length");
  PauliString out{(a.phase + b.phase) % 4, std::vector<Pauli>(a.factors.size())};
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const int x = static_cast<int>(a.factors[i]), y = static_cast<int>(b.factors[i]);
    if (x == 0 || y == 0 || x == y) {
      out.factors[i] = static_cast<Pauli>(x ^ y ? (x == 0 ? y : x) : 0);
      continue;
    }
    const int z = 6 - x - y;  // the remaining non-identity label
    out.factors[i] = static_cast<Pauli>(z);
    const bool cyclic = (x == 1 && y == 2) || (x == 2 && y == 3) || (x == 3 && y == 1);
    out.phase = (out.phase + (cyclic ? 1 : 3)) % 4;
  }
  return out;
}

/// Generator for vertex i: X on i, Z on each neighbour, sign +1.
inline std::vector<PauliString> stabilizer_generators(const GraphSpec& g) {
  std::vector<PauliString> gens;
  for (int i = 0; i < g.v(); ++i) {
    PauliString s{0, std::vector<Pauli>(g.v(), Pauli::I)};
    s.factors[i] = Pauli::X;
    for (int j = 0; j < g.v(); ++j)
      if (g.has_edge(i, j)) s.factors[j] = Pauli::Z;
    gens.push_back(std::move(s));
  }
  return gens;
}

inline MatrixXcd pauli_matrix(Pauli p) {
  MatrixXcd m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// s|psi> for a qubit state.
inline VectorXcd apply_pauli(const PauliString& s, const PureState& psi) {
  if (psi.d() != 2 || static_cast<int>(s.factors.size()) != psi.n())
    throw InvalidInput("Pauli string does not match the qubit state");
  VectorXcd v = psi.amp();
  for (int i = 0; i < psi.n(); ++i)
    if (s.factors[i] != Pauli::I) v = apply_local(v, psi.n(), 2, i, pauli_matrix(s.factors[i]));
  static const cplx phases[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  return phases[s.phase] * v;
}

struct StabilizerWeight {
  int weight;
  std::uint64_t generator_subset;  // bit i set iff generator i is in the product
};

/// Minimum support over the 2^v - 1 nontrivial products of the graph-state
/// generators. Only the X/Z support pattern matters for the weight.
inline StabilizerWeight min_stabilizer_weight_witness(const GraphSpec& g) {
  if (g.v() > 24) throw CapacityError("stabilizer enumeration supports v <= 24");
  if (g.v() == 0) throw InvalidInput("graph has no vertices");
  StabilizerWeight best{g.v() + 1, 0};
  std::uint64_t z = 0;
  const std::uint64_t total = std::uint64_t{1} << g.v();
  for (std::uint64_t k = 1; k < total; ++k) {
    // Gray code: one generator toggles per step.
    const int flip = std::countr_zero(k);
    z ^= g.row(flip);
    const std::uint64_t x = k ^ (k >> 1);
    const int w = std::popcount(x | z);
    if (w < best.weight) best = {w, x};
  }
  return best;
}

inline int min_stabilizer_weight(const GraphSpec& g) { return min_stabilizer_weight_witness(g).weight; }

}  // namespace mpent
