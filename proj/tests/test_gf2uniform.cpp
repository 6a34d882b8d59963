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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mpent/gf2uniform.hpp"
#include "mpent/random.hpp"

using namespace mpent;

namespace {

BitDistribution random_distribution(int n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(std::size_t{1} << n);
  double s = 0.0;
  for (double& x : p) s += (x = e(rng));
  for (double& x : p) x /= s;
  return BitDistribution(n, p);
}

std::vector<double> direct_fourier(const BitDistribution& d) {
  std::vector<double> q(d.p().size(), 0.0);
  for (std::size_t y = 0; y < q.size(); ++y)
    for (std::size_t x = 0; x < q.size(); ++x) q[y] += (std::popcount(x & y) % 2 ? -1.0 : 1.0) * d[x];
  return q;
}

GraphSpec random_graph(int v, Rng& rng, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<int, int>> e;
  for (auto [a, b] : all_vertex_pairs(v))
    if (coin(rng)) e.emplace_back(a, b);
  return GraphSpec::from_edges(v, e);
}

MatrixXcd dense_pauli(const PauliString& s) {
  MatrixXcd m = MatrixXcd::Identity(1, 1);
  for (Pauli p : s.factors) {
    const MatrixXcd f = pauli_matrix(p);
    MatrixXcd k(m.rows() * 2, m.cols() * 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) k.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = m * f(a, b);
    m = k;
  }
  static const cplx phases[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  return phases[s.phase] * m;
}

BitDistribution hexacode_best() { return {6, outcome_distribution(hexacode_state(), hexacode_reference_basis())}; }

}  // namespace

TEST(BitDistribution, Validation) {
  EXPECT_THROW(BitDistribution(2, {0.5, 0.5}), InvalidInput);
  EXPECT_THROW(BitDistribution(1, {1.5, -0.5}), InvalidInput);
  EXPECT_THROW(BitDistribution(1, {0.5, 0.6}), InvalidInput);
  EXPECT_DOUBLE_EQ(BitDistribution(1, {0.5, 0.5}).entropy(), 1.0);
}

TEST(Fourier, Examples) {
  auto q = fourier(BitDistribution(3, std::vector<double>(8, 0.125)));
  EXPECT_NEAR(q[0], 1.0, 1e-15);
  for (int y = 1; y < 8; ++y) EXPECT_NEAR(q[y], 0.0, 1e-15);

  std::vector<double> point(16, 0.0);
  point[0] = 1.0;
  for (double v : fourier(BitDistribution(4, point))) EXPECT_NEAR(v, 1.0, 1e-15);

  auto qb = fourier(hexacode_best());
  for (std::uint64_t y = 1; y < 64; ++y)
    if (weight(y) <= 3) EXPECT_NEAR(qb[y], 0.0, 1e-12) << y;
}

TEST(Fourier, MatchesDirectSumAndRoundTrips) {
  for (int n = 1; n <= 12; ++n) {
    Rng rng = stream_rng(100, n);
    BitDistribution d = random_distribution(n, rng);
    auto q = fourier(d);
    EXPECT_NEAR(q[0], 1.0, 1e-12);
    if (n <= 8) {
      auto direct = direct_fourier(d);
      for (std::size_t y = 0; y < q.size(); ++y) EXPECT_NEAR(q[y], direct[y], 1e-12);
    }
    auto back = inverse_fourier(q);
    for (std::size_t x = 0; x < back.size(); ++x) EXPECT_NEAR(back[x], d[x], 1e-12);
  }
}

TEST(Uniformity, Examples) {
  BitDistribution best = hexacode_best();
  EXPECT_TRUE(is_k_uniform(best, 3));
  EXPECT_FALSE(is_k_uniform(best, 4));
  EXPECT_TRUE(is_k_uniform_marginal(best, 3));
  EXPECT_FALSE(is_k_uniform_marginal(best, 4));
  std::vector<double> point(8, 0.0);
  point[5] = 1.0;
  EXPECT_FALSE(is_k_uniform(BitDistribution(3, point), 1));
  EXPECT_TRUE(is_k_uniform(BitDistribution(3, point), 0));
}

TEST(Uniformity, MarginalAndFourierFormsAgree) {
  int agreed_true = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = stream_rng(7, trial);
    const int n = 3 + trial % 4;
    std::vector<double> p(std::size_t{1} << n, 0.0);
    // Mix uniform-on-a-parity-class distributions so some trials are k-uniform.
    std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << n) - 1);
    const std::uint64_t y = pick(rng);
    for (std::size_t x = 0; x < p.size(); ++x) p[x] = std::popcount(x & y) % 2 ? 0.0 : 2.0 / p.size();
    BitDistribution d = trial % 3 ? BitDistribution(n, p) : random_distribution(n, rng);
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(is_k_uniform(d, k), is_k_uniform_marginal(d, k)) << trial << " k=" << k;
      agreed_true += is_k_uniform(d, k) && k > 0;
    }
  }
  EXPECT_GT(agreed_true, 0);
}

TEST(Uniformity, DropBitMarginal) {
  BitDistribution best = hexacode_best();
  BitDistribution five = drop_bit(best, 5);
  EXPECT_EQ(five.n(), 5);
  EXPECT_TRUE(is_k_uniform(five, 3));
  EXPECT_LE(five.entropy(), best.entropy() + 1e-12);
}

TEST(Gf2Rank, Examples) {
  EXPECT_EQ(gf2_rank(Gf2Matrix::identity(3)), 3);
  EXPECT_EQ(gf2_rank(Gf2Matrix{3, 3, {0b111, 0b111, 0b111}}), 1);
  EXPECT_EQ(gf2_rank(Gf2Matrix{3, 3, {0b011, 0b110, 0b101}}), 2);
  EXPECT_EQ(gf2_rank(Gf2Matrix::zeros(4, 4)), 0);
}

TEST(Blocks, Examples) {
  BipartitionBlocks h = bipartition_blocks(hexacode_graph(), {0, 1, 2});
  EXPECT_EQ(h.ww, (Gf2Matrix{3, 3, {0b110, 0b101, 0b011}}));
  EXPECT_EQ(h.bw, Gf2Matrix::identity(3));

  BipartitionBlocks e = bipartition_blocks(GraphSpec(4), {1, 3});
  EXPECT_EQ(e.ww, Gf2Matrix::zeros(2, 2));
  EXPECT_EQ(e.bw, Gf2Matrix::zeros(2, 2));

  BipartitionBlocks s = bipartition_blocks(GraphSpec::from_edges(2, {{0, 1}}), {0});
  EXPECT_EQ(s.bw, (Gf2Matrix{1, 1, {1}}));
  EXPECT_THROW(bipartition_blocks(hexacode_graph(), {}), InvalidInput);
  EXPECT_THROW(bipartition_blocks(hexacode_graph(), {0, 1, 2, 3, 4, 5}), InvalidInput);
}

TEST(GraphDensity, Examples) {
  const GraphSpec hex = hexacode_graph();
  for (std::vector<int> w : {std::vector<int>{0, 1, 2}, {0, 2, 4}, {3, 4, 5}})
    EXPECT_LT((graph_reduced_density(hex, w).mat() - MatrixXcd::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff(), 1e-12);
  DensityMatrix plus = graph_reduced_density(GraphSpec(3), {0, 2});
  EXPECT_LT((plus.mat() - MatrixXcd::Constant(4, 4, 0.25)).cwiseAbs().maxCoeff(), 1e-15);
  DensityMatrix edge = graph_reduced_density(GraphSpec::from_edges(2, {{0, 1}}), {0});
  EXPECT_LT((edge.mat() - MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GraphDensity, MatchesPartialTraceUpToTenVertices) {
  for (int v = 2; v <= 10; ++v) {
    Rng rng = stream_rng(55, v);
    const GraphSpec g = random_graph(v, rng);
    const PureState psi = graph_state(g);
    std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << v) - 2);
    const int subsets = v <= 6 ? (1 << v) - 2 : 40;
    for (int t = 0; t < subsets; ++t) {
      const std::uint64_t mask = v <= 6 ? static_cast<std::uint64_t>(t + 1) : pick(rng);
      std::vector<int> w;
      for (int i = 0; i < v; ++i)
        if ((mask >> i) & 1) w.push_back(i);
      EXPECT_LT((graph_reduced_density(g, w).mat() - partial_trace(psi, w).mat()).cwiseAbs().maxCoeff(), 1e-10)
          << "v=" << v << " mask=" << mask;
    }
  }
}

TEST(MaximalUniformity, Examples) {
  EXPECT_TRUE(is_maximally_uniform_graph(hexacode_graph()));
  EXPECT_TRUE(is_maximally_uniform_graph(GraphSpec::from_edges(2, {{0, 1}})));
  EXPECT_FALSE(is_maximally_uniform_graph(GraphSpec(4)));
  EXPECT_THROW(is_maximally_uniform_graph(GraphSpec(3)), InvalidInput);
  EXPECT_EQ(balanced_white_sets(6).size(), 10u);
  for (std::uint64_t w : balanced_white_sets(6)) EXPECT_TRUE(w & 1);
}

TEST(MaximalUniformity, AgreesWithRankOverAllBipartitions) {
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng = stream_rng(77, trial);
    const int v = 2 * (1 + trial % 3);
    const GraphSpec g = random_graph(v, rng, 0.6);
    bool all = true;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << v); ++mask) {
      if (std::popcount(mask) != v / 2) continue;
      std::vector<int> w;
      for (int i = 0; i < v; ++i)
        if ((mask >> i) & 1) w.push_back(i);
      all = all && gf2_rank(bipartition_blocks(g, w).bw) == v / 2;
    }
    EXPECT_EQ(is_maximally_uniform_graph(g), all) << trial;
  }
}

TEST(GraphSearch, SmallCases) {
  auto m1 = search_maximally_uniform(1, SearchMode::exhaustive);
  ASSERT_EQ(m1.size(), 1u);
  EXPECT_EQ(m1[0].graph, GraphSpec::from_edges(2, {{0, 1}}));
  EXPECT_TRUE(search_maximally_uniform(2, SearchMode::exhaustive).empty());

  auto m3 = search_maximally_uniform(3, SearchMode::exhaustive);
  ASSERT_FALSE(m3.empty());
  bool prism = false;
  for (const auto& r : m3) {
    EXPECT_TRUE(is_maximally_uniform_graph(r.graph));
    EXPECT_GE(min_stabilizer_weight(r.graph), 4);
    prism = prism || isomorphic(r.graph, hexacode_graph());
  }
  EXPECT_TRUE(prism);
  for (std::size_t i = 1; i < m3.size(); ++i) EXPECT_LT(m3[i - 1].candidate_id, m3[i].candidate_id);

  EXPECT_THROW(search_maximally_uniform(5, SearchMode::exhaustive), CapacityError);
}

TEST(GraphSearch, RandomModeFindsOnlyPassingGraphs) {
  auto found = search_maximally_uniform(3, SearchMode::random, 5000, 3);
  EXPECT_FALSE(found.empty());
  for (const auto& r : found) EXPECT_TRUE(is_maximally_uniform_graph(r.graph));
  auto again = search_maximally_uniform(3, SearchMode::random, 5000, 3);
  ASSERT_EQ(found.size(), again.size());
  for (std::size_t i = 0; i < found.size(); ++i) EXPECT_EQ(found[i].candidate_id, again[i].candidate_id);
}

TEST(Pauli, ProductMatchesMatrices) {
  const Pauli all[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  for (Pauli a : all)
    for (Pauli b : all) {
      PauliString pa{0, {a}}, pb{0, {b}};
      EXPECT_LT((dense_pauli(pa * pb) - pauli_matrix(a) * pauli_matrix(b)).cwiseAbs().maxCoeff(), 1e-15);
    }
  PauliString s{2, {Pauli::X, Pauli::Z}};
  EXPECT_EQ(s.str(), "-XZ");
  EXPECT_EQ(s.sign(), -1);
  EXPECT_EQ(s.weight(), 2);
  EXPECT_THROW((PauliString{1, {Pauli::X}}.sign()), InvalidInput);
}

TEST(Stabilizers, Examples) {
  auto edge = stabilizer_generators(GraphSpec::from_edges(2, {{0, 1}}));
  ASSERT_EQ(edge.size(), 2u);
  EXPECT_EQ(edge[0].str(), "+XZ");
  EXPECT_EQ(edge[1].str(), "+ZX");
  EXPECT_EQ(stabilizer_generators(hexacode_graph())[0].str(), "+XZZZII");
  for (const auto& s : stabilizer_generators(GraphSpec(3))) EXPECT_EQ(s.weight(), 1);

  EXPECT_EQ(min_stabilizer_weight(hexacode_graph()), 4);
  EXPECT_EQ(min_stabilizer_weight(GraphSpec::from_edges(2, {{0, 1}})), 2);
  EXPECT_EQ(min_stabilizer_weight(GraphSpec(3)), 1);
  EXPECT_THROW(min_stabilizer_weight(GraphSpec(25)), CapacityError);
}

TEST(Stabilizers, WeightMatchesExplicitGroup) {
  for (int trial = 0; trial < 15; ++trial) {
    Rng rng = stream_rng(99, trial);
    const GraphSpec g = random_graph(2 + trial % 6, rng);
    const auto gens = stabilizer_generators(g);
    const PureState psi = graph_state(g);
    int best = g.v() + 1;
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << g.v()); ++k) {
      PauliString s{0, std::vector<Pauli>(g.v(), Pauli::I)};
      for (int i = 0; i < g.v(); ++i)
        if ((k >> i) & 1) s = s * gens[i];
      EXPECT_EQ(s.phase % 2, 0);
      EXPECT_LT((apply_pauli(s, psi) - psi.amp()).norm(), 1e-10);
      best = std::min(best, s.weight());
    }
    const StabilizerWeight w = min_stabilizer_weight_witness(g);
    EXPECT_EQ(w.weight, best);
    PauliString wit{0, std::vector<Pauli>(g.v(), Pauli::I)};
    for (int i = 0; i < g.v(); ++i)
      if ((w.generator_subset >> i) & 1) wit = wit * gens[i];
    EXPECT_EQ(wit.weight(), best);
  }
}

TEST(Stabilizers, MaximallyUniformImpliesWeightAboveHalf) {
  for (const auto& r : search_maximally_uniform(3, SearchMode::exhaustive)) EXPECT_GE(min_stabilizer_weight(r.graph), 4);
  EXPECT_GE(min_stabilizer_weight(GraphSpec::from_edges(2, {{0, 1}})), 2);
}

TEST(Uniformity, HexacodeAnyBasisIsThreeUniform) {
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = stream_rng(123, trial);
    BitDistribution d(6, outcome_distribution(hexacode_state(), random_product_basis(6, 2, rng)), 1e-9);
    EXPECT_TRUE(is_k_uniform(d, 3, 1e-9));
    EXPECT_TRUE(is_k_uniform_marginal(d, 3, 1e-9));
  }
}
