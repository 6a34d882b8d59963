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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpent/gf2uniform.hpp"
#include "mpent/random.hpp"
#include "mpent/states.hpp"

using namespace mpent;

namespace {

int count_nonzero(const PureState& psi) {
  int c = 0;
  for (std::uint64_t k = 0; k < psi.size(); ++k) c += std::abs(psi.amp()[k]) > 1e-14;
  return c;
}

// Inversion-count parity, independent of the cycle-based sign in the library.
int inversion_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST(Ghz, Examples) {
  PureState g = ghz(3, 2);
  EXPECT_NEAR(g.amp()[0].real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(g.amp()[7].real(), M_SQRT1_2, 1e-15);
  EXPECT_EQ(count_nonzero(g), 2);

  EXPECT_EQ(count_nonzero(ghz(4, 3)), 3);
  EXPECT_NEAR(std::abs(ghz(4, 3).amp()[Indexer{4, 3}.flat({2, 2, 2, 2})]), 1 / std::sqrt(3.0), 1e-15);
  SchmidtData s = schmidt_decompose(ghz(2, 2));
  EXPECT_NEAR(s.coeffs[0], 0.5, 1e-12);
  EXPECT_NEAR(s.coeffs[1], 0.5, 1e-12);
}

TEST(Determinant, AmplitudesAreSignedPermutations) {
  for (int n = 2; n <= 5; ++n) {
    PureState det = determinant_state(n);
    EXPECT_EQ(det.d(), n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    int count = 0;
    const double mag = 1.0 / std::sqrt(factorial(n));
    do {
      const cplx a = det.amp()[Indexer{n, n}.flat(perm)];
      EXPECT_NEAR(a.real(), inversion_sign(perm) * mag, 1e-15);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(count_nonzero(det), count);
  }
  EXPECT_EQ(count_nonzero(determinant_state(3)), 6);
  EXPECT_EQ(determinant_state(3).size(), 27u);
}

TEST(Determinant, CapacityRange) {
  EXPECT_THROW(determinant_state(1), CapacityError);
  EXPECT_THROW(determinant_state(8), CapacityError);
}

TEST(Determinant, SwapAntisymmetry) {
  const int n = 4;
  PureState det = determinant_state(n);
  const Indexer idx{n, n};
  for (std::uint64_t x = 0; x < det.size(); ++x) {
    auto digits = idx.digits(x);
    std::swap(digits[1], digits[3]);
    EXPECT_NEAR(std::abs(det.amp()[x] + det.amp()[idx.flat(digits)]), 0.0, 1e-15);
  }
}

TEST(Determinant, SpecialUnitarySinglet) {
  for (int n = 2; n <= 4; ++n) {
    Rng rng = stream_rng(42, n);
    MatrixXcd v = haar_special_unitary(n, rng);
    EXPECT_NEAR(std::abs(v.determinant() - cplx(1.0)), 0.0, 1e-12);
    PureState det = determinant_state(n);
    PureState moved = apply_product(det, std::vector<MatrixXcd>(n, v));
    EXPECT_LT((moved.amp() - det.amp()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Determinant, StandardBasisEntropy) {
  for (int n = 2; n <= 5; ++n)
    EXPECT_NEAR(shannon_entropy(outcome_distribution(determinant_state(n), ProductBasis::standard(n, n))),
                std::log2(factorial(n)), 1e-12);
}

TEST(CodeMap, LexicographicBijection) {
  CodeMap m = CodeMap::lexicographic(2, 3);
  EXPECT_TRUE(m.is_bijection());
  EXPECT_EQ(m.table[5], (std::vector<int>{1, 0, 1}));
  m.table[1] = m.table[0];
  EXPECT_FALSE(m.is_bijection());
}

TEST(GeneralizedDeterminant, Examples) {
  PureState g1 = generalized_determinant(2, 1);
  EXPECT_EQ(g1.n(), 2);
  EXPECT_NEAR(shannon_entropy(outcome_distribution(g1, ProductBasis::standard(2, 2))), 1.0, 1e-12);

  PureState g2 = generalized_determinant(2, 2);
  EXPECT_EQ(g2.n(), 8);
  EXPECT_EQ(count_nonzero(g2), 24);
  EXPECT_NEAR(shannon_entropy(outcome_distribution(g2, ProductBasis::standard(8, 2))), std::log2(24.0), 1e-10);
  EXPECT_THROW(generalized_determinant(2, 3), CapacityError);
}

TEST(GeneralizedDeterminant, DistributionOnlyPath) {
  auto support = generalized_determinant_support(2, 3);
  EXPECT_EQ(support.size(), 40320u);
  std::sort(support.begin(), support.end());
  EXPECT_EQ(std::adjacent_find(support.begin(), support.end()), support.end());
  EXPECT_EQ(gdet_party_count(2, 3), 24);
  EXPECT_EQ(gdet_party_count(3, 2), 18);
}

TEST(GraphState, Examples) {
  PureState e = graph_state(GraphSpec::from_edges(2, {{0, 1}}));
  EXPECT_NEAR(e.amp()[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(e.amp()[1].real(), 0.5, 1e-15);
  EXPECT_NEAR(e.amp()[2].real(), 0.5, 1e-15);
  EXPECT_NEAR(e.amp()[3].real(), -0.5, 1e-15);
  EXPECT_NEAR(schmidt_decompose(e).coeffs[1], 0.5, 1e-12);

  PureState plus = graph_state(GraphSpec(4));
  for (std::uint64_t k = 0; k < 16; ++k) EXPECT_NEAR(plus.amp()[k].real(), 0.25, 1e-15);
  std::vector<MatrixXcd> h(4, hadamard_basis());
  EXPECT_NEAR(shannon_entropy(outcome_distribution(plus, ProductBasis(4, 2, h))), 0.0, 1e-12);
}

TEST(GraphState, StabilizedByGenerators) {
  Rng rng = stream_rng(8, 0);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const int v = 2 + trial % 6;
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : all_vertex_pairs(v))
      if (coin(rng)) e.emplace_back(a, b);
    const GraphSpec g = GraphSpec::from_edges(v, e);
    const PureState psi = graph_state(g);
    for (const auto& s : stabilizer_generators(g)) EXPECT_LT((apply_pauli(s, psi) - psi.amp()).norm(), 1e-12);
  }
}

TEST(GraphSpec, RejectsInvalidAdjacency) {
  EXPECT_THROW(GraphSpec(2, {0b10, 0b00}), InvalidInput);
  EXPECT_THROW(GraphSpec(2, {0b01, 0b00}), InvalidInput);
  EXPECT_THROW(GraphSpec::from_edges(3, {{0, 3}}), InvalidInput);
  EXPECT_THROW(GraphSpec::from_edges(3, {{1, 1}}), InvalidInput);
}

TEST(Hexacode, GraphShape) {
  const GraphSpec g = hexacode_graph();
  EXPECT_EQ(g.v(), 6);
  EXPECT_EQ(g.edges().size(), 9u);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(g.degree(i), 3);
  EXPECT_EQ(gf2_rank(bipartition_blocks(g, {0, 1, 2}).bw), 3);
  EXPECT_TRUE(is_maximally_uniform_graph(g));
  EXPECT_EQ(min_stabilizer_weight(g), 4);
  for (std::uint64_t k = 0; k < 64; ++k) EXPECT_NEAR(std::abs(hexacode_state().amp()[k]), 0.125, 1e-15);
}

TEST(EdgeList, ParseAndFormat) {
  const GraphSpec g = parse_edge_list("# prism\n1 2\n1 3\n2 3\n4 5\n4 6\n5 6\n1 4\n2 5\n3 6\n");
  EXPECT_EQ(g, hexacode_graph());
  EXPECT_EQ(parse_edge_list(format_edge_list(g)), g);

  const GraphSpec iso = parse_edge_list("# vertices 5\n1 2\n");
  EXPECT_EQ(iso.v(), 5);
  EXPECT_EQ(parse_edge_list(format_edge_list(iso)), iso);

  EXPECT_THROW(parse_edge_list("1 1\n"), InvalidInput);
  EXPECT_THROW(parse_edge_list("0 2\n"), InvalidInput);
  EXPECT_THROW(parse_edge_list("1 x\n"), InvalidInput);
  EXPECT_THROW(parse_edge_list("# vertices 2\n1 3\n"), InvalidInput);
}
