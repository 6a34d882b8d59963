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

#include <cmath>
#include <random>

#include "mpent/hilbert.hpp"

namespace mpent {

using Rng = std::mt19937_64;

/// Independent stream for restart `index` of a run seeded with `seed`.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x6d70u};
  return Rng(seq);
}

inline MatrixXcd gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

/// Haar-distributed d x d unitary (QR of a Ginibre matrix with phase fix).
inline MatrixXcd haar_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<MatrixXcd> qr(gaussian_matrix(d, d, rng));
  MatrixXcd q = qr.householderQ();
  MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    cplx diag = r(i, i);
    cplx phase = std::abs(diag) > 0 ? diag / std::abs(diag) : cplx(1.0);
    q.col(i) *= phase;
  }
  return q;
}

/// Haar-random special unitary.
inline MatrixXcd haar_special_unitary(int d, Rng& rng) {
  MatrixXcd u = haar_unitary(d, rng);
  cplx det = u.determinant();
  return u * std::pow(det, -1.0 / d);
}

inline PureState random_state(int n, int d, Rng& rng) {
  check_capacity(n, d);
  return PureState::normalized(n, d, gaussian_matrix(static_cast<int>(ipow(d, n)), 1, rng).col(0));
}

inline ProductBasis random_product_basis(int n, int d, Rng& rng) {
  std::vector<MatrixXcd> u;
  u.reserve(n);
  for (int i = 0; i < n; ++i) u.push_back(haar_unitary(d, rng));
  return ProductBasis(n, d, std::move(u));
}

}  // namespace mpent
