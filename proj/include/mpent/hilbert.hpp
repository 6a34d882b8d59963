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

// Dense states of n parties with local dimension d, and the handful of
// linear-algebra operations the rest of the library is built on.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpent/common.hpp"

namespace mpent {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

/// Normalized amplitude vector in the standard product basis.
class PureState {
 public:
  PureState(int n, int d, VectorXcd amp, double tol = 1e-12) : n_(n), d_(d), amp_(std::move(amp)) {
    check_capacity(n, d);
    if (static_cast<std::uint64_t>(amp_.size()) != ipow(d, n))
      throw InvalidInput("amplitude vector length " + std::to_string(amp_.size()) + " != d^n");
    double norm2 = amp_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol)
      throw InvalidInput("state is not normalized: |psi|^2 = " + std::to_string(norm2));
  }

  /// Rescales amp to unit norm before validating.
  static PureState normalized(int n, int d, VectorXcd amp) {
    double nrm = amp.norm();
    if (nrm == 0.0) throw InvalidInput("zero vector cannot be normalized");
    amp /= nrm;
    return PureState(n, d, std::move(amp));
  }

  int n() const { return n_; }
  int d() const { return d_; }
  const VectorXcd& amp() const { return amp_; }
  std::uint64_t size() const { return static_cast<std::uint64_t>(amp_.size()); }
  Indexer indexer() const { return {n_, d_}; }

 private:
  int n_;
  int d_;
  VectorXcd amp_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(MatrixXcd mat, double tol = 1e-12) : mat_(std::move(mat)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() == 0) throw InvalidInput("density matrix must be square");
    if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw InvalidInput("density matrix is not Hermitian");
    if (std::abs(mat_.trace() - cplx(1.0)) > tol) throw InvalidInput("density matrix trace != 1");
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const MatrixXcd& mat() const { return mat_; }

 private:
  MatrixXcd mat_;
};

/// One orthonormal basis per party; column j of u[i] is basis vector j of party i.
class ProductBasis {
 public:
  ProductBasis(int n, int d, std::vector<MatrixXcd> u, double tol = 1e-10) : n_(n), d_(d), u_(std::move(u)) {
    if (static_cast<int>(u_.size()) != n) throw InvalidInput("product basis needs one matrix per party");
    for (const auto& m : u_) {
      if (m.rows() != d || m.cols() != d) throw InvalidInput("local basis must be d x d");
      MatrixXcd gram = m.adjoint() * m;
      if ((gram - MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
        throw InvalidInput("local basis is not orthonormal");
    }
  }

  static ProductBasis standard(int n, int d) {
    return ProductBasis(n, d, std::vector<MatrixXcd>(n, MatrixXcd::Identity(d, d)));
  }

  int n() const { return n_; }
  int d() const { return d_; }
  const MatrixXcd& operator[](int party) const { return u_[party]; }
  const std::vector<MatrixXcd>& locals() const { return u_; }

 private:
  int n_;
  int d_;
  std::vector<MatrixXcd> u_;
};

struct SchmidtData {
  std::vector<double> coeffs;  // descending, sums to 1
  MatrixXcd left_basis;
  MatrixXcd right_basis;
};

/// Applies the d x d matrix m to one party of a flat vector.
inline VectorXcd apply_local(const VectorXcd& v, int n, int d, int party, const MatrixXcd& m) {
  const Indexer idx{n, d};
  const std::uint64_t stride = idx.stride(party);
  const std::uint64_t block = stride * d;
  VectorXcd out(v.size());
  std::vector<cplx> in(d);
  for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(v.size()); base += block) {
    for (std::uint64_t inner = 0; inner < stride; ++inner) {
      const std::uint64_t off = base + inner;
      for (int a = 0; a < d; ++a) in[a] = v[off + a * stride];
      for (int r = 0; r < d; ++r) {
        cplx acc = 0.0;
        for (int a = 0; a < d; ++a) acc += m(r, a) * in[a];
        out[off + r * stride] = acc;
      }
    }
  }
  return out;
}

/// (m_0 (x) m_1 (x) ... ) psi.
inline PureState apply_product(const PureState& psi, const std::vector<MatrixXcd>& ops) {
  if (static_cast<int>(ops.size()) != psi.n()) throw InvalidInput("need one operator per party");
  VectorXcd v = psi.amp();
  for (int i = 0; i < psi.n(); ++i) v = apply_local(v, psi.n(), psi.d(), i, ops[i]);
  return PureState(psi.n(), psi.d(), std::move(v), 1e-9);
}

inline void check_same_shape(const PureState& psi, const ProductBasis& b) {
  if (psi.n() != b.n() || psi.d() != b.d())
    throw InvalidInput("state and basis disagree on (n, d): (" + std::to_string(psi.n()) + "," +
                       std::to_string(psi.d()) + ") vs (" + std::to_string(b.n()) + "," +
                       std::to_string(b.d()) + ")");
}

/// Amplitudes <B(j)|psi>, one party at a time.
inline VectorXcd basis_amplitudes(const PureState& psi, const ProductBasis& b) {
  check_same_shape(psi, b);
  VectorXcd v = psi.amp();
  for (int i = 0; i < psi.n(); ++i) v = apply_local(v, psi.n(), psi.d(), i, b[i].adjoint());
  return v;
}

/// p(j) = |<psi|B_1(j_1),...,B_n(j_n)>|^2.
inline std::vector<double> outcome_distribution(const PureState& psi, const ProductBasis& b) {
  VectorXcd v = basis_amplitudes(psi, b);
  std::vector<double> p(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) p[k] = std::norm(v[k]);
  return p;
}

/// -sum p log2 p in bits, 0 log 0 = 0. Tiny negatives are clamped.
inline double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (x < -1e-12) throw InvalidInput("negative probability " + std::to_string(x));
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("distribution sums to " + std::to_string(total));
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

inline double shannon_entropy(const std::vector<double>& p) { return shannon_entropy(std::span<const double>(p)); }

inline std::vector<int> complement(int n, const std::vector<int>& parties) {
  std::vector<bool> in(n, false);
  for (int p : parties) in[p] = true;
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

inline std::vector<int> validate_subset(int n, std::vector<int> parties) {
  std::sort(parties.begin(), parties.end());
  if (parties.empty()) throw InvalidInput("party subset is empty");
  if (std::adjacent_find(parties.begin(), parties.end()) != parties.end())
    throw InvalidInput("party subset has duplicates");
  if (parties.front() < 0 || parties.back() >= n) throw InvalidInput("party index out of range");
  if (static_cast<int>(parties.size()) == n) throw InvalidInput("party subset must be proper");
  return parties;
}

/// Reshapes psi into a (kept x traced) matrix, both sides in ascending party order.
inline MatrixXcd bipartite_matrix(const PureState& psi, const std::vector<int>& keep) {
  const int n = psi.n();
  const int d = psi.d();
  const std::vector<int> traced = complement(n, keep);
  const Indexer idx{n, d};
  const auto rows = ipow(d, static_cast<int>(keep.size()));
  const auto cols = ipow(d, static_cast<int>(traced.size()));
  MatrixXcd m(rows, cols);
  for (std::uint64_t x = 0; x < psi.size(); ++x) {
    std::uint64_t r = 0, c = 0;
    for (int p : keep) r = r * d + idx.digit(x, p);
    for (int p : traced) c = c * d + idx.digit(x, p);
    m(r, c) = psi.amp()[x];
  }
  return m;
}

/// rho_keep = tr_{others} |psi><psi|. Party indices are 0-based.
inline DensityMatrix partial_trace(const PureState& psi, std::vector<int> keep) {
  keep = validate_subset(psi.n(), std::move(keep));
  MatrixXcd m = bipartite_matrix(psi, keep);
  MatrixXcd rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho), 1e-10);
}

/// Eigenvalues in ascending order; negatives down to -1e-10 are clamped to 0.
inline std::vector<double> spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.mat(), Eigen::EigenvaluesOnly);
  std::vector<double> ev(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) {
    double l = es.eigenvalues()[i];
    if (l < -1e-10) throw InvalidInput("density matrix has eigenvalue " + std::to_string(l));
    ev[i] = std::clamp(l, 0.0, 1.0);
  }
  return ev;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  double h = 0.0;
  for (double l : spectrum(rho))
    if (l > 0.0) h -= l * std::log2(l);
  return h;
}

/// Schmidt decomposition psi = sum_i sqrt(p_i) |l_i> (x) |r_i>, with |l_i>
/// and |r_i> the columns of left_basis and right_basis.
inline SchmidtData schmidt_decompose(const PureState& psi) {
  if (psi.n() != 2) throw InvalidInput("Schmidt decomposition needs exactly two parties");
  const int d = psi.d();
  MatrixXcd m(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m(a, b) = psi.amp()[a * d + b];
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtData out;
  out.coeffs.resize(d);
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    out.coeffs[i] = svd.singularValues()[i] * svd.singularValues()[i];
    total += out.coeffs[i];
  }
  for (double& c : out.coeffs) c /= total;
  out.left_basis = svd.matrixU();
  out.right_basis = svd.matrixV().conjugate();
  return out;
}

/// |psi> (x) |phi> shared by n + m parties.
inline PureState tensor(const PureState& psi, const PureState& phi) {
  if (psi.d() != phi.d()) throw InvalidInput("tensor product needs equal local dimensions");
  check_capacity(psi.n() + phi.n(), psi.d());
  VectorXcd v(psi.size() * phi.size());
  for (std::uint64_t a = 0; a < psi.size(); ++a)
    for (std::uint64_t b = 0; b < phi.size(); ++b) v[a * phi.size() + b] = psi.amp()[a] * phi.amp()[b];
  return PureState(psi.n() + phi.n(), psi.d(), std::move(v), 1e-10);
}

/// Product state |phi_0> (x) ... from normalized local vectors.
inline PureState product_state(const std::vector<VectorXcd>& factors) {
  if (factors.empty()) throw InvalidInput("product state needs at least one factor");
  const int d = static_cast<int>(factors[0].size());
  const int n = static_cast<int>(factors.size());
  check_capacity(n, d);
  VectorXcd v = VectorXcd::Ones(1);
  for (const auto& f : factors) {
    if (f.size() != d) throw InvalidInput("product factors must share a dimension");
    VectorXcd next(v.size() * d);
    for (Eigen::Index a = 0; a < v.size(); ++a)
      for (int b = 0; b < d; ++b) next[a * d + b] = v[a] * f[b];
    v = std::move(next);
  }
  return PureState::normalized(n, d, std::move(v));
}

/// Zero-pads every local space C^d into C^big_d (first d levels).
inline PureState embed_local_dimension(const PureState& psi, int big_d) {
  if (big_d < psi.d()) throw InvalidInput("embedding dimension must be >= d");
  check_capacity(psi.n(), big_d);
  const Indexer small = psi.indexer();
  const Indexer big{psi.n(), big_d};
  VectorXcd v = VectorXcd::Zero(big.size());
  for (std::uint64_t x = 0; x < psi.size(); ++x) v[big.flat(small.digits(x))] = psi.amp()[x];
  return PureState(psi.n(), big_d, std::move(v), 1e-10);
}

}  // namespace mpent
