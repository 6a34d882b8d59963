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

// Minimization of the outcome entropy S[psi, B_1, ..., B_n] over product
// bases, plus the rigorous and heuristic lower bounds that bracket the
// minimum.
//
// The optimizer alternates over parties. For party i the other bases are
// frozen and the transformed amplitudes are kept as a d x d^(n-1) matrix
// whose row r is the outcome-r slice of party i. A move right-multiplies the
// local basis by exp(i theta G) for an off-diagonal Hermitian generator G;
// such a move mixes only two rows, so the entropy change is evaluated on
// those two rows alone. Diagonal generators only rephase basis columns and
// are skipped.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mpent/hilbert.hpp"
#include "mpent/random.hpp"

namespace mpent {

struct OptConfig {
  int restarts = 20;
  int max_sweeps = 300;
  double tol = 1e-13;        // stop a restart when a sweep improves less than this
  std::uint64_t seed = 1;
  int per_party_steps = 60;  // pattern-search rounds per party visit
  double initial_step = 0.5;
  double min_step = 1e-10;
  bool overlap_bound = false;  // also run max_product_overlap for a lower bound

  void validate() const {
    if (restarts < 1) throw InvalidInput("restarts must be >= 1");
    if (!(tol > 0.0)) throw InvalidInput("tol must be > 0");
    if (max_sweeps < 1 || per_party_steps < 1) throw InvalidInput("sweep and step budgets must be >= 1");
    if (!(initial_step > min_step) || !(min_step > 0.0)) throw InvalidInput("need initial_step > min_step > 0");
  }
};

struct RestartRecord {
  double entropy;
  int sweeps;
  bool converged;
  std::vector<double> sweep_entropies;  // after each full sweep, non-increasing
  ProductBasis basis;
};

struct OptResult {
  double s_upper;
  ProductBasis basis;
  double s_lower;
  std::string lower_bound_witness;
  bool converged;
  int restarts_agreeing;
  std::uint64_t seed;
  int best_restart;
  std::vector<RestartRecord> restarts;

  double width() const { return s_upper - s_lower; }
};

inline double entropy_for_bases(const PureState& psi, const ProductBasis& b) {
  return shannon_entropy(outcome_distribution(psi, b));
}

namespace detail {

inline double xlog(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

/// Mutable state of one restart.
class AlternatingSearch {
 public:
  AlternatingSearch(const PureState& psi, std::vector<MatrixXcd> start, const OptConfig& cfg)
      : psi_(psi), n_(psi.n()), d_(psi.d()), u_(std::move(start)), cfg_(cfg), steps_(psi.n(), cfg.initial_step) {}

  double current_entropy() const {
    return shannon_entropy(outcome_distribution(psi_, ProductBasis(n_, d_, u_, 1e-8)));
  }

  RestartRecord run() {
    RestartRecord rec{current_entropy(), 0, false, {}, ProductBasis::standard(n_, d_)};
    double prev = rec.entropy;
    for (int sweep = 0; sweep < cfg_.max_sweeps; ++sweep) {
      const std::vector<MatrixXcd> before = u_;
      for (int i = 0; i < n_; ++i) optimize_party(i);
      double now = current_entropy();
      now = extrapolate(before, now);
      rec.sweep_entropies.push_back(now);
      rec.sweeps = sweep + 1;
      if (prev - now < cfg_.tol) {
        rec.converged = true;
        break;
      }
      prev = now;
    }
    reorthonormalize();
    rec.basis = ProductBasis(n_, d_, u_);
    rec.entropy = current_entropy();
    return rec;
  }

 private:
  /// Rows of the party-i slice matrix after applying the current bases.
  MatrixXcd party_slices(int party) const {
    VectorXcd v = psi_.amp();
    for (int k = 0; k < n_; ++k) v = apply_local(v, n_, d_, k, u_[k].adjoint());
    const Indexer idx{n_, d_};
    const std::uint64_t stride = idx.stride(party);
    const std::uint64_t cols = psi_.size() / d_;
    MatrixXcd m(d_, cols);
    std::uint64_t c = 0;
    for (std::uint64_t base = 0; base < psi_.size(); base += stride * d_)
      for (std::uint64_t inner = 0; inner < stride; ++inner, ++c)
        for (int r = 0; r < d_; ++r) m(r, c) = v[base + inner + r * stride];
    return m;
  }

  // Rotation in the (a, b) plane: kind 0 is exp(i theta S_ab) with S the
  // real symmetric generator, kind 1 is exp(i theta A_ab) with A the
  // imaginary antisymmetric one. Returned as the 2x2 block acting on
  // basis columns a and b.
  static Eigen::Matrix2cd rotation(int kind, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix2cd e;
    if (kind == 0)
      e << c, cplx(0, s), cplx(0, s), c;
    else
      e << c, s, -s, c;
    return e;
  }

  void optimize_party(int party) {
    MatrixXcd slices = party_slices(party);
    const Eigen::Index cols = slices.cols();
    MatrixXcd& u = u_[party];
    double h = std::min(cfg_.initial_step, steps_[party] * 8.0);
    Eigen::VectorXcd ra(cols), rb(cols);
    for (int round = 0; round < cfg_.per_party_steps && h >= cfg_.min_step; ++round) {
      bool improved = false;
      for (int a = 0; a < d_; ++a)
        for (int b = a + 1; b < d_; ++b)
          for (int kind = 0; kind < 2; ++kind)
            for (double theta : {h, -h}) {
              // New basis U E has slices E^dagger (U^dagger psi) on rows a, b.
              const Eigen::Matrix2cd e = rotation(kind, theta);
              const Eigen::Matrix2cd ed = e.adjoint();
              double delta = 0.0;
              for (Eigen::Index c = 0; c < cols; ++c) {
                const cplx xa = slices(a, c), xb = slices(b, c);
                ra[c] = ed(0, 0) * xa + ed(0, 1) * xb;
                rb[c] = ed(1, 0) * xa + ed(1, 1) * xb;
                delta += xlog(std::norm(ra[c])) + xlog(std::norm(rb[c])) - xlog(std::norm(xa)) - xlog(std::norm(xb));
              }
              if (delta < -1e-15) {
                slices.row(a) = ra.transpose();
                slices.row(b) = rb.transpose();
                const Eigen::VectorXcd ca = u.col(a), cb = u.col(b);
                u.col(a) = e(0, 0) * ca + e(1, 0) * cb;
                u.col(b) = e(0, 1) * ca + e(1, 1) * cb;
                improved = true;
                break;  // retry the same plane with the opposite sign next round
              }
            }
      h = improved ? std::min(h * 2.0, cfg_.initial_step) : h * 0.5;
    }
    steps_[party] = h;
  }

  /// Pattern move: with D_i = B_i^dagger U_i the change made by the last
  /// sweep, try U_i D_i^alpha for growing alpha and keep the best.
  double extrapolate(const std::vector<MatrixXcd>& before, double current) {
    std::vector<Eigen::ComplexSchur<MatrixXcd>> schur;
    for (int i = 0; i < n_; ++i) schur.emplace_back(before[i].adjoint() * u_[i]);
    const std::vector<MatrixXcd> base = u_;
    auto power = [&](int i, double alpha) {
      const auto& s = schur[i];
      Eigen::VectorXcd ev(d_);
      for (int k = 0; k < d_; ++k) {
        const cplx t = s.matrixT()(k, k);
        ev[k] = std::polar(1.0, alpha * std::arg(t));
      }
      return MatrixXcd(s.matrixU() * ev.asDiagonal() * s.matrixU().adjoint());
    };
    double best = current;
    std::vector<MatrixXcd> best_u = u_;
    for (double alpha = 1.0; alpha <= 64.0; alpha *= 2.0) {
      for (int i = 0; i < n_; ++i) u_[i] = base[i] * power(i, alpha);
      const double e = current_entropy();
      if (e < best - 1e-15) {
        best = e;
        best_u = u_;
      } else {
        break;
      }
    }
    u_ = best_u;
    return best;
  }

  void reorthonormalize() {
    for (auto& u : u_) {
      Eigen::HouseholderQR<MatrixXcd> qr(u);
      MatrixXcd q = qr.householderQ();
      MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int i = 0; i < d_; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
      u = q;
    }
  }

  const PureState& psi_;
  int n_;
  int d_;
  std::vector<MatrixXcd> u_;
  OptConfig cfg_;
  std::vector<double> steps_;
};

}  // namespace detail

/// Phase and column-order normal form of a witness basis: every column has
/// its largest-magnitude component real positive, and columns are sorted by
/// the position of that component (then by its magnitude, descending).
inline ProductBasis canonicalize(const ProductBasis& b) {
  std::vector<MatrixXcd> out;
  for (const MatrixXcd& u : b.locals()) {
    const int d = static_cast<int>(u.rows());
    std::vector<std::pair<std::pair<int, double>, int>> keys;
    MatrixXcd fixed = u;
    for (int c = 0; c < d; ++c) {
      Eigen::Index arg = 0;
      fixed.col(c).cwiseAbs().maxCoeff(&arg);
      const cplx z = fixed(arg, c);
      fixed.col(c) *= std::conj(z) / std::abs(z);
      fixed(arg, c) = std::abs(z);
      keys.push_back({{static_cast<int>(arg), -std::abs(z)}, c});
    }
    std::stable_sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    MatrixXcd sorted(d, d);
    for (int c = 0; c < d; ++c) sorted.col(c) = fixed.col(keys[c].second);
    out.push_back(std::move(sorted));
  }
  return ProductBasis(b.n(), b.d(), std::move(out));
}

/// Lower bound -tr(rho_x log2 rho_x) for a proper nonempty party subset x.
inline double subset_lower_bound(const PureState& psi, std::vector<int> x) {
  return von_neumann_entropy(partial_trace(psi, std::move(x)));
}

struct SubsetBound {
  double value;
  std::vector<int> witness;  // 0-based parties
};

/// Maximizes subset_lower_bound over all subsets of size <= n/2. Ties keep
/// the first subset in (size, lexicographic) order.
inline SubsetBound best_subset_lower_bound(const PureState& psi) {
  const int n = psi.n();
  SubsetBound best{0.0, {}};
  if (n < 2) return best;
  if (n > 24) throw CapacityError("too many parties for subset enumeration");
  for (int k = 1; k <= n / 2; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<int> x;
      for (int i = 0; i < n; ++i)
        if (pick[i]) x.push_back(i);
      const double v = subset_lower_bound(psi, x);
      if (best.witness.empty() || v > best.value + 1e-12) best = {v, x};
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return best;
}

struct OverlapResult {
  double value;  // max |<phi_1 ... phi_n|psi>|^2 found
  std::vector<VectorXcd> factors;
  int restart;
};

/// Alternating maximization of |<phi_1,...,phi_n|psi>|^2 over unit vectors.
/// With all but phi_i fixed the optimum is the normalized partial contraction,
/// so each update is exact and the value never decreases. Restart 0 starts
/// at the largest-amplitude standard basis state; others are Haar random.
inline OverlapResult max_product_overlap(const PureState& psi, const OptConfig& cfg) {
  cfg.validate();
  const int n = psi.n(), d = psi.d();
  const Indexer idx = psi.indexer();
  std::vector<OverlapResult> runs(cfg.restarts);
  parallel_for(cfg.restarts, [&](std::size_t r) {
    Rng rng = stream_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL, r);
    std::vector<VectorXcd> phi(n);
    if (r == 0) {
      Eigen::Index arg = 0;
      psi.amp().cwiseAbs().maxCoeff(&arg);
      const auto digits = idx.digits(static_cast<std::uint64_t>(arg));
      for (int i = 0; i < n; ++i) phi[i] = VectorXcd::Unit(d, digits[i]);
    } else {
      for (int i = 0; i < n; ++i) phi[i] = gaussian_matrix(d, 1, rng).col(0).normalized();
    }
    double value = 0.0;
    for (int sweep = 0; sweep < cfg.max_sweeps * 10; ++sweep) {
      double before = value;
      for (int i = 0; i < n; ++i) {
        // Contract psi with conj(phi_k) on every party k != i.
        VectorXcd v = psi.amp();
        for (int k = 0; k < n; ++k) {
          if (k == i) continue;
          MatrixXcd proj = MatrixXcd::Zero(d, d);
          proj.row(0) = phi[k].adjoint();
          v = apply_local(v, n, d, k, proj);
        }
        VectorXcd c(d);
        for (int a = 0; a < d; ++a) {
          std::vector<int> j(n, 0);
          j[i] = a;
          c[a] = v[idx.flat(j)];
        }
        const double nc = c.norm();
        if (nc > 0) phi[i] = c / nc;
        value = nc * nc;
      }
      if (value - before < 1e-16 && sweep > 0) break;
    }
    runs[r] = {value, phi, static_cast<int>(r)};
  });
  OverlapResult best = runs[0];
  for (const auto& run : runs)
    if (run.value > best.value) best = run;
  return best;
}

/// Exact answer for two parties: the Schmidt entropy, attained by the two
/// Schmidt bases.
inline std::pair<double, ProductBasis> bipartite_exact(const PureState& psi) {
  if (psi.n() != 2) throw InvalidInput("bipartite_exact needs exactly two parties");
  SchmidtData s = schmidt_decompose(psi);
  return {shannon_entropy(s.coeffs), ProductBasis(2, psi.d(), {s.left_basis, s.right_basis}, 1e-9)};
}

inline std::string format_subset(const std::vector<int>& x) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i] + 1;
  out << "}";
  return out.str();
}

/// Raises s_lower to an externally established bound (for example the
/// polytope bound for 3-uniform outcome distributions).
inline void add_lower_bound(OptResult& result, double value, const std::string& witness) {
  if (value > result.s_lower) {
    result.s_lower = value;
    result.lower_bound_witness = witness;
  }
}

/// Upper bound by multi-restart alternating search, lower bound by the best
/// subset von Neumann entropy (and the product-overlap bound if requested).
inline OptResult minimize_entropy(const PureState& psi, const OptConfig& cfg) {
  cfg.validate();
  const int n = psi.n(), d = psi.d();
  std::vector<std::optional<RestartRecord>> records(cfg.restarts);
  parallel_for(cfg.restarts, [&](std::size_t r) {
    std::vector<MatrixXcd> start;
    if (r == 0) {
      start.assign(n, MatrixXcd::Identity(d, d));
    } else {
      Rng rng = stream_rng(cfg.seed, r);
      for (int i = 0; i < n; ++i) start.push_back(haar_unitary(d, rng));
    }
    detail::AlternatingSearch search(psi, std::move(start), cfg);
    records[r] = search.run();
  });

  int best = 0;
  for (int r = 1; r < cfg.restarts; ++r)
    if (records[r]->entropy < records[best]->entropy) best = r;

  OptResult out{0.0, ProductBasis::standard(n, d), 0.0, "none", false, 0, cfg.seed, best, {}};
  out.basis = canonicalize(records[best]->basis);
  out.s_upper = entropy_for_bases(psi, out.basis);
  out.converged = records[best]->converged;
  for (auto& rec : records) {
    if (rec->entropy <= records[best]->entropy + 1e-6) ++out.restarts_agreeing;
    out.restarts.push_back(std::move(*rec));
  }

  const SubsetBound sb = best_subset_lower_bound(psi);
  if (!sb.witness.empty()) {
    out.s_lower = sb.value;
    out.lower_bound_witness = "subset " + format_subset(sb.witness);
  }
  if (cfg.overlap_bound) {
    const OverlapResult ov = max_product_overlap(psi, cfg);
    const double bound = -std::log2(ov.value);
    // A heuristic bound above a verified upper bound is refuted; drop it.
    if (bound > out.s_lower && bound <= out.s_upper + 1e-9) {
      std::ostringstream w;
      w.precision(17);
      w << "product-overlap (heuristic) m*=" << ov.value;
      out.s_lower = bound;
      out.lower_bound_witness = w.str();
    }
  }
  return out;
}

/// Entropy of each single party's outcome marginal.
inline std::vector<double> party_marginal_entropies(const std::vector<double>& p, int n, int d) {
  const Indexer idx{n, d};
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    std::vector<double> m(d, 0.0);
    for (std::uint64_t x = 0; x < p.size(); ++x) m[idx.digit(x, i)] += p[x];
    out.push_back(shannon_entropy(m));
  }
  return out;
}

}  // namespace mpent
