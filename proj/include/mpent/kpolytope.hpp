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

// Polytopes P_n^k of k-uniform n-bit distributions in Fourier coordinates,
// vertex enumeration (a closed-form reduction for the p(00000) = 0 face of
// P_5^3 and a brute-force active-set enumerator), and the chain of bounds
// that pins the minimum entropy over P_6^3 at 4 bits.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mpent/gf2uniform.hpp"
#include "mpent/random.hpp"
#include "mpent/states.hpp"

namespace mpent {

/// Free Fourier coordinates of a 3-uniform 5-bit distribution:
/// q = q(11111) and qi[i] = q(11111 with bit i+1 cleared).
struct QPoint53 {
  double q = 0.0;
  std::array<double, 5> qi{};
};

/// p(x) = (1/32) {1 + (-1)^{wt(x)} [q + sum_i q_i (-1)^{x_i}]}.
inline BitDistribution qpoint_to_distribution(const QPoint53& pt) {
  std::vector<double> p(32);
  for (std::uint64_t x = 0; x < 32; ++x) {
    double s = pt.q;
    for (int i = 0; i < 5; ++i) s += ((x >> (4 - i)) & 1) ? -pt.qi[i] : pt.qi[i];
    p[x] = (1.0 + (weight(x) % 2 ? -s : s)) / 32.0;
  }
  for (double v : p)
    if (v < -1e-12) throw InvalidInput("QPoint53 gives negative probability " + std::to_string(v));
  return BitDistribution(5, std::move(p), 1e-12);
}

inline QPoint53 distribution_to_qpoint(const BitDistribution& dist) {
  if (dist.n() != 5) throw InvalidInput("QPoint53 needs a 5-bit distribution");
  const auto q = fourier(dist);
  QPoint53 pt;
  pt.q = q[31];
  for (int i = 0; i < 5; ++i) pt.qi[i] = q[31 ^ (1u << (4 - i))];
  return pt;
}

/// P_n^k, optionally restricted to the face where p(x) = 0 for x in `face`.
/// Free coordinates are q(y) for wt(y) > k; the equalities q(0) = 1 and
/// q(y) = 0 (1 <= wt(y) <= k) are built in.
struct PolytopeSpec {
  int n;
  int k;
  std::vector<std::uint64_t> face;

  std::vector<std::uint64_t> free_coordinates() const {
    std::vector<std::uint64_t> ys;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
      if (weight(y) > k) ys.push_back(y);
    return ys;
  }
};

/// The p(00000) = 0 face of P_5^3.
inline PolytopeSpec p53_face_spec() { return {5, 3, {0}}; }

struct VertexSet {
  std::vector<BitDistribution> vertices;
  int dimension = 0;         // free dimension after eliminating equalities
  std::uint64_t subsets = 0;  // active sets examined
};

namespace detail {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(std::llround(r));
}

inline bool same_distribution(const BitDistribution& a, const BitDistribution& b, double tol) {
  for (std::size_t x = 0; x < a.p().size(); ++x)
    if (std::abs(a[x] - b[x]) > tol) return false;
  return true;
}

inline void push_unique(std::vector<BitDistribution>& list, BitDistribution d, double tol) {
  for (const auto& e : list)
    if (same_distribution(e, d, tol)) return;
  list.push_back(std::move(d));
}

}  // namespace detail

/// Brute-force active-set enumeration: equalities are eliminated first, then
/// every D-subset of the inequalities p(x) >= 0 is solved as an equality
/// system and kept if feasible. Degenerate vertices collapse in the 1e-9
/// dedup.
inline VertexSet enumerate_vertices_generic(const PolytopeSpec& spec) {
  if (spec.n < 1 || spec.n > 6) throw CapacityError("polytope enumeration supports 1 <= n <= 6");
  if (spec.k < 0 || spec.k > spec.n) throw InvalidInput("uniformity order out of range");
  const std::uint64_t size = std::uint64_t{1} << spec.n;
  const auto ys = spec.free_coordinates();
  const int full_dim = static_cast<int>(ys.size());

  // Row x: 2^n p(x) = 1 + a_x . q, so p(x) >= 0 reads a_x . q >= -1.
  auto coeff_row = [&](std::uint64_t x) {
    Eigen::RowVectorXd r(full_dim);
    for (int c = 0; c < full_dim; ++c) r[c] = (weight(x & ys[c]) % 2) ? -1.0 : 1.0;
    return r;
  };

  std::vector<bool> on_face(size, false);
  for (auto x : spec.face) {
    if (x >= size) throw InvalidInput("face index out of range");
    on_face[x] = true;
  }

  // q = origin + basis * t over the face.
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(full_dim);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(full_dim, full_dim);
  if (!spec.face.empty() && full_dim > 0) {
    Eigen::MatrixXd eq(spec.face.size(), full_dim);
    for (std::size_t r = 0; r < spec.face.size(); ++r) eq.row(r) = coeff_row(spec.face[r]);
    Eigen::VectorXd rhs = -Eigen::VectorXd::Ones(spec.face.size());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(eq);
    origin = lu.solve(rhs);
    if ((eq * origin - rhs).cwiseAbs().maxCoeff() > 1e-9) throw InvalidInput("face equalities are inconsistent");
    basis = lu.kernel();
    if (lu.rank() == full_dim) basis = Eigen::MatrixXd(full_dim, 0);
  } else if (!spec.face.empty()) {
    throw InvalidInput("a single-point polytope has no p(x) = 0 face");
  }
  const int dim = static_cast<int>(basis.cols());

  std::vector<std::uint64_t> ineq;
  for (std::uint64_t x = 0; x < size; ++x)
    if (!on_face[x]) ineq.push_back(x);
  const int count = static_cast<int>(ineq.size());
  if (dim > 8) throw CapacityError("free dimension " + std::to_string(dim) + " exceeds 8");
  const std::uint64_t subsets = detail::binomial(count, dim);
  if (subsets > 10'000'000) throw CapacityError("too many active sets: " + std::to_string(subsets));

  // Reduced inequalities: a_red . t >= b_red.
  Eigen::MatrixXd a_red(count, dim);
  Eigen::VectorXd b_red(count);
  for (int r = 0; r < count; ++r) {
    const Eigen::RowVectorXd row = coeff_row(ineq[r]);
    a_red.row(r) = row * basis;
    b_red[r] = -1.0 - (row * origin)(0);
  }

  auto to_distribution = [&](const Eigen::VectorXd& t) -> std::optional<BitDistribution> {
    if (dim > 0 && ((a_red * t - b_red).minCoeff() < -1e-9)) return std::nullopt;
    const Eigen::VectorXd q = origin + basis * t;
    std::vector<double> qq(size, 0.0);
    qq[0] = 1.0;
    for (int c = 0; c < full_dim; ++c) qq[ys[c]] = q[c];
    auto p = inverse_fourier(std::move(qq));
    for (double& v : p) {
      if (v < -1e-9) return std::nullopt;
      v = std::max(v, 0.0);
    }
    return BitDistribution(spec.n, std::move(p), 1e-9);
  };

  VertexSet out;
  out.dimension = dim;
  out.subsets = subsets;
  if (dim == 0) {
    if (auto p = to_distribution(Eigen::VectorXd(0))) out.vertices.push_back(std::move(*p));
    return out;
  }

  // One work unit per leading index; merge in leading-index order.
  std::vector<std::vector<BitDistribution>> found(count);
  parallel_for(count, [&](std::size_t lead) {
    const int rest = dim - 1;
    const int first = static_cast<int>(lead);
    if (count - first - 1 < rest) return;
    std::vector<int> pick(rest);
    for (int i = 0; i < rest; ++i) pick[i] = first + 1 + i;
    Eigen::MatrixXd m(dim, dim);
    Eigen::VectorXd rhs(dim);
    while (true) {
      m.row(0) = a_red.row(first);
      rhs[0] = b_red[first];
      for (int i = 0; i < rest; ++i) {
        m.row(i + 1) = a_red.row(pick[i]);
        rhs[i + 1] = b_red[pick[i]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      lu.setThreshold(1e-10);
      if (lu.isInvertible()) {
        if (auto p = to_distribution(lu.solve(rhs))) detail::push_unique(found[lead], std::move(*p), 1e-9);
      }
      int i = rest - 1;
      while (i >= 0 && pick[i] == count - rest + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < rest; ++j) pick[j] = pick[j - 1] + 1;
    }
  });
  for (auto& list : found)
    for (auto& p : list) detail::push_unique(out.vertices, std::move(p), 1e-9);
  return out;
}

/// Vertices of the p(00000) = 0 face of P_5^3 by the closed-form reduction:
/// the cone Q = {q_i + q_j <= 0} has apex 0 and ten extreme rays (five along
/// -e_i, five along e_i - sum_{j != i} e_j). The face is Q cut by
/// sum q_i >= -1, so its vertices are the apex plus the ray/hyperplane
/// intersections, with q = -1 - sum q_i.
inline std::vector<QPoint53> enumerate_vertices_p53() {
  std::vector<std::array<double, 5>> rays;
  for (int i = 0; i < 5; ++i) {
    std::array<double, 5> r{};
    r[i] = -1.0;
    rays.push_back(r);
  }
  for (int i = 0; i < 5; ++i) {
    std::array<double, 5> r;
    r.fill(-1.0);
    r[i] = 1.0;
    rays.push_back(r);
  }
  // Each ray must lie in Q with four independent active inequalities.
  for (const auto& r : rays) {
    Eigen::MatrixXd active(0, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        const double s = r[i] + r[j];
        if (s > 1e-12) throw std::logic_error("ray leaves the cone Q");
        if (std::abs(s) <= 1e-12) {
          active.conservativeResize(active.rows() + 1, 5);
          active.row(active.rows() - 1).setZero();
          active(active.rows() - 1, i) = active(active.rows() - 1, j) = 1.0;
        }
      }
    if (Eigen::FullPivLU<Eigen::MatrixXd>(active).rank() != 4) throw std::logic_error("direction is not an edge of Q");
  }

  std::vector<QPoint53> out;
  auto add = [&](const std::array<double, 5>& qi) {
    double sum = 0.0;
    for (double v : qi) sum += v;
    QPoint53 pt{-1.0 - sum, qi};
    for (const auto& e : out) {
      double diff = std::abs(e.q - pt.q);
      for (int i = 0; i < 5; ++i) diff = std::max(diff, std::abs(e.qi[i] - pt.qi[i]));
      if (diff <= 1e-9) return;
    }
    out.push_back(pt);
  };
  add({0, 0, 0, 0, 0});  // apex, sum = 0 >= -1
  for (const auto& r : rays) {
    double s = 0.0;
    for (double v : r) s += v;
    if (s >= 0.0) continue;  // ray never reaches the hyperplane
    const double t = -1.0 / s;
    std::array<double, 5> pt;
    for (int i = 0; i < 5; ++i) pt[i] = t * r[i];
    add(pt);
  }
  return out;
}

inline double min_entropy_over_polytope(const PolytopeSpec& spec) {
  const VertexSet vs = enumerate_vertices_generic(spec);
  if (vs.vertices.empty()) throw InvalidInput("polytope has no vertices");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : vs.vertices) best = std::min(best, v.entropy());
  return best;
}

/// p'(x) = p(x xor t); preserves k-uniformity.
inline BitDistribution translate(const BitDistribution& dist, std::uint64_t t) {
  std::vector<double> p(dist.p().size());
  for (std::size_t x = 0; x < p.size(); ++x) p[x] = dist[x ^ t];
  return BitDistribution(dist.n(), std::move(p), 1e-9);
}

/// True iff every vertex of `full` has a zero at some t whose translate by t
/// is one of `face` (the face being p(0) = 0).
inline bool translation_reduction_holds(const std::vector<BitDistribution>& full,
                                        const std::vector<BitDistribution>& face, double tol = 1e-9) {
  for (const auto& v : full) {
    bool matched = false;
    for (std::size_t t = 0; t < v.p().size() && !matched; ++t) {
      if (v[t] > tol) continue;
      const BitDistribution moved = translate(v, t);
      for (const auto& f : face)
        if (detail::same_distribution(moved, f, tol)) {
          matched = true;
          break;
        }
    }
    if (!matched) return false;
  }
  return true;
}

struct ChainLink {
  std::string name;
  bool pass;
  double value;
  std::string detail;
};

struct Inf6Report {
  std::vector<ChainLink> links;
  bool pass;
  double infimum;  // established value when pass
};

/// Checks the three links that give inf over P_6^3 of S = 4:
///  (a) the hexacode reference-basis distribution lies in P_6^3 with S = 4,
///  (b) summing out bit 6 maps sampled P_6^3 members into P_5^3 without
///      raising entropy,
///  (c) the minimum over the vertices of the p(00000) = 0 face of P_5^3 is 4,
///      by both the closed-form reduction and the active-set enumerator.
inline Inf6Report verify_inf6_chain(std::uint64_t seed = 7, int samples = 200) {
  Inf6Report rep{{}, true, 4.0};

  const PureState hex = hexacode_state();
  const BitDistribution best(6, outcome_distribution(hex, hexacode_reference_basis()));
  {
    const double s = best.entropy();
    const bool ok = is_k_uniform(best, 3, 1e-9) && std::abs(s - 4.0) <= 1e-12;
    rep.links.push_back({"upper: reference distribution in P6^3 with S=4", ok, s, "entropy of measured hexacode state"});
  }

  {
    Rng rng = stream_rng(seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> shift(0, 63);
    int checked = 0;
    bool ok = true;
    double worst_gap = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
      BitDistribution member = best;
      if (s % 2 == 0) {
        member = BitDistribution(6, outcome_distribution(hex, random_product_basis(6, 2, rng)), 1e-9);
      } else {
        const BitDistribution a = translate(best, shift(rng)), b = translate(best, shift(rng));
        const double w = unit(rng);
        std::vector<double> p(64);
        for (int x = 0; x < 64; ++x) p[x] = w * a[x] + (1 - w) * b[x];
        member = BitDistribution(6, std::move(p), 1e-9);
      }
      if (!is_k_uniform(member, 3, 1e-9)) {
        ok = false;
        continue;
      }
      const BitDistribution marg = drop_bit(member, 5);
      const double gap = marg.entropy() - member.entropy();
      worst_gap = std::max(worst_gap, gap);
      ok = ok && is_k_uniform(marg, 3, 1e-9) && gap <= 1e-12;
      ++checked;
    }
    rep.links.push_back({"marginal: dropping bit 6 stays in P5^3, entropy non-increasing", ok && checked == samples,
                         worst_gap, std::to_string(checked) + " sampled members"});
  }

  {
    double reduction_min = std::numeric_limits<double>::infinity();
    const auto pts = enumerate_vertices_p53();
    for (const auto& pt : pts) reduction_min = std::min(reduction_min, qpoint_to_distribution(pt).entropy());
    const double generic_min = min_entropy_over_polytope(p53_face_spec());
    const bool ok = pts.size() == 11 && std::abs(reduction_min - 4.0) <= 1e-9 && std::abs(generic_min - 4.0) <= 1e-9;
    rep.links.push_back({"lower: min entropy over P5^3 face vertices = 4", ok, std::min(reduction_min, generic_min),
                         std::to_string(pts.size()) + " vertices"});
  }

  for (const auto& l : rep.links) rep.pass = rep.pass && l.pass;
  return rep;
}

}  // namespace mpent
