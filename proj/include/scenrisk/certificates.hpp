//
// Copyright 2026 The scenrisk Authors
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
//

#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "scenrisk/allocations.hpp"
#include "scenrisk/psi.hpp"

namespace scenrisk {

enum class RegionKind { kIndependentBox, kDiagonalBand, kGeneralAllocation };

inline const char* region_kind_name(RegionKind k) {
  switch (k) {
    case RegionKind::kIndependentBox: return "independent_box";
    case RegionKind::kDiagonalBand: return "diagonal_band";
    case RegionKind::kGeneralAllocation: return "general_allocation";
  }
  return "?";
}

// A-posteriori description of the certified region R(k) in [0,1]^m together
// with its confidence 1 - beta. Membership is total on [0,1)^m.
struct RegionCertificate {
  RegionKind kind = RegionKind::kDiagonalBand;
  double confidence = 0.0;
  MultiIndex k;
  MultiIndex N;
  MultiIndex H;
  std::vector<IntervalBound> box;  // kIndependentBox
  RootPair band;                   // kDiagonalBand
  std::shared_ptr<const AllocationSpec> alloc;  // kGeneralAllocation

  bool contains(std::span<const double> v) const {
    if (v.size() != N.size())
      throw DomainError("RegionCertificate: v has wrong length");
    switch (kind) {
      case RegionKind::kIndependentBox: {
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] < box[i].eps_lo || v[i] > box[i].eps_hi) return false;
        return true;
      }
      case RegionKind::kDiagonalBand: {
        double t = 1.0;
        for (double vi : v) t *= 1.0 - vi;
        return band.t_bar <= t && t <= band.t_underbar;
      }
      case RegionKind::kGeneralAllocation:
        return region_function(*alloc, k, v) >= 0.0;
    }
    return false;
  }
};

enum class JointMethod {
  kIndependentSum,
  kDiagonalClosedForm,
  kGeneralRegionMax,
  kAprioriIndependent,
  kAprioriDiagonal,
  kUniformInM,
};

inline const char* joint_method_name(JointMethod m) {
  switch (m) {
    case JointMethod::kIndependentSum: return "independent_sum";
    case JointMethod::kDiagonalClosedForm: return "diagonal_closed_form";
    case JointMethod::kGeneralRegionMax: return "general_region_max";
    case JointMethod::kAprioriIndependent: return "apriori_independent";
    case JointMethod::kAprioriDiagonal: return "apriori_diagonal";
    case JointMethod::kUniformInM: return "uniform_in_m";
  }
  return "?";
}

// Scalar upper bound on the joint risk, always capped at 1, with the
// provenance of the bound and the inputs that produced it.
struct JointRiskCertificate {
  double bound = 1.0;
  double confidence = 0.0;
  JointMethod method = JointMethod::kIndependentSum;
  std::optional<MultiIndex> k;  // a-posteriori methods
  std::int64_t k_star = -1;     // a-priori methods
  MultiIndex N;
  double beta = 0.0;
};

struct PerCriterion {
  std::int64_t N = 0;
  std::int64_t k = 0;
  double beta = 0.0;
};

// ---------------------------------------------------------------------------
// A-posteriori certificates

// Box region from per-criterion Theorem-1 intervals; confidence 1 - sum beta_i.
inline RegionCertificate box_region(
    const std::vector<PerCriterion>& per_criterion,
    Theorem1Choice choice = Theorem1Choice::kUpperOnlyHN,
    double tol = kDefaultRootTol) {
  if (per_criterion.empty()) throw DomainError("box_region: empty criteria");
  double beta_total = 0.0;
  std::vector<std::int64_t> nv, kv;
  RegionCertificate cert;
  for (const auto& pc : per_criterion) {
    if (!(pc.beta > 0.0 && pc.beta < 1.0))
      throw DomainError("box_region: each beta_i must lie in (0,1)");
    beta_total += pc.beta;
    cert.box.push_back(theorem1_interval(pc.N, pc.k, pc.beta, choice, tol));
    nv.push_back(pc.N);
    kv.push_back(pc.k);
  }
  if (!(beta_total < 1.0))
    throw DomainError("box_region: sum of beta_i must be < 1");
  cert.kind = RegionKind::kIndependentBox;
  cert.confidence = 1.0 - beta_total;
  cert.N = MultiIndex(nv);
  cert.k = MultiIndex(kv);
  cert.H = choice == Theorem1Choice::kUpperOnlyHN
               ? cert.N
               : MultiIndex([&] {
                   std::vector<std::int64_t> h;
                   for (auto n : nv) h.push_back(4 * n);
                   return h;
                 }());
  return cert;
}

// Diagonal band of Proposition 1: { v : t_bar <= prod(1 - v_i) <= t_under }.
inline RegionCertificate diagonal_region(const MultiIndex& N,
                                         const MultiIndex& H,
                                         const MultiIndex& k, double beta,
                                         double tol = kDefaultRootTol) {
  PsiSpec spec{k, N, H, beta};
  spec.validate();
  RegionCertificate cert;
  cert.kind = RegionKind::kDiagonalBand;
  cert.confidence = 1.0 - beta;
  cert.k = k;
  cert.N = N;
  cert.H = H;
  cert.band = find_root_pair(spec, tol);
  return cert;
}

inline RegionCertificate allocation_region(AllocationSpec alloc,
                                           const MultiIndex& k) {
  alloc.validate();
  require_same_length(k, alloc.N, "allocation_region");
  if (!all_le(k, alloc.N))
    throw DomainError("allocation_region: need k <= N componentwise");
  RegionCertificate cert;
  cert.kind = RegionKind::kGeneralAllocation;
  cert.confidence = 1.0 - alloc.beta;
  cert.k = k;
  cert.N = alloc.N;
  cert.H = alloc.H;
  cert.alloc = std::make_shared<AllocationSpec>(std::move(alloc));
  return cert;
}

// ---------------------------------------------------------------------------
// Joint-risk bounds

// sum of per-criterion upper bounds (union bound), capped at 1.
inline JointRiskCertificate joint_bound_independent(
    const std::vector<PerCriterion>& per_criterion,
    Theorem1Choice choice = Theorem1Choice::kUpperOnlyHN,
    double tol = kDefaultRootTol) {
  double sum = 0.0, beta_total = 0.0;
  std::vector<std::int64_t> nv, kv;
  for (const auto& pc : per_criterion) {
    sum += theorem1_interval(pc.N, pc.k, pc.beta, choice, tol).eps_hi;
    beta_total += pc.beta;
    nv.push_back(pc.N);
    kv.push_back(pc.k);
  }
  if (!(beta_total < 1.0))
    throw DomainError("joint_bound_independent: sum of beta_i must be < 1");
  JointRiskCertificate c;
  c.bound = std::min(sum, 1.0);
  c.confidence = 1.0 - beta_total;
  c.method = JointMethod::kIndependentSum;
  c.k = MultiIndex(kv);
  c.N = MultiIndex(nv);
  c.beta = beta_total;
  return c;
}

inline double raw_diagonal_bound(std::size_t m, double t_bar) {
  if (t_bar <= 0.0) return double(m);  // caps to 1 downstream
  return double(m) * (1.0 - std::pow(t_bar, 1.0 / double(m)));
}

// Proposition 2: with H = N, bound = min{ m (1 - t_bar^(1/m)), 1 }. The
// closed form equals max |v| over the diagonal band (AM-GM).
inline JointRiskCertificate joint_bound_diagonal(const MultiIndex& N,
                                                 const MultiIndex& k,
                                                 double beta,
                                                 double tol = kDefaultRootTol) {
  PsiSpec spec{k, N, N, beta};
  spec.validate();
  const RootPair roots = find_root_pair(spec, tol);
  JointRiskCertificate c;
  c.bound = std::min(raw_diagonal_bound(N.size(), roots.t_bar), 1.0);
  c.confidence = 1.0 - beta;
  c.method = JointMethod::kDiagonalClosedForm;
  c.k = k;
  c.N = N;
  c.beta = beta;
  return c;
}

namespace detail {

// Membership tester that factors the named schemes so dense grids stay
// affordable: per-axis sum tables for uniform/axial, the root pair for the
// diagonal band, term-by-term evaluation for custom allocations.
class RegionMembership {
 public:
  RegionMembership(const AllocationSpec& alloc, const MultiIndex& k)
      : alloc_(alloc), k_(k) {
    if (alloc.scheme == Scheme::kDiagonal) {
      PsiSpec spec{k, alloc.N, alloc.H, alloc.beta};
      band_ = find_root_pair(spec);
    }
  }

  // g(v) for v on the tensor grid given by per-axis coordinate lists
  bool contains(std::span<const double> v) const {
    switch (alloc_.scheme) {
      case Scheme::kDiagonal: {
        double t = 1.0;
        for (double vi : v) t *= 1.0 - vi;
        return band_.t_bar <= t && t <= band_.t_underbar;
      }
      default:
        return region_function(alloc_, k_, v) >= 0.0;
    }
  }

  // max of sum(v) over grid points lo_i + j*(hi_i - lo_i)/res, j = 0..res
  double grid_max(std::span<const double> lo, std::span<const double> hi,
                  std::size_t res, std::vector<double>* arg) const {
    const std::size_t m = alloc_.N.size();
    std::vector<std::vector<double>> coord(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j <= res; ++j) {
        double x = lo[i] + (hi[i] - lo[i]) * double(j) / double(res);
        coord[i].push_back(std::min(x, 1.0 - 1e-12));
      }
    const bool factored = alloc_.scheme == Scheme::kUniform ||
                          alloc_.scheme == Scheme::kAxial;
    std::vector<std::vector<double>> axis(m);  // per-axis partial sums
    if (factored)
      for (std::size_t i = 0; i < m; ++i)
        for (double x : coord[i])
          axis[i].push_back(detail::axis_sum(k_[i], alloc_.N[i], alloc_.H[i],
                                             1.0 - x,
                                             alloc_.scheme == Scheme::kAxial));
    const double w = alloc_.off_weight();
    double best = -1.0;
    std::vector<std::size_t> idx(m, 0);
    std::vector<double> point(m);
    for (;;) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        point[i] = coord[i][idx[i]];
        s += point[i];
      }
      if (s > best) {
        bool member;
        if (alloc_.scheme == Scheme::kUniform) {
          double prod = 1.0;
          for (std::size_t i = 0; i < m; ++i) prod *= axis[i][idx[i]];
          member = 1.0 + w - w * prod >= 0.0;
        } else if (alloc_.scheme == Scheme::kAxial) {
          double total = 0.0;
          for (std::size_t i = 0; i < m; ++i) total += axis[i][idx[i]];
          member = 1.0 - w * total >= 0.0;
        } else {
          member = contains(point);
        }
        if (member) {
          best = s;
          if (arg) *arg = point;
        }
      }
      std::size_t d = 0;
      while (d < m && ++idx[d] > res) idx[d++] = 0;
      if (d == m) break;
    }
    return best;
  }

 private:
  const AllocationSpec& alloc_;
  MultiIndex k_;
  RootPair band_;
};

}  // namespace detail

// Numerical max of |v| over a general-allocation region: dense grid, one
// local refinement pass around the best cell, then an inflation of one
// coarse grid-cell diagonal of |v| so the reported bound is approximate
// from below plus a conservative margin.
inline JointRiskCertificate joint_bound_region_max(
    const RegionCertificate& cert, std::size_t dims_limit = 3,
    std::size_t resolution = 0) {
  if (cert.kind != RegionKind::kGeneralAllocation)
    throw DomainError("joint_bound_region_max: needs a GeneralAllocation");
  const std::size_t m = cert.N.size();
  if (m > dims_limit)
    throw DomainError("joint_bound_region_max: m exceeds dims_limit");
  if (resolution == 0) resolution = m <= 2 ? 3000 : 150;
  if (resolution < 2)
    throw DomainError("joint_bound_region_max: resolution too small");

  detail::RegionMembership member(*cert.alloc, cert.k);
  const double step = 1.0 / double(resolution);
  std::vector<double> lo(m, 0.0), hi(m, 1.0), best_v(m, 0.0);
  double best = member.grid_max(lo, hi, resolution, &best_v);
  if (best < 0.0)
    throw DomainError("joint_bound_region_max: region appears empty on grid");
  for (std::size_t i = 0; i < m; ++i) {
    lo[i] = std::max(0.0, best_v[i] - step);
    hi[i] = std::min(1.0, best_v[i] + step);
  }
  best = std::max(best, member.grid_max(lo, hi, 40, nullptr));

  JointRiskCertificate c;
  c.bound = std::min(best + double(m) * step, 1.0);
  c.confidence = cert.confidence;
  c.method = JointMethod::kGeneralRegionMax;
  c.k = cert.k;
  c.N = cert.N;
  c.beta = 1.0 - cert.confidence;
  return c;
}

// ---------------------------------------------------------------------------
// A-priori bounds (complexity capped at K*)

struct AprioriCriterion {
  std::int64_t N = 0;
  double beta = 0.0;
};

namespace detail {

// table of eps_hi(k), k = 0..kmax, for one criterion
inline std::vector<double> eps_table(std::int64_t N, double beta,
                                     std::int64_t kmax, Theorem1Choice choice,
                                     double tol) {
  std::vector<double> tab;
  tab.reserve(std::size_t(kmax + 1));
  for (std::int64_t k = 0; k <= kmax; ++k)
    tab.push_back(theorem1_interval(N, k, beta, choice, tol).eps_hi);
  return tab;
}

}  // namespace detail

// Exact maximization of sum_i eps_i(k_i) over |k| <= K* by dynamic
// programming over criteria with the remaining budget as state.
inline JointRiskCertificate apriori_bound_independent(
    const std::vector<AprioriCriterion>& per_criterion, std::int64_t k_star,
    Theorem1Choice choice = Theorem1Choice::kUpperOnlyHN,
    double tol = kDefaultRootTol) {
  if (per_criterion.empty())
    throw DomainError("apriori_bound_independent: empty criteria");
  if (k_star < 0)
    throw DomainError("apriori_bound_independent: K* must be >= 0");
  double beta_total = 0.0;
  std::vector<std::int64_t> nv;
  const std::size_t B = std::size_t(k_star) + 1;
  std::vector<double> f(B, 0.0);  // best sum with budget b after criteria so far
  for (const auto& pc : per_criterion) {
    beta_total += pc.beta;
    nv.push_back(pc.N);
    const std::int64_t kmax = std::min(k_star, pc.N);
    const auto tab = detail::eps_table(pc.N, pc.beta, kmax, choice, tol);
    std::vector<double> g(B, -1.0);
    for (std::size_t b = 0; b < B; ++b)
      for (std::int64_t j = 0; j <= std::min<std::int64_t>(kmax, b); ++j)
        g[b] = std::max(g[b], f[b - std::size_t(j)] + tab[std::size_t(j)]);
    f = std::move(g);
  }
  if (!(beta_total < 1.0))
    throw DomainError("apriori_bound_independent: sum of beta_i must be < 1");
  JointRiskCertificate c;
  c.bound = std::min(f[B - 1], 1.0);
  c.confidence = 1.0 - beta_total;
  c.method = JointMethod::kAprioriIndependent;
  c.k_star = k_star;
  c.N = MultiIndex(nv);
  c.beta = beta_total;
  return c;
}

// t_bar of the scalar psi_{K*, Nl, Nl}; 0 when K* >= Nl.
inline double apriori_t_bar(std::int64_t n_lower, double beta,
                            std::int64_t k_star,
                            double tol = kDefaultRootTol) {
  if (k_star < 0) throw DomainError("apriori_t_bar: K* must be >= 0");
  if (n_lower < 1) throw DomainError("apriori_t_bar: N_lower must be >= 1");
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("apriori_t_bar: beta must lie in (0,1)");
  if (k_star >= n_lower) return 0.0;
  PsiSpec spec{MultiIndex{k_star}, MultiIndex{n_lower}, MultiIndex{n_lower},
               beta};
  return find_root_pair(spec, tol).t_bar;
}

// Proposition 3: worst complexity split puts all K* scenarios in the
// smallest dataset; bound = min{ m (1 - t_bar_hat^(1/m)), 1 }.
inline JointRiskCertificate apriori_bound_diagonal(
    const MultiIndex& N, double beta, std::int64_t k_star,
    double tol = kDefaultRootTol) {
  const double tb = apriori_t_bar(N.min(), beta, k_star, tol);
  JointRiskCertificate c;
  c.bound = std::min(raw_diagonal_bound(N.size(), tb), 1.0);
  c.confidence = 1.0 - beta;
  c.method = JointMethod::kAprioriDiagonal;
  c.k_star = k_star;
  c.N = N;
  c.beta = beta;
  return c;
}

inline MultiIndex balanced_complexity(std::size_t m, std::int64_t total) {
  std::vector<std::int64_t> k(m, total / std::int64_t(m));
  for (std::int64_t r = 0; r < total % std::int64_t(m); ++r)
    ++k[std::size_t(r)];
  return MultiIndex(k);
}

// Best-case split of K* support scenarios: the balanced multi-index
// minimizes eps_bar over |k| = K* for homogeneous N; otherwise fall back
// to enumeration, which is only affordable for m <= 3.
inline JointRiskCertificate apriori_bound_bestcase(
    const MultiIndex& N, double beta, std::int64_t k_star,
    double tol = kDefaultRootTol) {
  if (k_star < 0)
    throw DomainError("apriori_bound_bestcase: K* must be >= 0");
  const std::size_t m = N.size();
  const bool homogeneous = N.min() == N.max();
  JointRiskCertificate c;
  c.confidence = 1.0 - beta;
  c.method = JointMethod::kAprioriDiagonal;
  c.k_star = k_star;
  c.N = N;
  c.beta = beta;
  if (homogeneous) {
    if (k_star > N.sum()) {
      throw DomainError("apriori_bound_bestcase: K* exceeds |N|");
    }
    const MultiIndex k = balanced_complexity(m, k_star);
    if (!all_le(k, N)) throw DomainError("apriori_bound_bestcase: K* > |N|");
    c.bound = joint_bound_diagonal(N, k, beta, tol).bound;
    c.k = k;
    return c;
  }
  if (m > 3)
    throw DomainError(
        "apriori_bound_bestcase: non-homogeneous N needs m <= 3");
  double best = 2.0;
  std::optional<MultiIndex> best_k;
  std::vector<std::int64_t> k(m, 0);
  // enumerate compositions of K* with k_i <= N_i
  const std::function<void(std::size_t, std::int64_t)> rec =
      [&](std::size_t i, std::int64_t rem) {
        if (i + 1 == m) {
          if (rem > N[i]) return;
          k[i] = rem;
          MultiIndex kk{std::vector<std::int64_t>(k)};
          const double b = joint_bound_diagonal(N, kk, beta, tol).bound;
          if (b < best) {
            best = b;
            best_k = kk;
          }
          return;
        }
        for (std::int64_t j = 0; j <= std::min(rem, N[i]); ++j) {
          k[i] = j;
          rec(i + 1, rem - j);
        }
      };
  rec(0, k_star);
  if (!best_k)
    throw DomainError("apriori_bound_bestcase: no feasible k with |k| = K*");
  c.bound = best;
  c.k = *best_k;
  return c;
}

// Proposition 4: min{ log(1/t_bar_hat), 1 }, independent of m; 1 when the
// root degenerates to 0.
inline JointRiskCertificate uniform_in_m_bound(std::int64_t n_lower,
                                               double beta,
                                               std::int64_t k_star,
                                               double tol = kDefaultRootTol) {
  const double tb = apriori_t_bar(n_lower, beta, k_star, tol);
  JointRiskCertificate c;
  c.bound = tb == 0.0 ? 1.0 : std::min(-std::log(tb), 1.0);
  c.confidence = 1.0 - beta;
  c.method = JointMethod::kUniformInM;
  c.k_star = k_star;
  c.N = MultiIndex{n_lower};
  c.beta = beta;
  return c;
}

// ---------------------------------------------------------------------------
// Dataset sizing

enum class SizingMode { kFiniteM, kUniformInM };

struct SizingRequest {
  std::size_t m = 1;  // ignored for kUniformInM
  std::int64_t k_star = 0;
  double beta = 0.0;
  double eps_target = 0.0;
  SizingMode mode = SizingMode::kFiniteM;

  void validate() const {
    if (!(eps_target > 0.0 && eps_target < 1.0))
      throw DomainError("SizingRequest: eps_target must lie in (0,1)");
    if (!(beta > 0.0 && beta < 1.0))
      throw DomainError("SizingRequest: beta must lie in (0,1)");
    if (k_star < 0) throw DomainError("SizingRequest: K* must be >= 0");
    if (mode == SizingMode::kFiniteM && m < 1)
      throw DomainError("SizingRequest: m must be >= 1");
  }
};

// Smallest N_lower > K* whose t_bar_hat clears the target threshold:
// (1 - eps/m)^m for finite m, exp(-eps) for the uniform-in-m bound.
// Doubling finds a feasible size (t_bar_hat -> 1 as N_lower grows), binary
// search narrows it, and a final walk-down certifies minimality.
inline std::int64_t size_datasets(const SizingRequest& req,
                                  double tol = kDefaultRootTol) {
  req.validate();
  const double threshold =
      req.mode == SizingMode::kFiniteM
          ? std::pow(1.0 - req.eps_target / double(req.m), double(req.m))
          : std::exp(-req.eps_target);
  auto ok = [&](std::int64_t n) {
    return apriori_t_bar(n, req.beta, req.k_star, tol) >= threshold;
  };
  std::int64_t lo = req.k_star + 1;  // t_bar_hat = 0 at K* >= N_lower
  std::int64_t hi = std::max<std::int64_t>(lo, 2);
  while (!ok(hi)) {
    if (hi > (std::int64_t(1) << 50))
      throw DomainError("size_datasets: no feasible N_lower found");
    lo = hi + 1;
    hi *= 2;
  }
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  while (hi > req.k_star + 1 && ok(hi - 1)) --hi;  // certify minimality
  return hi;
}

}  // namespace scenrisk
