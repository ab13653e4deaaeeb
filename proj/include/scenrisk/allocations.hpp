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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scenrisk/psi.hpp"

namespace scenrisk {

enum class Scheme { kUniform, kAxial, kDiagonal, kCustom };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kUniform: return "uniform";
    case Scheme::kAxial: return "axial";
    case Scheme::kDiagonal: return "diagonal";
    case Scheme::kCustom: return "custom";
  }
  return "?";
}

// A feasible assignment h -> lambda_h with sum 1 - beta. The named schemes
// are evaluated lazily from their formulas: the uniform scheme's index grid
// has prod(H_i + 1) entries and is never materialized.
struct AllocationSpec {
  Scheme scheme = Scheme::kDiagonal;
  MultiIndex N;
  MultiIndex H;
  double beta = 0.0;
  std::map<MultiIndex, double> custom_entries;  // only for kCustom

  std::size_t m() const { return N.size(); }

  void validate() const {
    require_same_length(N, H, "AllocationSpec");
    if (!all_le(N, H))
      throw DomainError("AllocationSpec: need N <= H componentwise");
    if (!(beta > 0.0 && beta < 1.0))
      throw DomainError("AllocationSpec: beta must lie in (0,1)");
  }

  // Off-N weight of the scheme (the named schemes spread -beta uniformly
  // over their support).
  double off_weight() const {
    switch (scheme) {
      case Scheme::kUniform: {
        // prod(H_i + 1) - 1 in the log domain; for large m the count
        // overflows doubles and the weight underflows to a clean 0.
        double logc = 0.0;
        for (std::size_t i = 0; i < H.size(); ++i)
          logc += std::log1p(double(H[i]));
        if (logc > 700.0) return 0.0;
        return beta / (std::exp(logc) - 1.0);
      }
      case Scheme::kAxial:
        return beta / double(H.sum());
      case Scheme::kDiagonal: {
        std::int64_t jpos = H[0] - N[0];
        for (std::size_t i = 1; i < N.size(); ++i)
          jpos = std::min(jpos, H[i] - N[i]);
        return beta / double(N.min() + jpos);  // |J_0| - 1
      }
      case Scheme::kCustom:
        return 0.0;
    }
    return 0.0;
  }
};

// h lies on one of the axis lines through N, i.e. differs from N in exactly
// one coordinate. For m = 2 this is the paper's "exists i: h_i = N_i" row
// and column through N; the axis-line reading is the one whose cardinality
// is |H| for every m, which the -beta/|H| weight requires.
inline bool on_axial_set(const MultiIndex& h, const MultiIndex& N) {
  int differing = 0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != N[i]) ++differing;
  return differing == 1;
}

inline std::optional<std::int64_t> diagonal_offset(const MultiIndex& h,
                                                   const MultiIndex& N) {
  const std::int64_t j = h[0] - N[0];
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] - N[i] != j) return std::nullopt;
  return j;
}

inline double lambda_at(const AllocationSpec& alloc, const MultiIndex& h) {
  alloc.validate();
  if (h.size() != alloc.N.size())
    throw DomainError("lambda_at: h has wrong length");
  if (!all_le(h, alloc.H))
    throw DomainError("lambda_at: h exceeds H componentwise");
  if (h == alloc.N && alloc.scheme != Scheme::kCustom) return 1.0;
  switch (alloc.scheme) {
    case Scheme::kUniform:
      return -alloc.off_weight();
    case Scheme::kAxial:
      return on_axial_set(h, alloc.N) ? -alloc.off_weight() : 0.0;
    case Scheme::kDiagonal:
      return diagonal_offset(h, alloc.N) ? -alloc.off_weight() : 0.0;
    case Scheme::kCustom: {
      auto it = alloc.custom_entries.find(h);
      return it == alloc.custom_entries.end() ? 0.0 : it->second;
    }
  }
  return 0.0;
}

struct FeasibilityReport {
  bool feasible = true;
  double lambda_sum = 0.0;  // should equal 1 - beta
  std::vector<std::string> violations;
};

// Sign constraints plus sum = 1 - beta. The named schemes distribute -beta
// exactly by construction, so their sum is reported symbolically; custom
// entries are summed and checked to 1e-12 relative.
inline FeasibilityReport check_feasibility(const AllocationSpec& alloc) {
  FeasibilityReport rep;
  try {
    alloc.validate();
  } catch (const DomainError& e) {
    rep.feasible = false;
    rep.violations.push_back(e.what());
    return rep;
  }
  if (alloc.scheme != Scheme::kCustom) {
    rep.lambda_sum = 1.0 - alloc.beta;
    return rep;
  }
  double sum = 0.0;
  for (const auto& [h, lam] : alloc.custom_entries) {
    if (h.size() != alloc.N.size() || !all_le(h, alloc.H)) {
      rep.feasible = false;
      rep.violations.push_back("entry at " + h.to_string() +
                               " lies outside 0..H");
      continue;
    }
    if (h == alloc.N) {
      if (lam > 1.0) {
        rep.feasible = false;
        rep.violations.push_back("lambda_N = " + std::to_string(lam) +
                                 " exceeds 1");
      }
    } else if (lam > 0.0) {
      rep.feasible = false;
      rep.violations.push_back("lambda at " + h.to_string() + " = " +
                               std::to_string(lam) +
                               " must be <= 0 for h != N");
    }
    sum += lam;
  }
  rep.lambda_sum = sum;
  const double target = 1.0 - alloc.beta;
  if (std::abs(sum - target) > 1e-12 * std::max(1.0, std::abs(target))) {
    rep.feasible = false;
    rep.violations.push_back("sum of lambda = " + std::to_string(sum) +
                             " differs from 1 - beta = " +
                             std::to_string(target));
  }
  return rep;
}

namespace detail {

// sum_{h=k}^{H} C(h,k)/C(N,k) (1-v)^{h-N} along one coordinate, log domain.
// skip_n drops the h = N term (used by the axial scheme).
inline double axis_sum(std::int64_t k, std::int64_t N, std::int64_t H,
                       double one_minus_v, bool skip_n) {
  const double lbase =
      one_minus_v > 0.0 ? std::log(one_minus_v)
                        : -std::numeric_limits<double>::infinity();
  const double lCN = log_binom(N, k);
  double sum = 0.0;
  double lcoef = log_binom(k, k);  // = 0
  for (std::int64_t h = k; h <= H; ++h) {
    if (h > k) lcoef += std::log(double(h)) - std::log(double(h - k));
    if (skip_n && h == N) continue;
    if (one_minus_v == 0.0) {
      if (h == N) sum += std::exp(lcoef - lCN);  // (1-v)^0 = 1
      // h > N contributes 0; h < N is rejected before we get here
      continue;
    }
    sum += std::exp(lcoef - lCN + double(h - N) * lbase);
  }
  return sum;
}

inline void check_pole(const AllocationSpec& alloc, const MultiIndex& k,
                       std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 1.0) continue;
    bool pole = false;
    switch (alloc.scheme) {
      case Scheme::kUniform:
      case Scheme::kAxial:
        pole = k[i] < alloc.N[i];
        break;
      case Scheme::kDiagonal:
        pole = all_lt(k, alloc.N);
        break;
      case Scheme::kCustom:
        for (const auto& [h, lam] : alloc.custom_entries)
          if (lam != 0.0 && h[i] < alloc.N[i] && all_le(k, h)) pole = true;
        break;
    }
    if (pole)
      throw DomainError(
          "region_function: v_i = 1 hits a negative power of zero");
  }
}

}  // namespace detail

// g_k(v) = sum_{h=k}^{H} lambda_h C(h,k)/C(N,k) (1-v)^{h-N}; membership in
// R(k) is g_k(v) >= 0 (Corollary 1's 0-superlevel set). The named schemes
// factor across coordinates, so nothing is ever enumerated on the full grid.
inline double region_function(const AllocationSpec& alloc, const MultiIndex& k,
                              std::span<const double> v) {
  alloc.validate();
  require_same_length(k, alloc.N, "region_function");
  if (!all_le(k, alloc.N))
    throw DomainError("region_function: need k <= N componentwise");
  if (v.size() != alloc.N.size())
    throw DomainError("region_function: v has wrong length");
  for (double vi : v)
    if (!(vi >= 0.0 && vi <= 1.0))
      throw DomainError("region_function: v must lie in [0,1]^m");
  detail::check_pole(alloc, k, v);

  switch (alloc.scheme) {
    case Scheme::kUniform: {
      const double w = alloc.off_weight();
      double prod = 1.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        prod *= detail::axis_sum(k[i], alloc.N[i], alloc.H[i], 1.0 - v[i],
                                 /*skip_n=*/false);
      return 1.0 + w - w * prod;  // lambda_N term plus -w * (prod - 1)
    }
    case Scheme::kAxial: {
      const double w = alloc.off_weight();
      double total = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        total += detail::axis_sum(k[i], alloc.N[i], alloc.H[i], 1.0 - v[i],
                                  /*skip_n=*/true);
      return 1.0 - w * total;
    }
    case Scheme::kDiagonal: {
      double t = 1.0;
      for (double vi : v) t *= 1.0 - vi;
      // exact v_i = 1 poles were rejected above, so t = 0 here can only be
      // floating underflow of a positive product; psi diverges to -inf there
      if (t == 0.0 && all_lt(k, alloc.N))
        return -std::numeric_limits<double>::infinity();
      PsiSpec spec{k, alloc.N, alloc.H, alloc.beta};
      return psi_eval(spec, t);
    }
    case Scheme::kCustom: {
      double g = 0.0;
      for (const auto& [h, lam] : alloc.custom_entries) {
        if (lam == 0.0 || !all_le(k, h)) continue;
        double le = 0.0;
        bool zero_term = false;
        for (std::size_t i = 0; i < v.size(); ++i) {
          le += log_binom(h[i], k[i]) - log_binom(alloc.N[i], k[i]);
          const double base = 1.0 - v[i];
          const std::int64_t e = h[i] - alloc.N[i];
          if (base == 0.0) {
            if (e > 0) zero_term = true;  // e < 0 was rejected as a pole
          } else {
            le += double(e) * std::log(base);
          }
        }
        if (!zero_term) g += lam * std::exp(le);
      }
      return g;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Theorem 1 (m = 1): interval [eps_lo, eps_hi] for the risk at complexity k.

enum class Theorem1Choice {
  kThreeBandH4N,  // H = 4N, lambda = -beta/2N below N and -beta/6N above
  kUpperOnlyHN,   // H = N, lambda = -beta/N below N; eps_lo = 0
};

struct IntervalBound {
  double eps_lo = 0.0;
  double eps_hi = 1.0;
  std::int64_t k = 0;
  std::int64_t N = 0;
  double beta = 0.0;
};

// The scalar left-hand side of the Theorem-1 constraint as a function of
// t = 1 - v is a two-band psi; its zeros map back to v = 1 - t. Brackets
// [0, t_hat] and [t_hat, 1] with t_hat = 1 - k/N.
inline IntervalBound theorem1_interval(std::int64_t N, std::int64_t k,
                                       double beta, Theorem1Choice choice,
                                       double tol = kDefaultRootTol) {
  if (N < 1) throw DomainError("theorem1_interval: N must be >= 1");
  if (k < 0 || k > N) throw DomainError("theorem1_interval: need 0 <= k <= N");
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("theorem1_interval: beta must lie in (0,1)");

  const MultiIndex kN{N}, kk{k};
  const std::int64_t jneg = N - k;
  const double t_hat = 1.0 - double(k) / double(N);

  RootPair roots;
  if (choice == Theorem1Choice::kUpperOnlyHN) {
    BandedPsi psi(make_ratio_tables(kk, kN, jneg, 0), beta / double(N), 0.0,
                  t_hat);
    roots = find_root_pair_banded(psi, tol);
  } else {
    BandedPsi psi(make_ratio_tables(kk, kN, jneg, 3 * N),
                  beta / (2.0 * double(N)), beta / (6.0 * double(N)), t_hat);
    roots = find_root_pair_banded(psi, tol);
  }
  IntervalBound out;
  out.k = k;
  out.N = N;
  out.beta = beta;
  out.eps_lo = 1.0 - roots.t_underbar;  // 0 when the upper zero clips to 1
  out.eps_hi = 1.0 - roots.t_bar;       // 1 when k = N
  return out;
}

}  // namespace scenrisk
