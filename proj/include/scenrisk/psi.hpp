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
#include <limits>

#include "scenrisk/binomial_ratios.hpp"
#include "scenrisk/multi_index.hpp"

namespace scenrisk {

inline constexpr double kDefaultRootTol = 1e-10;

// Parameters of psi_{k,N,H} with confidence parameter beta:
//
//   psi(t) = 1 - beta/(|J_0|-1) * [ sum_{j=1}^{min(N-k)} r^-_j t^-j
//                                 + sum_{j=1}^{min(H-N)} r^+_j t^j ]
//
// where r^-_j, r^+_j are the binomial-coefficient ratios of
// binomial_ratios.hpp and |J_0|-1 = min(N) + min(H-N).
struct PsiSpec {
  MultiIndex k;
  MultiIndex N;
  MultiIndex H;
  double beta = 0.0;

  void validate() const {
    require_same_length(k, N, "PsiSpec");
    require_same_length(N, H, "PsiSpec");
    if (!all_le(k, N)) throw DomainError("PsiSpec: need k <= N componentwise");
    if (!all_le(N, H)) throw DomainError("PsiSpec: need N <= H componentwise");
    if (!(beta > 0.0 && beta < 1.0))
      throw DomainError("PsiSpec: beta must lie strictly inside (0,1)");
  }

  std::int64_t j_neg_count() const {
    std::int64_t j = N[0] - k[0];
    for (std::size_t i = 1; i < N.size(); ++i) j = std::min(j, N[i] - k[i]);
    return j;
  }
  std::int64_t j_pos_count() const {
    std::int64_t j = H[0] - N[0];
    for (std::size_t i = 1; i < N.size(); ++i) j = std::min(j, H[i] - N[i]);
    return j;
  }

  // t_hat = prod(1 - k_i/N_i); the split point between the two zeros
  double t_hat() const {
    double t = 1.0;
    for (std::size_t i = 0; i < N.size(); ++i)
      t *= 1.0 - double(k[i]) / double(N[i]);
    return t;
  }
};

// Scalar function 1 - w_minus * sum_j r^-_j t^-j - w_plus * sum_j r^+_j t^j.
// The two weights are equal for the diagonal allocation but differ for the
// three-band lambda choice of Theorem 1 (H = 4N).
class BandedPsi {
 public:
  BandedPsi(RatioTables tables, double w_minus, double w_plus, double t_hat)
      : tab_(std::move(tables)),
        w_minus_(w_minus),
        w_plus_(w_plus),
        t_hat_(t_hat) {}

  double t_hat() const { return t_hat_; }
  bool has_neg_band() const { return !tab_.lneg.empty(); }
  bool has_pos_band() const { return !tab_.lpos.empty(); }

  // Defined for t > 0, and for t = 0 when there is no negative band.
  double operator()(double t) const {
    if (t < 0.0) throw DomainError("psi: t must be >= 0");
    if (t == 0.0) {
      if (has_neg_band())
        throw DomainError("psi: t = 0 is a pole when k < N");
      return 1.0;  // positive-power terms vanish
    }
    const double lt = std::log(t);
    double s = band_sum(tab_.lneg, -lt, w_minus_);
    if (std::isinf(s)) return -std::numeric_limits<double>::infinity();
    s += band_sum(tab_.lpos, lt, w_plus_);
    if (std::isinf(s)) return -std::numeric_limits<double>::infinity();
    return 1.0 - s;
  }

 private:
  // sum_j w * exp(logr[j-1] + j*slope). Terms are log-concave in j, so once
  // past the peak they decay monotonically and the tail can be dropped.
  static double band_sum(const std::vector<double>& logr, double slope,
                         double w) {
    double sum = 0.0;
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < logr.size(); ++idx) {
      const double e = logr[idx] + double(idx + 1) * slope;
      const double term = std::exp(e);
      sum += term;
      if (std::isinf(sum)) return sum;
      if (e < prev && term < sum * 1e-18) break;  // past the peak, negligible
      prev = e;
    }
    return w * sum;
  }

  RatioTables tab_;
  double w_minus_;
  double w_plus_;
  double t_hat_;
};

inline BandedPsi make_banded_psi(const PsiSpec& spec) {
  spec.validate();
  const std::int64_t jneg = spec.j_neg_count();
  const std::int64_t jpos = spec.j_pos_count();
  const double denom = double(spec.N.min() + jpos);  // |J_0| - 1
  const double w = spec.beta / denom;
  return BandedPsi(make_ratio_tables(spec.k, spec.N, jneg, jpos), w, w,
                   spec.t_hat());
}

// psi_{k,N,H}(t) per the diagonal allocation. t = 0 is allowed only when
// k is not componentwise below N.
inline double psi_eval(const PsiSpec& spec, double t) {
  return make_banded_psi(spec)(t);
}

struct RootPair {
  double t_bar = 0.0;       // lower zero; controls the upper hyperbola
  double t_underbar = 1.0;  // upper zero clipped to 1; lower hyperbola
};

// Bisection per the recipe of the reference implementation: bracket
// [0, t_hat] for t_bar and [t_hat, 1] for t_underbar, halving until the
// bracket is narrower than tol, then keeping the conservative endpoint
// (left for t_bar, right for t_underbar) so certified regions never
// shrink below the true ones.
inline RootPair find_root_pair_banded(const BandedPsi& psi,
                                      double tol = kDefaultRootTol) {
  if (!(tol > 0.0)) throw DomainError("find_root_pair: tol must be > 0");
  RootPair out;
  if (psi.has_neg_band()) {
    double t1 = 0.0, t2 = psi.t_hat();
    while (t2 - t1 > tol) {
      const double tb = 0.5 * (t1 + t2);
      if (psi(tb) >= 0.0)
        t2 = tb;
      else
        t1 = tb;
    }
    out.t_bar = t1;
  } else {
    out.t_bar = 0.0;
  }
  if (psi.has_pos_band()) {
    double t1 = psi.t_hat(), t2 = 1.0;
    while (t2 - t1 > tol) {
      const double tb = 0.5 * (t1 + t2);
      if (psi(tb) >= 0.0)
        t1 = tb;
      else
        t2 = tb;
    }
    out.t_underbar = t2;  // clips to 1 when the zero lies beyond 1
  } else {
    out.t_underbar = 1.0;
  }
  return out;
}

inline RootPair find_root_pair(const PsiSpec& spec,
                               double tol = kDefaultRootTol) {
  return find_root_pair_banded(make_banded_psi(spec), tol);
}

}  // namespace scenrisk
