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

// Randomized property suites for the structural facts the certificates rely
// on: boundedness/concavity/monotonicity of psi, positivity at t_hat,
// dominance under dataset shrinking, and ordering under complexity splits.

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "property_checks.hpp"
#include "scenrisk/psi.hpp"

namespace scenrisk {
namespace {

TEST(PsiProperties, BoundedAboveAndConcave) {
  testing::SpecGen gen(101);
  for (int i = 0; i < 100; ++i) {
    const PsiSpec s = gen.next();
    for (int q = 0; q < 100; ++q) {
      const double t1 = gen.rng.uniform(1e-3, 2.0);
      const double t2 = gen.rng.uniform(1e-3, 2.0);
      const double v1 = psi_eval(s, t1), v2 = psi_eval(s, t2);
      EXPECT_LE(v1, 1.0 + 1e-12);
      if (std::isinf(v1) || std::isinf(v2)) continue;
      const double mid = psi_eval(s, 0.5 * (t1 + t2));
      EXPECT_GE(mid, 0.5 * (v1 + v2) - 1e-9)
          << "concavity violated for k=" << s.k.to_string()
          << " N=" << s.N.to_string() << " H=" << s.H.to_string();
    }
  }
}

TEST(PsiProperties, MonotoneWhenOneBandVanishes) {
  testing::SpecGen gen(102);
  for (int i = 0; i < 60; ++i) {
    // H = N: non-decreasing in t
    const PsiSpec up = gen.next(/*force_h_eq_n=*/true);
    double ts[6], prev;
    for (auto& t : ts) t = gen.rng.uniform(0.01, 2.0);
    std::sort(std::begin(ts), std::end(ts));
    prev = psi_eval(up, ts[0]);
    for (double t : ts) {
      const double v = psi_eval(up, t);
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
    // k = N: non-increasing in t
    const PsiSpec down = gen.next(false, /*force_k_eq_n=*/true);
    prev = psi_eval(down, ts[0]);
    for (double t : ts) {
      const double v = psi_eval(down, t);
      EXPECT_LE(v, prev + 1e-12);
      prev = v;
    }
  }
}

TEST(PsiProperties, PositiveAtTHat) {
  testing::SpecGen gen(103);
  for (int i = 0; i < 100; ++i) {
    const PsiSpec s = gen.next();
    const double th = s.t_hat();
    EXPECT_GT(th == 0.0 ? psi_eval(s, 0.0) : psi_eval(s, th), 0.0);
  }
}

TEST(PsiProperties, DominanceUnderShrinkingToMinDataset) {
  // psi_{k,N,N} <= psi_{k, Nl*1, Nl*1} whenever k <= Nl * 1
  testing::SpecGen gen(104);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = 1 + gen.rng.below(4);
    std::vector<std::int64_t> n(m);
    for (auto& x : n) x = 2 + std::int64_t(gen.rng.below(38));
    const MultiIndex N(n);
    const std::int64_t nl = N.min();
    std::vector<std::int64_t> k(m);
    for (auto& x : k) x = std::int64_t(gen.rng.below(std::uint64_t(nl + 1)));
    const MultiIndex K(k);
    const MultiIndex Nl = MultiIndex::constant(m, nl);
    const double beta = gen.rng.uniform(1e-6, 0.5);
    for (int q = 0; q < 20; ++q) {
      const double t = gen.rng.uniform(1e-3, 1.5);
      const double lhs = psi_eval(PsiSpec{K, N, N, beta}, t);
      const double rhs = psi_eval(PsiSpec{K, Nl, Nl, beta}, t);
      if (std::isinf(lhs) || std::isinf(rhs)) {
        EXPECT_TRUE(std::isinf(lhs));  // lhs <= rhs still
        continue;
      }
      EXPECT_LE(lhs, rhs + 1e-12)
          << "k=" << K.to_string() << " N=" << N.to_string() << " t=" << t;
    }
  }
}

TEST(PsiProperties, BalancedAndConcentratedSplitsBracketPsi) {
  // psi_{balanced} <= psi_k <= psi_{concentrated} for |k| fixed, N = N*1
  testing::SpecGen gen(105);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = 1 + gen.rng.below(4);
    const std::int64_t N = 2 + std::int64_t(gen.rng.below(38));
    const std::int64_t K = std::int64_t(gen.rng.below(std::uint64_t(N + 1)));
    // random split of K among m entries, each <= N
    std::vector<std::int64_t> k(m, 0);
    std::int64_t rem = K;
    for (std::size_t i2 = 0; i2 + 1 < m; ++i2) {
      k[i2] = std::int64_t(gen.rng.below(std::uint64_t(std::min(rem, N) + 1)));
      rem -= k[i2];
    }
    if (rem > N) continue;  // split infeasible, resample
    k[m - 1] = rem;
    std::vector<std::int64_t> conc(m, 0), bal(m, K / std::int64_t(m));
    conc[0] = K;
    for (std::int64_t r = 0; r < K % std::int64_t(m); ++r) ++bal[std::size_t(r)];
    const MultiIndex Nv = MultiIndex::constant(m, N);
    const double beta = gen.rng.uniform(1e-6, 0.5);
    for (int q = 0; q < 20; ++q) {
      const double t = gen.rng.uniform(1e-3, 1.5);
      const double mid = psi_eval(PsiSpec{MultiIndex(k), Nv, Nv, beta}, t);
      const double lo = psi_eval(PsiSpec{MultiIndex(bal), Nv, Nv, beta}, t);
      const double hi = psi_eval(PsiSpec{MultiIndex(conc), Nv, Nv, beta}, t);
      if (std::isinf(lo) || std::isinf(mid) || std::isinf(hi)) continue;
      EXPECT_LE(lo, mid + 1e-12);
      EXPECT_LE(mid, hi + 1e-12);
    }
  }
}

TEST(PsiProperties, LogDomainMatchesExactRationals) {
  // m = 1, small integers: relative error <= 1e-12 against direct rational
  // evaluation
  testing::SpecGen gen(106);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t N = 1 + std::int64_t(gen.rng.below(12));
    const std::int64_t k = std::int64_t(gen.rng.below(std::uint64_t(N + 1)));
    const std::int64_t H = N + std::int64_t(gen.rng.below(std::uint64_t(N + 1)));
    const double beta = gen.rng.uniform(1e-6, 0.5);
    const double t = gen.rng.uniform(0.05, 1.5);
    PsiSpec s{MultiIndex{k}, MultiIndex{N}, MultiIndex{H}, beta};
    const long double exact = testing::psi_exact(s.k, s.N, s.H, beta, t);
    const double got = psi_eval(s, t);
    const double scale = std::max(1.0, std::abs(double(1.0L - exact)));
    EXPECT_NEAR(got, double(exact), 1e-12 * scale)
        << "N=" << N << " k=" << k << " H=" << H << " t=" << t;
  }
}

}  // namespace
}  // namespace scenrisk
