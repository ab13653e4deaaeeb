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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "property_checks.hpp"
#include "scenrisk/certificates.hpp"
#include "scenrisk/studies.hpp"

namespace scenrisk {
namespace {

// max of v1 + v2 over the diagonal band on an R x R grid
double grid_max_band(const RegionCertificate& cert, std::size_t R) {
  double best = 0.0;
  std::vector<double> v(2);
  for (std::size_t i = 0; i < R; ++i) {
    v[0] = double(i) / double(R);
    for (std::size_t j = 0; j < R; ++j) {
      v[1] = double(j) / double(R);
      if (v[0] + v[1] > best && cert.contains(v)) best = v[0] + v[1];
    }
  }
  return best;
}

TEST(BoxRegion, DegeneratesToTheorem1ForOneCriterion) {
  const auto cert = box_region({{50, 7, 0.05}});
  const auto ref = theorem1_interval(50, 7, 0.05, Theorem1Choice::kUpperOnlyHN);
  ASSERT_EQ(cert.box.size(), 1u);
  EXPECT_DOUBLE_EQ(cert.box[0].eps_hi, ref.eps_hi);
  EXPECT_DOUBLE_EQ(cert.box[0].eps_lo, ref.eps_lo);
  EXPECT_DOUBLE_EQ(cert.confidence, 0.95);
}

TEST(BoxRegion, UpperOnlyCrossCheckedByDenseScan) {
  const auto cert = box_region({{800, 120, 5e-6}, {1200, 80, 5e-6}});
  EXPECT_NEAR(cert.confidence, 1.0 - 1e-5, 1e-15);
  for (std::size_t i = 0; i < 2; ++i) {
    const std::int64_t N = i == 0 ? 800 : 1200;
    const std::int64_t k = i == 0 ? 120 : 80;
    // dense scan of the scalar psi with running-power recurrences
    const std::int64_t J = N - k;
    std::vector<long double> ratio(std::size_t(J) + 1, 1.0L);
    for (std::int64_t j = 1; j <= J; ++j)
      ratio[std::size_t(j)] = ratio[std::size_t(j - 1)] *
                              (long double)(N - k - j + 1) /
                              (long double)(N - j + 1);
    const int points = 1000000;
    const double th = 1.0 - double(k) / double(N);
    double root = -1.0;
    long double prev = -1.0L;
    bool have_prev = false;
    for (int q = 1; q < points; ++q) {
      const long double t = th * q / points;
      const long double inv = 1.0L / t;
      long double pw = 1.0L, sum = 0.0L;
      for (std::int64_t j = 1; j <= J; ++j) {
        pw *= inv;
        sum += ratio[std::size_t(j)] * pw;
        if (sum > 1e30L) break;
      }
      const long double val = 1.0L - 5e-6L / N * sum;
      if (have_prev && prev < 0.0L && val >= 0.0L) {
        root = double(t);
        break;
      }
      prev = val;
      have_prev = true;
    }
    ASSERT_GT(root, 0.0);
    EXPECT_NEAR(cert.box[i].eps_hi, 1.0 - root, 1e-5);
    EXPECT_DOUBLE_EQ(cert.box[i].eps_lo, 0.0);
  }
}

TEST(BoxRegion, VacuousWhenEveryComplexityIsFull) {
  const auto cert = box_region({{30, 30, 0.02}, {40, 40, 0.02}});
  for (const auto& b : cert.box) {
    EXPECT_DOUBLE_EQ(b.eps_lo, 0.0);
    EXPECT_DOUBLE_EQ(b.eps_hi, 1.0);
  }
  EXPECT_TRUE(cert.contains(std::vector<double>{0.99, 0.99}));
}

TEST(DiagonalRegion, UpperBoundOnlyWhenHEqualsN) {
  const MultiIndex N{20, 30};
  const auto cert = diagonal_region(N, N, MultiIndex{2, 3}, 0.1);
  EXPECT_DOUBLE_EQ(cert.band.t_underbar, 1.0);
  EXPECT_GT(cert.band.t_bar, 0.0);
  // band = { v : prod(1 - v_i) >= t_bar }
  EXPECT_TRUE(cert.contains(std::vector<double>{0.0, 0.0}));
}

TEST(DiagonalRegion, LowerBoundOnlyWhenComplexityFull) {
  const MultiIndex N{20, 30}, H{40, 60};
  const auto cert = diagonal_region(N, H, MultiIndex{20, 3}, 0.1);
  EXPECT_DOUBLE_EQ(cert.band.t_bar, 0.0);
  EXPECT_LT(cert.band.t_underbar, 1.0);
  EXPECT_TRUE(cert.contains(std::vector<double>{0.9, 0.9}));
  EXPECT_FALSE(cert.contains(std::vector<double>{0.0, 0.0}));
}

TEST(DiagonalRegion, MembershipMatchesRegionFunctionOnGrid) {
  const MultiIndex N{800, 1200}, k{120, 80};
  const double beta = 1e-5;
  const auto cert = diagonal_region(N, N, k, beta);
  AllocationSpec alloc{Scheme::kDiagonal, N, N, beta, {}};
  int checked = 0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) {
      const std::vector<double> v{i / 200.0, j / 200.0};
      const double g = region_function(alloc, k, v);
      const double t = (1.0 - v[0]) * (1.0 - v[1]);
      if (std::abs(t - cert.band.t_bar) < 1e-8) continue;  // boundary cell
      EXPECT_EQ(cert.contains(v), g >= 0.0)
          << "v=(" << v[0] << "," << v[1] << ") g=" << g;
      ++checked;
    }
  EXPECT_GT(checked, 39000);
}

TEST(JointBoundIndependent, ReferenceValues) {
  // homogeneous configurations from the benchmark table, beta split as beta/m
  std::vector<PerCriterion> pcs;
  for (int i = 0; i < 10; ++i) pcs.push_back({1500, 4, 1e-7 / 10});
  EXPECT_NEAR(joint_bound_independent(pcs).bound, 0.215704946214, 1e-8);
  pcs.clear();
  for (int i = 0; i < 100; ++i) pcs.push_back({3000, 1, 1e-7 / 100});
  EXPECT_NEAR(joint_bound_independent(pcs).bound, 0.907192365635, 1e-8);
}

TEST(JointBoundIndependent, SingleCriterionEqualsTheorem1) {
  const auto c = joint_bound_independent({{120, 11, 0.03}});
  EXPECT_DOUBLE_EQ(
      c.bound,
      theorem1_interval(120, 11, 0.03, Theorem1Choice::kUpperOnlyHN).eps_hi);
}

TEST(JointBoundIndependent, CapsAtOne) {
  std::vector<PerCriterion> pcs;
  for (int i = 0; i < 60; ++i) pcs.push_back({1500, 1, 1e-7 / 60});
  const auto c = joint_bound_independent(pcs);
  EXPECT_DOUBLE_EQ(c.bound, 1.0);  // raw value is 1.062...
}

TEST(JointBoundDiagonal, ReferenceValues) {
  EXPECT_NEAR(
      joint_bound_diagonal(MultiIndex::constant(10, 1500),
                           MultiIndex::constant(10, 4), 1e-7)
          .bound,
      0.060233364670, 1e-8);
  EXPECT_NEAR(
      joint_bound_diagonal(MultiIndex::constant(25, 2000),
                           MultiIndex::constant(25, 2), 1e-5)
          .bound,
      0.047770784819, 1e-8);
}

TEST(JointBoundDiagonal, ClosedFormEqualsGridSearch) {
  const MultiIndex N{50, 50}, k{5, 5};
  const auto cert = diagonal_region(N, N, k, 0.05);
  const auto joint = joint_bound_diagonal(N, k, 0.05);
  const double grid = grid_max_band(cert, 2000);
  EXPECT_NEAR(joint.bound, grid, 2e-3);
  EXPECT_GE(joint.bound, grid - 1e-12);  // grid search is from below
}

TEST(JointBoundDiagonal, FullComplexityGivesTrivialBound) {
  const MultiIndex N{12, 9};
  EXPECT_DOUBLE_EQ(joint_bound_diagonal(N, N, 0.2).bound, 1.0);
}

TEST(JointBoundRegionMax, DiagonalAllocationMatchesClosedForm) {
  const MultiIndex N{30, 40}, k{3, 4};
  const double beta = 0.1;
  const auto region =
      allocation_region(AllocationSpec{Scheme::kDiagonal, N, N, beta, {}}, k);
  const auto via_grid = joint_bound_region_max(region);
  const auto closed = joint_bound_diagonal(N, k, beta);
  EXPECT_NEAR(via_grid.bound, closed.bound, 2e-3);
  EXPECT_GE(via_grid.bound + 1e-12, closed.bound);  // inflation keeps it safe
}

TEST(JointBoundRegionMax, AxialAllocationTracksIndependentSum) {
  // the axial region is box-like with blunt corners; at desk scale the max
  // of |v| sits within grid tolerance of the independent-sum bound with the
  // per-criterion confidences beta * N_i / |N|
  const MultiIndex N{800, 1200}, k{120, 80};
  const double beta = 1e-5;
  const auto region =
      allocation_region(AllocationSpec{Scheme::kAxial, N, N, beta, {}}, k);
  const auto via_grid = joint_bound_region_max(region);
  const double bN = double(N[0] + N[1]);
  const auto indep = joint_bound_independent(
      {{N[0], k[0], beta * N[0] / bN}, {N[1], k[1], beta * N[1] / bN}});
  EXPECT_NEAR(via_grid.bound, indep.bound, 3e-3);
}

TEST(JointBoundRegionMax, DimensionLimitEnforced) {
  const MultiIndex N{5, 5, 5, 5}, k{1, 1, 1, 1};
  const auto region =
      allocation_region(AllocationSpec{Scheme::kDiagonal, N, N, 0.1, {}}, k);
  EXPECT_THROW(joint_bound_region_max(region, 3), DomainError);
}

TEST(AprioriIndependent, ZeroBudgetSumsBaselines) {
  std::vector<AprioriCriterion> pcs{{50, 0.05}, {70, 0.02}};
  const auto c = apriori_bound_independent(pcs, 0);
  const double want =
      theorem1_interval(50, 0, 0.05, Theorem1Choice::kUpperOnlyHN).eps_hi +
      theorem1_interval(70, 0, 0.02, Theorem1Choice::kUpperOnlyHN).eps_hi;
  EXPECT_NEAR(c.bound, std::min(want, 1.0), 1e-12);
}

TEST(AprioriIndependent, DpMatchesBruteForce) {
  std::vector<AprioriCriterion> pcs{{50, 0.05}, {50, 0.05}};
  const std::int64_t K = 6;
  const auto c = apriori_bound_independent(pcs, K);
  std::vector<double> tab;
  for (std::int64_t k = 0; k <= K; ++k)
    tab.push_back(
        theorem1_interval(50, k, 0.05, Theorem1Choice::kUpperOnlyHN).eps_hi);
  double best = 0.0;
  for (std::int64_t k1 = 0; k1 <= K; ++k1)
    for (std::int64_t k2 = 0; k1 + k2 <= K; ++k2)
      best = std::max(best, tab[std::size_t(k1)] + tab[std::size_t(k2)]);
  EXPECT_NEAR(c.bound, std::min(best, 1.0), 1e-12);
}

TEST(AprioriIndependent, MonotoneTablesPushBudgetToTheCap) {
  std::vector<AprioriCriterion> pcs{{60, 0.04}, {60, 0.04}, {60, 0.04}};
  const std::int64_t K = 9;
  const auto at_cap = apriori_bound_independent(pcs, K);
  // max over |k| = K only
  std::vector<double> tab;
  for (std::int64_t k = 0; k <= K; ++k)
    tab.push_back(
        theorem1_interval(60, k, 0.04, Theorem1Choice::kUpperOnlyHN).eps_hi);
  double best = 0.0;
  for (std::int64_t k1 = 0; k1 <= K; ++k1)
    for (std::int64_t k2 = 0; k1 + k2 <= K; ++k2) {
      const std::int64_t k3 = K - k1 - k2;
      best = std::max(best, tab[std::size_t(k1)] + tab[std::size_t(k2)] +
                                tab[std::size_t(k3)]);
    }
  EXPECT_NEAR(at_cap.bound, std::min(best, 1.0), 1e-12);
}

TEST(AprioriDiagonal, TrivialWhenBudgetReachesMinDataset) {
  EXPECT_DOUBLE_EQ(
      apriori_bound_diagonal(MultiIndex{30, 50}, 0.1, 30).bound, 1.0);
  EXPECT_DOUBLE_EQ(
      apriori_bound_diagonal(MultiIndex{30, 50}, 0.1, 31).bound, 1.0);
}

TEST(AprioriDiagonal, ScalarCaseEqualsTheorem1UpperOnly) {
  const auto c = apriori_bound_diagonal(MultiIndex{1000}, 1e-5, 100);
  const auto ref =
      theorem1_interval(1000, 100, 1e-5, Theorem1Choice::kUpperOnlyHN);
  EXPECT_NEAR(c.bound, ref.eps_hi, 1e-12);
  EXPECT_NEAR(c.bound, 0.156104094243, 1e-8);
}

TEST(AprioriDiagonal, LargeMReferencePlateau) {
  const auto c =
      apriori_bound_diagonal(MultiIndex::constant(500, 1000), 1e-5, 100);
  EXPECT_NEAR(c.bound, 0.169697, 1e-4);
}

TEST(AprioriBestcase, BalancedSplitForDivisibleBudget) {
  const auto c = apriori_bound_bestcase(MultiIndex::constant(4, 50), 0.05, 8);
  ASSERT_TRUE(c.k.has_value());
  EXPECT_EQ(*c.k, MultiIndex::constant(4, 2));
  EXPECT_DOUBLE_EQ(
      c.bound, joint_bound_diagonal(MultiIndex::constant(4, 50),
                                    MultiIndex::constant(4, 2), 0.05)
                   .bound);
}

TEST(AprioriBestcase, BalancedBeatsEveryOtherSplit) {
  const MultiIndex N{50, 50};
  const std::int64_t K = 7;
  const auto c = apriori_bound_bestcase(N, 0.05, K);
  double brute = 2.0;
  for (std::int64_t k1 = 0; k1 <= K; ++k1) {
    const std::int64_t k2 = K - k1;
    if (k1 > 50 || k2 > 50) continue;
    brute = std::min(brute,
                     joint_bound_diagonal(N, MultiIndex{k1, k2}, 0.05).bound);
  }
  EXPECT_NEAR(c.bound, brute, 1e-12);
}

TEST(AprioriBestcase, NonHomogeneousFallsBackToEnumeration) {
  const MultiIndex N{30, 50};
  const auto c = apriori_bound_bestcase(N, 0.05, 6);
  double brute = 2.0;
  for (std::int64_t k1 = 0; k1 <= 6; ++k1)
    brute = std::min(
        brute, joint_bound_diagonal(N, MultiIndex{k1, 6 - k1}, 0.05).bound);
  EXPECT_NEAR(c.bound, brute, 1e-12);
  EXPECT_THROW(
      apriori_bound_bestcase(MultiIndex{10, 20, 30, 40}, 0.05, 6),
      DomainError);
}

TEST(UniformInM, ConventionAtDegenerateRoot) {
  EXPECT_DOUBLE_EQ(uniform_in_m_bound(30, 0.1, 30).bound, 1.0);
  EXPECT_DOUBLE_EQ(uniform_in_m_bound(30, 0.1, 100).bound, 1.0);
}

TEST(UniformInM, DominatesFiniteMBoundsWithSmallGap) {
  const auto uni = uniform_in_m_bound(1000, 1e-5, 100);
  for (std::size_t m : {1u, 5u, 50u, 500u}) {
    const auto fin =
        apriori_bound_diagonal(MultiIndex::constant(m, 1000), 1e-5, 100);
    EXPECT_LE(fin.bound, uni.bound + 1e-12);
  }
  const auto big =
      apriori_bound_diagonal(MultiIndex::constant(1000, 1000), 1e-5, 100);
  EXPECT_LT(uni.bound - big.bound, 0.01);  // plateau hugs the uniform bound
}

TEST(AmGmInequality, HoldsOnGrid) {
  for (int mi = 1; mi <= 100; ++mi)
    for (int q = 1; q <= 1000; ++q) {
      const double t = double(q) / 1000.0;
      const double lhs = double(mi) * (1.0 - std::pow(t, 1.0 / mi));
      EXPECT_LE(lhs, -std::log(t) + 1e-12);
    }
}

TEST(DominanceChain, BestWorstUniformOrdering) {
  testing::SpecGen gen(301);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + gen.rng.below(6);
    const std::int64_t N = 20 + std::int64_t(gen.rng.below(200));
    const std::int64_t K = std::int64_t(gen.rng.below(std::uint64_t(N)));
    const double beta = gen.rng.uniform(1e-6, 0.3);
    const MultiIndex Nv = MultiIndex::constant(m, N);
    const double best = apriori_bound_bestcase(Nv, beta, K).bound;
    const double worst = apriori_bound_diagonal(Nv, beta, K).bound;
    const double uni = uniform_in_m_bound(N, beta, K).bound;
    EXPECT_LE(best, worst + 1e-12);
    EXPECT_LE(worst, uni + 1e-12);
  }
}

TEST(WorstCaseConsistency, EveryComplexityBelowTheCap) {
  testing::SpecGen gen(302);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + gen.rng.below(4);
    const std::int64_t N = 20 + std::int64_t(gen.rng.below(80));
    const std::int64_t K = std::int64_t(gen.rng.below(std::uint64_t(N)));
    const MultiIndex Nv = MultiIndex::constant(m, N);
    const double beta = gen.rng.uniform(1e-5, 0.3);
    const double cap = apriori_bound_diagonal(Nv, beta, K).bound;
    std::vector<std::int64_t> k(m, 0);
    std::int64_t rem = std::int64_t(gen.rng.below(std::uint64_t(K + 1)));
    for (std::size_t i = 0; i + 1 < m; ++i) {
      k[i] = std::int64_t(gen.rng.below(std::uint64_t(std::min(rem, N) + 1)));
      rem -= k[i];
    }
    k[m - 1] = std::min(rem, N);
    const double at_k = joint_bound_diagonal(Nv, MultiIndex(k), beta).bound;
    EXPECT_LE(at_k, cap + 1e-12)
        << "k=" << MultiIndex(k).to_string() << " K=" << K << " N=" << N;
  }
}

TEST(AprioriDiagonal, MonotoneInBudgetAndSaturatingInM) {
  double prev = 0.0;
  for (std::int64_t K = 0; K <= 60; K += 10) {
    const double b =
        apriori_bound_diagonal(MultiIndex::constant(3, 100), 0.01, K).bound;
    EXPECT_GE(b, prev - 1e-12);
    prev = b;
  }
  prev = 0.0;
  const double uni = uniform_in_m_bound(200, 0.01, 20).bound;
  for (std::size_t m : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
    const double b =
        apriori_bound_diagonal(MultiIndex::constant(m, 200), 0.01, 20).bound;
    EXPECT_GE(b, prev - 1e-12);
    EXPECT_LE(b, uni + 1e-12);
    prev = b;
  }
}

TEST(Sizing, RoundTripsAndMinimality) {
  testing::SpecGen gen(303);
  for (int trial = 0; trial < 20; ++trial) {
    SizingRequest req;
    req.m = 1 + gen.rng.below(8);
    req.k_star = std::int64_t(gen.rng.below(25));
    req.beta = gen.rng.uniform(1e-7, 0.2);
    req.eps_target = gen.rng.uniform(0.05, 0.9);
    req.mode = trial % 2 == 0 ? SizingMode::kFiniteM : SizingMode::kUniformInM;
    const std::int64_t n = size_datasets(req);
    ASSERT_GT(n, req.k_star);
    const double threshold =
        req.mode == SizingMode::kFiniteM
            ? std::pow(1.0 - req.eps_target / double(req.m), double(req.m))
            : std::exp(-req.eps_target);
    EXPECT_GE(apriori_t_bar(n, req.beta, req.k_star), threshold);
    if (n > req.k_star + 1)
      EXPECT_LT(apriori_t_bar(n - 1, req.beta, req.k_star), threshold);
  }
}

TEST(Sizing, FiniteMTargetIsMet) {
  SizingRequest req;
  req.m = 5;
  req.k_star = 10;
  req.beta = 1e-5;
  req.eps_target = 0.2;
  req.mode = SizingMode::kFiniteM;
  const std::int64_t n = size_datasets(req);
  const auto achieved =
      apriori_bound_diagonal(MultiIndex::constant(5, n), 1e-5, 10);
  EXPECT_LE(achieved.bound, 0.2 + 1e-12);
}

TEST(Sizing, FiniteMNeedsNoMoreDataThanUniform) {
  SizingRequest req;
  req.m = 5;
  req.k_star = 10;
  req.beta = 1e-5;
  req.eps_target = 0.2;
  req.mode = SizingMode::kFiniteM;
  const std::int64_t n_finite = size_datasets(req);
  req.mode = SizingMode::kUniformInM;
  const std::int64_t n_uniform = size_datasets(req);
  EXPECT_LE(n_finite, n_uniform);
  EXPECT_THROW(
      [] {
        SizingRequest bad;
        bad.m = 2;
        bad.k_star = 5;
        bad.beta = 0.1;
        bad.eps_target = 1.5;
        bad.validate();
      }(),
      DomainError);
}

TEST(Capping, AllJointBoundsStayInUnitInterval) {
  testing::SpecGen gen(304);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + gen.rng.below(40);
    const std::int64_t N = 5 + std::int64_t(gen.rng.below(100));
    const std::int64_t K = std::int64_t(gen.rng.below(std::uint64_t(N + 3)));
    const double beta = gen.rng.uniform(1e-7, 0.5);
    const MultiIndex Nv = MultiIndex::constant(m, N);
    for (double b : {apriori_bound_diagonal(Nv, beta, K).bound,
                     uniform_in_m_bound(N, beta, K).bound}) {
      EXPECT_GE(b, 0.0);
      EXPECT_LE(b, 1.0);
    }
  }
}

TEST(Table1, RowsExposeRawAndCappedValues) {
  const auto rows = table1_rows();
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_GT(rows[4].sum_bound_raw, 1.0);  // 1.062... printed pre-cap
  EXPECT_DOUBLE_EQ(rows[4].sum_bound_capped, 1.0);
  for (const auto& r : rows) {
    EXPECT_LE(r.diag_bound_capped, 1.0);
    EXPECT_LE(r.sum_bound_capped, 1.0);
    EXPECT_EQ(r.k_total, r.cfg.m * r.cfg.k);
  }
}

}  // namespace
}  // namespace scenrisk
