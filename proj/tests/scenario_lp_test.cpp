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

#include <cmath>
#include <optional>

#include <gtest/gtest.h>

#include "scenrisk/scenario/engine.hpp"
#include "scenrisk/scenario/robust_lp2d.hpp"

namespace scenrisk {
namespace {

// Independent brute-force oracle: enumerate all constraint pairs directly
// from the raw scenario payloads, track the cheapest feasible intersection.
// Deliberately written apart from the production solver.
std::optional<std::array<double, 3>> lp_oracle(const ScenarioDatasets& data,
                                               double box) {
  std::vector<std::array<double, 3>> rows;  // ax, ay, b
  for (const auto& l : data.lists)
    for (const auto& sc : l)
      rows.push_back({std::cos(sc.payload[0]), std::sin(sc.payload[0]),
                      sc.payload[1]});
  rows.push_back({1, 0, box});
  rows.push_back({-1, 0, box});
  rows.push_back({0, 1, box});
  rows.push_back({0, -1, box});
  std::optional<std::array<double, 3>> best;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      const double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
      if (std::abs(det) < 1e-12) continue;
      const double z1 = (rows[i][2] * rows[j][1] - rows[j][2] * rows[i][1]) / det;
      const double z2 = (rows[i][0] * rows[j][2] - rows[j][0] * rows[i][2]) / det;
      bool ok = true;
      for (const auto& r : rows)
        if (r[0] * z1 + r[1] * z2 > r[2] + 1e-9 * (1.0 + std::abs(r[2])))
          ok = false;
      if (!ok) continue;
      const double cost = z1 + z2;
      if (!best || cost < (*best)[2]) best = {z1, z2, cost};
    }
  return best;
}

ScenarioDatasets two_scenarios(double th1, double b1, double th2, double b2) {
  ScenarioDatasets data;
  data.lists.resize(2);
  data.lists[0].push_back({1, {th1, b1}});
  data.lists[1].push_back({2, {th2, b2}});
  return data;
}

TEST(RobustLp2d, TinyInstanceMatchesDirectVertexSolve) {
  // normals chosen so the two scenario constraints intersect at the optimum
  const double th1 = M_PI + 0.3, b1 = 1.5;
  const double th2 = M_PI + 1.2, b2 = 1.2;
  RobustLp2d::Params prm;
  prm.m = 2;
  const RobustLp2d p(prm);
  const auto z = p.solve(two_scenarios(th1, b1, th2, b2));
  // direct 2x2 solve of the active pair
  const double a11 = std::cos(th1), a12 = std::sin(th1);
  const double a21 = std::cos(th2), a22 = std::sin(th2);
  const double det = a11 * a22 - a12 * a21;
  EXPECT_NEAR(z.z1, (b1 * a22 - b2 * a12) / det, 1e-12);
  EXPECT_NEAR(z.z2, (a11 * b2 - a21 * b1) / det, 1e-12);
}

TEST(RobustLp2d, SeededBatchMatchesBruteForceOracle) {
  RobustLp2d::Params prm;
  prm.m = 2;
  const RobustLp2d p(prm);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng = Rng::split(1234, seed);
    const auto data = draw_datasets(p, MultiIndex{30, 30}, rng);
    const auto z = p.solve(data);
    const auto oracle = lp_oracle(data, prm.box);
    ASSERT_TRUE(oracle.has_value());
    EXPECT_NEAR(z.cost, (*oracle)[2], 1e-9) << "seed=" << seed;
  }
}

TEST(RobustLp2d, ComplexityBoundedByDimension) {
  RobustLp2d::Params prm;
  prm.m = 2;
  const RobustLp2d p(prm);
  int degenerate = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng = Rng::split(777, seed);
    const auto data = draw_datasets(p, MultiIndex{15, 15}, rng);
    const auto out = extract_support(p, data);
    if (out.degenerate) {
      ++degenerate;
      continue;
    }
    EXPECT_LE(out.complexity.sum(), 2) << "seed=" << seed;
  }
  EXPECT_LT(degenerate, 20);  // ties have probability ~0 here
}

TEST(RobustLp2d, SupportMinimalityAgainstFullLeaveOneOut) {
  RobustLp2d::Params prm;
  prm.m = 2;
  const RobustLp2d p(prm);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Rng rng = Rng::split(4242, seed);
    const auto data = draw_datasets(p, MultiIndex{12, 10}, rng);
    const auto out = extract_support(p, data);
    if (out.degenerate) continue;
    const auto z = p.solve(data);
    for (std::size_t i = 0; i < data.lists.size(); ++i)
      for (std::size_t j = 0; j < data.lists[i].size(); ++j) {
        const auto reduced = p.solve_relaxed(data.without(i, j));
        const bool support_by_definition =
            !reduced || !p.decisions_equal(*reduced, z);
        bool listed = false;
        for (const auto& sc : out.support[i])
          if (sc.payload == data.lists[i][j].payload) listed = true;
        EXPECT_EQ(support_by_definition, listed)
            << "seed=" << seed << " scenario (" << i << "," << j << ")";
      }
  }
}

TEST(RobustLp2d, PermutationInvarianceWithinTolerance) {
  RobustLp2d::Params prm;
  prm.m = 2;
  const RobustLp2d p(prm);
  Rng rng(31);
  const auto data = draw_datasets(p, MultiIndex{25, 25}, rng);
  const auto z = p.solve(data);
  for (int t = 0; t < 50; ++t) {
    ScenarioDatasets shuffled = data;
    for (auto& l : shuffled.lists)
      for (std::size_t j = l.size(); j > 1; --j)
        std::swap(l[j - 1], l[rng.below(j)]);
    const auto zp = p.solve(shuffled);
    EXPECT_TRUE(p.decisions_equal(zp, z));
  }
}

TEST(RobustLp2d, Assumption1RandomizedChecks) {
  RobustLp2d::Params prm;
  prm.m = 2;
  const RobustLp2d p(prm);
  int responsiveness_total = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = Rng::split(9000, seed);
    const auto data = draw_datasets(p, MultiIndex{10, 10}, rng);
    const auto extra = draw_datasets(p, MultiIndex{10, 10}, rng);
    const auto rep = check_assumption1(p, data, extra, rng, 20);
    EXPECT_TRUE(rep.all_ok()) << "seed=" << seed << ": "
                              << (rep.counterexamples.empty()
                                      ? ""
                                      : rep.counterexamples[0]);
    responsiveness_total += rep.responsiveness_cases;
  }
  EXPECT_GE(responsiveness_total, 20);  // the checks did exercise case (iii)
}

TEST(RobustLp2d, QmcOracleSelfConsistency) {
  RobustLp2d::Params prm;
  prm.m = 2;
  const RobustLp2d p(prm);
  Rng rng(8);
  const auto data = draw_datasets(p, MultiIndex{20, 20}, rng);
  const auto z = p.solve(data);
  const auto e1 = p.estimate_risks(z, 1001);
  const auto e2 = p.estimate_risks(z, 2002);
  for (std::size_t i = 0; i < 2; ++i) {
    const double se =
        std::sqrt(e1.std_errors[i] * e1.std_errors[i] +
                  e2.std_errors[i] * e2.std_errors[i]) +
        1e-12;
    EXPECT_NEAR(e1.values[i], e2.values[i], 3.0 * se + 3e-4)
        << "criterion " << i + 1;
    EXPECT_GE(e1.values[i], 0.0);
    EXPECT_LE(e1.values[i], 1.0);
  }
}

TEST(RobustLp2d, QmcMatchesQuadratureOnOneInstance) {
  // V(z) = E_theta[ clamp((a(theta).z - b_lo)/(b_hi - b_lo), 0, 1) ]:
  // cross-check the QMC estimate against a fine 1-D quadrature
  RobustLp2d::Params prm;
  prm.m = 1;
  const RobustLp2d p(prm);
  RobustLp2d::Decision z{-1.4, -0.9, -2.3};
  const int nodes = 200000;
  long double acc = 0.0L;
  for (int q = 0; q < nodes; ++q) {
    const double th =
        prm.theta_lo + (prm.theta_hi - prm.theta_lo) * (q + 0.5) / nodes;
    const double lhs = std::cos(th) * z.z1 + std::sin(th) * z.z2;
    const double u = (lhs - prm.b_lo) / (prm.b_hi - prm.b_lo);
    acc += std::clamp(u, 0.0, 1.0);
  }
  const double quad = double(acc / nodes);
  const auto est = p.estimate_risks(z, 31415);
  EXPECT_NEAR(est.values[0], quad, 3.0 * est.std_errors[0] + 5e-4);
}

}  // namespace
}  // namespace scenrisk
