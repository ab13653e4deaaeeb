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

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "scenrisk/scenario/datasets.hpp"
#include "scenrisk/scenario/max_of_samples.hpp"  // InfeasibleProblem
#include "scenrisk/scenario/rng.hpp"

namespace scenrisk {

// Robust LP in the plane: minimize z1 + z2 over the box [-B, B]^2 subject
// to one half-plane per scenario,
//
//     cos(theta) z1 + sin(theta) z2 <= b,   theta ~ U[pi, 3pi/2], b ~ U[1, 2].
//
// Solved exactly by enumerating all constraint-pair vertices and filtering
// by feasibility; exactness and determinism matter more than speed in a
// validation harness. The origin is always feasible (b >= 1), so with the
// box the feasible set is a nonempty compact polygon.
class RobustLp2d {
 public:
  struct Decision {
    double z1 = 0.0;
    double z2 = 0.0;
    double cost = 0.0;
  };

  struct Params {
    std::size_t m = 2;
    double theta_lo = M_PI;
    double theta_hi = 1.5 * M_PI;
    double b_lo = 1.0;
    double b_hi = 2.0;
    double box = 10.0;
    double decision_tol = 1e-9;  // max-norm equality tolerance
  };

  RobustLp2d() : RobustLp2d(Params{}) {}
  explicit RobustLp2d(Params p) : p_(p) {
    if (p_.m < 1) throw DomainError("RobustLp2d: need m >= 1");
  }

  const Params& params() const { return p_; }
  std::size_t criteria() const { return p_.m; }

  LabeledScenario draw_scenario(int criterion, Rng& rng) const {
    return LabeledScenario{
        criterion,
        {rng.uniform(p_.theta_lo, p_.theta_hi), rng.uniform(p_.b_lo, p_.b_hi)}};
  }

  Decision solve(const ScenarioDatasets& data) const {
    data.validate();
    if (data.criteria() != p_.m)
      throw DomainError("RobustLp2d: dataset criteria count mismatch");
    for (const auto& l : data.lists)
      if (l.empty())
        throw InfeasibleProblem("RobustLp2d: every criterion needs data");
    auto d = solve_relaxed(data);
    if (!d) throw InfeasibleProblem("RobustLp2d: no feasible vertex");
    return *d;
  }

  std::optional<Decision> solve_relaxed(const ScenarioDatasets& data) const {
    struct Row {
      double ax, ay, b;
    };
    std::vector<Row> rows;
    for (const auto& l : data.lists)
      for (const auto& sc : l)
        rows.push_back(
            {std::cos(sc.payload[0]), std::sin(sc.payload[0]), sc.payload[1]});
    const double B = p_.box;
    rows.push_back({1.0, 0.0, B});
    rows.push_back({-1.0, 0.0, B});
    rows.push_back({0.0, 1.0, B});
    rows.push_back({0.0, -1.0, B});

    auto feasible = [&](double z1, double z2) {
      for (const auto& r : rows) {
        const double slack = r.b - (r.ax * z1 + r.ay * z2);
        if (slack < -1e-9 * (1.0 + std::abs(r.b))) return false;
      }
      return true;
    };

    std::optional<Decision> best;
    auto offer = [&](double z1, double z2) {
      if (!feasible(z1, z2)) return;
      const double cost = z1 + z2;
      if (!best || cost < best->cost ||
          (cost == best->cost &&
           (z1 < best->z1 || (z1 == best->z1 && z2 < best->z2))))
        best = Decision{z1, z2, cost};
    };

    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        const double det = rows[i].ax * rows[j].ay - rows[i].ay * rows[j].ax;
        if (std::abs(det) < 1e-12) continue;
        // Cramer quotients commute with row swaps exactly (both numerator
        // and denominator just flip sign), so the result is permutation
        // invariant bit for bit.
        offer((rows[i].b * rows[j].ay - rows[j].b * rows[i].ay) / det,
              (rows[i].ax * rows[j].b - rows[j].ax * rows[i].b) / det);
      }
    return best;
  }

  bool decisions_equal(const Decision& a, const Decision& b) const {
    return std::abs(a.z1 - b.z1) <= p_.decision_tol &&
           std::abs(a.z2 - b.z2) <= p_.decision_tol;
  }

  bool is_appropriate(const Decision& z, const LabeledScenario& sc) const {
    return std::cos(sc.payload[0]) * z.z1 + std::sin(sc.payload[0]) * z.z2 <=
           sc.payload[1];
  }

  double violation_margin(const Decision& z, const LabeledScenario& sc) const {
    return std::cos(sc.payload[0]) * z.z1 + std::sin(sc.payload[0]) * z.z2 -
           sc.payload[1];
  }

  // Support scenarios are necessarily active at the (unique) optimum:
  // removing a constraint slack at z* cannot improve the optimal value.
  std::vector<std::pair<std::size_t, std::size_t>> support_candidates(
      const ScenarioDatasets& data, const Decision& z) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < data.lists.size(); ++i)
      for (std::size_t j = 0; j < data.lists[i].size(); ++j) {
        const auto& sc = data.lists[i][j];
        const double lhs =
            std::cos(sc.payload[0]) * z.z1 + std::sin(sc.payload[0]) * z.z2;
        if (std::abs(lhs - sc.payload[1]) <=
            1e-7 * (1.0 + std::abs(sc.payload[1])))
          out.emplace_back(i, j);
      }
    return out;
  }

  // V_i(z) = P{ cos(theta) z1 + sin(theta) z2 > b } by randomized
  // quasi-Monte Carlo: Halton points in (theta, b) under independent
  // Cranley-Patterson rotations, one per stream; the spread of the stream
  // means gives the standard error.
  struct RiskEstimate {
    std::vector<double> values;
    std::vector<double> std_errors;
  };

  RiskEstimate estimate_risks(const Decision& z, std::uint64_t seed,
                              std::size_t total_points = 1 << 20,
                              std::size_t streams = 8) const {
    RiskEstimate est;
    const std::size_t n = std::max<std::size_t>(total_points / streams, 1);
    for (std::size_t i = 0; i < p_.m; ++i) {
      double mean = 0.0, mean2 = 0.0;
      for (std::size_t s = 0; s < streams; ++s) {
        Rng shift_rng = Rng::split(seed, i * streams + s);
        const double s1 = shift_rng.uniform(), s2 = shift_rng.uniform();
        std::size_t violations = 0;
        for (std::size_t q = 0; q < n; ++q) {
          double u1 = halton(q + 1, 2) + s1;
          if (u1 >= 1.0) u1 -= 1.0;
          double u2 = halton(q + 1, 3) + s2;
          if (u2 >= 1.0) u2 -= 1.0;
          const double th = p_.theta_lo + (p_.theta_hi - p_.theta_lo) * u1;
          const double b = p_.b_lo + (p_.b_hi - p_.b_lo) * u2;
          if (std::cos(th) * z.z1 + std::sin(th) * z.z2 > b) ++violations;
        }
        const double v = double(violations) / double(n);
        mean += v;
        mean2 += v * v;
      }
      mean /= double(streams);
      mean2 /= double(streams);
      const double var = std::max(0.0, mean2 - mean * mean);
      est.values.push_back(mean);
      est.std_errors.push_back(std::sqrt(var / double(streams)));
    }
    return est;
  }

  std::vector<double> individual_risks(const Decision& z,
                                       std::uint64_t seed = 0x9c0ffee1) const {
    return estimate_risks(z, seed).values;
  }

  double joint_risk(const std::vector<double>& individual) const {
    double p = 1.0;
    for (double vi : individual) p *= 1.0 - vi;
    return 1.0 - p;
  }

 private:
  static double halton(std::size_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
      f /= double(base);
      r += f * double(index % base);
      index /= base;
    }
    return r;
  }

  Params p_;
};

}  // namespace scenrisk
