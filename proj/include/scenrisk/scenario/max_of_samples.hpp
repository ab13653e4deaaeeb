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

#include <optional>
#include <utility>
#include <vector>

#include "scenrisk/scenario/datasets.hpp"
#include "scenrisk/scenario/rng.hpp"

namespace scenrisk {

class InfeasibleProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Toy decision map: z = max over all scenarios of the observed value, with
// criterion i drawing values uniformly on [0, upper_i]. A decision is
// appropriate for criterion i under a fresh draw x iff x <= z, so the
// individual risks have the closed form V_i(z) = max(0, 1 - z/upper_i) and,
// the criteria drawing independent components, the joint risk is
// 1 - prod(1 - V_i).
class MaxOfSamples {
 public:
  using Decision = double;

  explicit MaxOfSamples(std::vector<double> upper) : upper_(std::move(upper)) {
    if (upper_.empty()) throw DomainError("MaxOfSamples: need m >= 1");
    for (double c : upper_)
      if (!(c > 0.0)) throw DomainError("MaxOfSamples: upper bounds must be > 0");
  }

  static MaxOfSamples standard(std::size_t m) {
    return MaxOfSamples(std::vector<double>(m, 1.0));
  }

  std::size_t criteria() const { return upper_.size(); }

  LabeledScenario draw_scenario(int criterion, Rng& rng) const {
    return LabeledScenario{criterion,
                           {rng.uniform(0.0, upper_[std::size_t(criterion - 1)])}};
  }

  Decision solve(const ScenarioDatasets& data) const {
    data.validate();
    if (data.criteria() != upper_.size())
      throw DomainError("MaxOfSamples: dataset criteria count mismatch");
    for (const auto& l : data.lists)
      if (l.empty())
        throw InfeasibleProblem("MaxOfSamples: every criterion needs data");
    return *solve_relaxed(data);
  }

  // Same map but tolerant of empty lists; nullopt when no scenario at all
  // (the degenerate re-solve on empty support lists lands here).
  std::optional<Decision> solve_relaxed(const ScenarioDatasets& data) const {
    bool any = false;
    double z = 0.0;
    for (const auto& l : data.lists)
      for (const auto& sc : l) {
        if (!any || sc.payload[0] > z) z = sc.payload[0];
        any = true;
      }
    if (!any) return std::nullopt;
    return z;
  }

  bool decisions_equal(Decision a, Decision b) const { return a == b; }

  bool is_appropriate(Decision z, const LabeledScenario& sc) const {
    return sc.payload[0] <= z;
  }

  // Only scenarios attaining the max can be support scenarios.
  std::vector<std::pair<std::size_t, std::size_t>> support_candidates(
      const ScenarioDatasets& data, Decision z) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < data.lists.size(); ++i)
      for (std::size_t j = 0; j < data.lists[i].size(); ++j)
        if (data.lists[i][j].payload[0] == z) out.emplace_back(i, j);
    return out;
  }

  std::vector<double> individual_risks(Decision z) const {
    std::vector<double> v;
    v.reserve(upper_.size());
    for (double c : upper_) {
      if (z <= 0.0)
        v.push_back(1.0);
      else
        v.push_back(z >= c ? 0.0 : 1.0 - z / c);
    }
    return v;
  }

  std::vector<double> risk_std_errors() const {
    return std::vector<double>(upper_.size(), 0.0);  // exact oracle
  }

  double joint_risk(const std::vector<double>& individual) const {
    double p = 1.0;
    for (double vi : individual) p *= 1.0 - vi;
    return 1.0 - p;
  }

 private:
  std::vector<double> upper_;
};

}  // namespace scenrisk
