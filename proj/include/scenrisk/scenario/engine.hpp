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

#include <string>
#include <utility>
#include <vector>

#include "scenrisk/scenario/datasets.hpp"
#include "scenrisk/scenario/rng.hpp"

namespace scenrisk {

template <class Problem>
struct DecisionOutcome {
  typename Problem::Decision decision;
  std::vector<std::vector<LabeledScenario>> support;  // per-criterion sub-lists
  MultiIndex complexity;                              // s*, sizes of the above
  bool degenerate = false;  // support lists fail to reproduce the decision
  std::string note;
};

template <class Problem>
ScenarioDatasets draw_datasets(const Problem& problem, const MultiIndex& N,
                               Rng& rng) {
  if (N.size() != problem.criteria())
    throw DomainError("draw_datasets: N length differs from criteria count");
  ScenarioDatasets data;
  data.lists.resize(N.size());
  for (std::size_t i = 0; i < N.size(); ++i)
    for (std::int64_t j = 0; j < N[i]; ++j)
      data.lists[i].push_back(problem.draw_scenario(int(i) + 1, rng));
  return data;
}

// A scenario is a support scenario iff removing it (keeping all others)
// changes the decision. Problems expose a candidate superset (active
// constraints, maximum attainers) so only those need the re-solve; the
// remaining scenarios provably cannot move the decision. Afterwards the
// support lists alone are re-solved to verify non-degeneracy: a mismatch is
// flagged in the outcome, never silently accepted.
template <class Problem>
DecisionOutcome<Problem> extract_support(const Problem& problem,
                                         const ScenarioDatasets& data) {
  DecisionOutcome<Problem> out;
  out.decision = problem.solve(data);
  out.support.resize(data.criteria());

  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  if constexpr (requires { problem.support_candidates(data, out.decision); }) {
    candidates = problem.support_candidates(data, out.decision);
  } else {
    for (std::size_t i = 0; i < data.lists.size(); ++i)
      for (std::size_t j = 0; j < data.lists[i].size(); ++j)
        candidates.emplace_back(i, j);
  }

  for (const auto& [i, j] : candidates) {
    const auto reduced = problem.solve_relaxed(data.without(i, j));
    if (!reduced || !problem.decisions_equal(*reduced, out.decision))
      out.support[i].push_back(data.lists[i][j]);
  }

  std::vector<std::int64_t> s;
  for (const auto& l : out.support) s.push_back(std::int64_t(l.size()));
  out.complexity = MultiIndex(s);

  ScenarioDatasets support_data;
  support_data.lists = out.support;
  const auto redo = problem.solve_relaxed(support_data);
  if (!redo || !problem.decisions_equal(*redo, out.decision)) {
    out.degenerate = true;
    out.note = "support scenarios do not reproduce the decision";
  }
  return out;
}

struct Assumption1Report {
  bool permutation_ok = true;
  bool stability_ok = true;
  bool responsiveness_ok = true;
  int responsiveness_cases = 0;  // extras that clearly violated a criterion
  std::vector<std::string> counterexamples;

  bool all_ok() const {
    return permutation_ok && stability_ok && responsiveness_ok;
  }
};

// Property-test driver for the three decision-map contracts: permutation
// invariance, stability under confirming data, responsiveness to
// contradicting data. Extras whose appropriateness at the decision is
// numerically ambiguous are skipped for the responsiveness check (they
// cannot witness a clear contradiction).
template <class Problem>
Assumption1Report check_assumption1(const Problem& problem,
                                    const ScenarioDatasets& data,
                                    const ScenarioDatasets& extra, Rng& rng,
                                    int permutations = 20) {
  Assumption1Report rep;
  const auto z = problem.solve(data);

  for (int p = 0; p < permutations; ++p) {
    ScenarioDatasets shuffled = data;
    for (auto& l : shuffled.lists)
      for (std::size_t j = l.size(); j > 1; --j)
        std::swap(l[j - 1], l[rng.below(j)]);
    const auto zp = problem.solve(shuffled);
    if (!problem.decisions_equal(zp, z)) {
      rep.permutation_ok = false;
      rep.counterexamples.push_back("permutation " + std::to_string(p) +
                                    " changed the decision");
      break;
    }
  }

  ScenarioDatasets confirmed = data;
  bool any_confirming = false;
  for (std::size_t i = 0; i < extra.lists.size() && i < data.criteria(); ++i)
    for (const auto& sc : extra.lists[i])
      if (problem.is_appropriate(z, sc)) {
        confirmed.lists[i].push_back(sc);
        any_confirming = true;
      }
  if (any_confirming) {
    const auto zc = problem.solve(confirmed);
    if (!problem.decisions_equal(zc, z)) {
      rep.stability_ok = false;
      rep.counterexamples.push_back(
          "appending only confirming scenarios changed the decision");
    }
  }

  for (std::size_t i = 0; i < extra.lists.size() && i < data.criteria(); ++i)
    for (const auto& sc : extra.lists[i]) {
      if (problem.is_appropriate(z, sc)) continue;
      if constexpr (requires { problem.violation_margin(z, sc); }) {
        if (problem.violation_margin(z, sc) < 1e-7) continue;  // ambiguous
      }
      ++rep.responsiveness_cases;
      ScenarioDatasets contradicted = data;
      contradicted.lists[i].push_back(sc);
      const auto zr = problem.solve(contradicted);
      if (problem.decisions_equal(zr, z)) {
        rep.responsiveness_ok = false;
        rep.counterexamples.push_back(
            "appending a violating scenario for criterion " +
            std::to_string(i + 1) + " left the decision unchanged");
      }
    }
  return rep;
}

}  // namespace scenrisk
