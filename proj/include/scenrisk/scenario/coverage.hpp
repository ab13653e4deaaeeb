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
#include <vector>

#include "scenrisk/certificates.hpp"
#include "scenrisk/scenario/engine.hpp"
#include "scenrisk/scenario/max_of_samples.hpp"
#include "scenrisk/scenario/robust_lp2d.hpp"
#include "scenrisk/serialize.hpp"

namespace scenrisk {

enum class CertificateKind { kIndependentBox, kDiagonalBand };

inline const char* certificate_kind_name(CertificateKind k) {
  return k == CertificateKind::kIndependentBox ? "box" : "diagonal";
}

struct CoverageReport {
  std::int64_t trials = 0;  // counted trials (degenerate/failed excluded)
  std::int64_t hits = 0;
  std::int64_t requested_trials = 0;
  std::int64_t excluded_degenerate = 0;
  std::int64_t failed = 0;
  double empirical_coverage = 0.0;  // hits / trials
  double target = 0.0;              // 1 - beta
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  std::map<MultiIndex, std::int64_t> complexity_histogram;
  std::vector<double> mean_true_risks;  // per criterion, over counted trials
  double mean_joint_risk = 0.0;
  double mean_joint_bound = 0.0;  // certificate bound, for tightness monitoring
  std::uint64_t seed = 0;

  // statistical acceptance: coverage must not fall below target - 3 sigma
  double three_sigma_floor() const {
    if (trials == 0) return 0.0;
    return target - 3.0 * std::sqrt(target * (1.0 - target) / double(trials));
  }
  bool passes() const { return empirical_coverage >= three_sigma_floor(); }
};

inline void wilson_interval(std::int64_t hits, std::int64_t n, double* lo,
                            double* hi) {
  if (n == 0) {
    *lo = 0.0;
    *hi = 1.0;
    return;
  }
  const double z = 1.959963984540054;  // 95%
  const double p = double(hits) / double(n);
  const double z2n = z * z / double(n);
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half =
      z * std::sqrt(p * (1.0 - p) / double(n) + z2n / (4.0 * double(n))) /
      (1.0 + z2n);
  *lo = std::max(0.0, center - half);
  *hi = std::min(1.0, center + half);
}

namespace detail {

inline std::vector<double> oracle_risks(const MaxOfSamples& p, double z,
                                        std::uint64_t) {
  return p.individual_risks(z);
}

inline std::vector<double> oracle_risks(const RobustLp2d& p,
                                        const RobustLp2d::Decision& z,
                                        std::uint64_t seed) {
  return p.estimate_risks(z, seed).values;
}

}  // namespace detail

// Repeats: draw fresh i.i.d. datasets, solve, read off the complexity, build
// the requested certificate at the observed s*, and check whether the
// guaranteed event holds for the true risk vector. Degenerate extractions
// are excluded from the coverage count and reported; failed solves likewise.
// Trials use split generators, so the report depends only on the seed.
template <class Problem>
CoverageReport coverage_experiment(const Problem& problem, const MultiIndex& N,
                                   double beta, std::int64_t trials,
                                   CertificateKind kind, std::uint64_t seed) {
  if (trials < 1) throw DomainError("coverage_experiment: trials must be >= 1");
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("coverage_experiment: beta must lie in (0,1)");
  if (N.size() != problem.criteria())
    throw DomainError("coverage_experiment: N length mismatch");

  CoverageReport rep;
  rep.requested_trials = trials;
  rep.target = 1.0 - beta;
  rep.seed = seed;
  rep.mean_true_risks.assign(N.size(), 0.0);
  const std::size_t m = N.size();

  struct Cached {
    RegionCertificate region;
    double joint_bound;
  };
  std::map<MultiIndex, Cached> cache;

  auto certificate_for = [&](const MultiIndex& s) -> const Cached& {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    Cached c;
    if (kind == CertificateKind::kDiagonalBand) {
      c.region = diagonal_region(N, N, s, beta);
      c.joint_bound = joint_bound_diagonal(N, s, beta).bound;
    } else {
      std::vector<PerCriterion> pcs;
      for (std::size_t i = 0; i < m; ++i)
        pcs.push_back({N[i], s[i], beta / double(m)});
      c.region = box_region(pcs);
      c.joint_bound = joint_bound_independent(pcs).bound;
    }
    return cache.emplace(s, std::move(c)).first->second;
  };

  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::split(seed, std::uint64_t(t));
    const auto data = draw_datasets(problem, N, rng);
    DecisionOutcome<Problem> outcome;
    try {
      outcome = extract_support(problem, data);
    } catch (const InfeasibleProblem&) {
      ++rep.failed;
      continue;
    }
    if (outcome.degenerate) {
      ++rep.excluded_degenerate;
      continue;
    }
    const auto& cached = certificate_for(outcome.complexity);
    const auto risks = detail::oracle_risks(problem, outcome.decision,
                                            seed ^ (0x51ab5eed + t));
    ++rep.trials;
    rep.complexity_histogram[outcome.complexity] += 1;
    for (std::size_t i = 0; i < m; ++i) rep.mean_true_risks[i] += risks[i];
    rep.mean_joint_risk += problem.joint_risk(risks);
    rep.mean_joint_bound += cached.joint_bound;
    if (cached.region.contains(risks)) ++rep.hits;
  }

  if (rep.trials > 0) {
    rep.empirical_coverage = double(rep.hits) / double(rep.trials);
    for (auto& v : rep.mean_true_risks) v /= double(rep.trials);
    rep.mean_joint_risk /= double(rep.trials);
    rep.mean_joint_bound /= double(rep.trials);
  }
  wilson_interval(rep.hits, rep.trials, &rep.wilson_lo, &rep.wilson_hi);
  return rep;
}

inline Json to_json(const CoverageReport& r) {
  Json j;
  j["type"] = "coverage_report";
  j["trials"] = r.trials;
  j["hits"] = r.hits;
  j["requested_trials"] = r.requested_trials;
  j["excluded_degenerate"] = r.excluded_degenerate;
  j["failed"] = r.failed;
  j["empirical_coverage"] = real_str(r.empirical_coverage);
  j["target"] = real_str(r.target);
  j["wilson_lo"] = real_str(r.wilson_lo);
  j["wilson_hi"] = real_str(r.wilson_hi);
  Json hist = Json::array();
  for (const auto& [s, count] : r.complexity_histogram)
    hist.push_back(Json{{"complexity", to_json(s)}, {"count", count}});
  j["complexity_histogram"] = hist;
  Json risks = Json::array();
  for (double v : r.mean_true_risks) risks.push_back(real_str(v));
  j["mean_true_risks"] = risks;
  j["mean_joint_risk"] = real_str(r.mean_joint_risk);
  j["mean_joint_bound"] = real_str(r.mean_joint_bound);
  j["seed"] = r.seed;
  return j;
}

}  // namespace scenrisk
