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

#include <cstdint>
#include <vector>

#include "scenrisk/certificates.hpp"

namespace scenrisk {

// ---------------------------------------------------------------------------
// Benchmark table: homogeneous configurations comparing the independent-sum
// joint bound against the diagonal closed form.
//
// The two columns use different confidence parameters by default (1e-7 for
// the sum, 1e-5 for the diagonal closed form): that is what the reference
// values were computed with, and both are overridable.

struct Table1Config {
  std::int64_t m;
  std::int64_t N;
  std::int64_t k;
};

inline std::vector<Table1Config> table1_configs() {
  return {{10, 1500, 4}, {40, 1500, 1},  {25, 1500, 2},
          {25, 2000, 2}, {60, 1500, 1},  {100, 3000, 1}};
}

struct Table1Row {
  Table1Config cfg;
  std::int64_t k_total = 0;
  double sum_bound_raw = 0.0;   // sum of per-criterion bounds, beta_i = beta/m
  double diag_bound_raw = 0.0;  // m (1 - t_bar^(1/m)), uncapped
  double sum_bound_capped = 1.0;
  double diag_bound_capped = 1.0;
};

inline Table1Row table1_row(const Table1Config& cfg, double beta_sum,
                            double beta_diag, double tol = kDefaultRootTol) {
  Table1Row row;
  row.cfg = cfg;
  row.k_total = cfg.m * cfg.k;
  const std::size_t m = std::size_t(cfg.m);
  double sum = 0.0;
  const double eps_i = theorem1_interval(cfg.N, cfg.k, beta_sum / double(cfg.m),
                                         Theorem1Choice::kUpperOnlyHN, tol)
                           .eps_hi;
  sum = double(cfg.m) * eps_i;  // homogeneous criteria
  row.sum_bound_raw = sum;
  row.sum_bound_capped = std::min(sum, 1.0);

  const MultiIndex N = MultiIndex::constant(m, cfg.N);
  const MultiIndex k = MultiIndex::constant(m, cfg.k);
  PsiSpec spec{k, N, N, beta_diag};
  const double tb = find_root_pair(spec, tol).t_bar;
  row.diag_bound_raw = raw_diagonal_bound(m, tb);
  row.diag_bound_capped = std::min(row.diag_bound_raw, 1.0);
  return row;
}

inline std::vector<Table1Row> table1_rows(double beta_sum = 1e-7,
                                          double beta_diag = 1e-5,
                                          double tol = kDefaultRootTol) {
  std::vector<Table1Row> rows;
  for (const auto& cfg : table1_configs())
    rows.push_back(table1_row(cfg, beta_sum, beta_diag, tol));
  return rows;
}

// ---------------------------------------------------------------------------
// A-priori bounds as a function of the number of criteria m, for homogeneous
// datasets N = N_lower * 1 and complexity capped at K*.
//
// h_factor sets H = h_factor * N uniformly across all three finite-m bounds.
// h_factor = 1 is the literal worst/best-case construction (and what
// apriori_bound_diagonal / size_datasets use); h_factor = 2 matches the
// reference study the comparison figures were produced with.

struct AprioriSweepRow {
  std::int64_t m = 0;
  double eps_independent = 0.0;  // exact max of the per-criterion sums, raw
  double eps_worst = 0.0;        // diagonal bound at the worst complexity split
  double eps_best = 0.0;         // diagonal bound at the balanced split
  double eps_uniform = 0.0;      // m-independent bound
};

namespace detail {

// eps(k) = 1 - t_bar of the scalar banded psi with H = h_factor * N,
// for k = 0..kmax
inline std::vector<double> scalar_eps_table(std::int64_t N, double beta,
                                            std::int64_t kmax,
                                            std::int64_t h_factor,
                                            double tol) {
  std::vector<double> tab;
  tab.reserve(std::size_t(kmax + 1));
  for (std::int64_t k = 0; k <= kmax; ++k) {
    PsiSpec spec{MultiIndex{k}, MultiIndex{N}, MultiIndex{h_factor * N}, beta};
    tab.push_back(1.0 - find_root_pair(spec, tol).t_bar);
  }
  return tab;
}

// max over allocations of K* among m identical criteria of sum eps(k_i):
// knapsack over the budget, at most m items with size >= 1, plus the
// baseline m * eps(0).
inline double homogeneous_indep_max(std::int64_t m, std::int64_t k_star,
                                    const std::vector<double>& tab) {
  const std::size_t B = std::size_t(k_star) + 1;
  std::vector<double> gain(B, 0.0);
  for (std::size_t j = 0; j < B && j < tab.size(); ++j)
    gain[j] = tab[j] - tab[0];
  const double NEG = -1.0;
  std::vector<double> cur(B, NEG);
  cur[0] = 0.0;
  double best = 0.0;
  const std::int64_t items = std::min<std::int64_t>(m, k_star);
  for (std::int64_t c = 0; c < items; ++c) {
    std::vector<double> nxt(B, NEG);
    bool improved = false;
    for (std::size_t b = 0; b < B; ++b) {
      if (cur[b] < 0.0) continue;
      for (std::size_t j = 1; j + b < B && j < tab.size(); ++j) {
        const double val = cur[b] + gain[j];
        if (val > nxt[b + j]) nxt[b + j] = val;
      }
    }
    for (std::size_t b = 0; b < B; ++b) {
      if (nxt[b] > cur[b]) {
        cur[b] = nxt[b];
        improved = true;
      }
      if (cur[b] > best) best = cur[b];
    }
    if (!improved) break;
  }
  return double(m) * tab[0] + best;
}

}  // namespace detail

inline AprioriSweepRow apriori_sweep_row(std::int64_t m, std::int64_t n_lower,
                                         double beta, std::int64_t k_star,
                                         std::int64_t h_factor = 2,
                                         double tol = kDefaultRootTol) {
  if (m < 1) throw DomainError("apriori_sweep: m must be >= 1");
  if (h_factor < 1) throw DomainError("apriori_sweep: h_factor must be >= 1");
  AprioriSweepRow row;
  row.m = m;

  const std::int64_t kmax = std::min(k_star, n_lower);
  const auto tab = detail::scalar_eps_table(n_lower, beta / double(m), kmax,
                                            h_factor, tol);
  row.eps_independent = detail::homogeneous_indep_max(m, k_star, tab);

  // worst split: all K* scenarios in one dataset (scalar psi at K*)
  double tb_hat = 0.0;
  if (k_star < n_lower) {
    PsiSpec spec{MultiIndex{k_star}, MultiIndex{n_lower},
                 MultiIndex{h_factor * n_lower}, beta};
    tb_hat = find_root_pair(spec, tol).t_bar;
  }
  row.eps_worst = raw_diagonal_bound(std::size_t(m), tb_hat);

  // best split: balanced complexity
  const MultiIndex kb = balanced_complexity(std::size_t(m), k_star);
  const MultiIndex N = MultiIndex::constant(std::size_t(m), n_lower);
  if (all_lt(kb, N)) {
    PsiSpec spec{kb, N, MultiIndex::constant(std::size_t(m), h_factor * n_lower),
                 beta};
    row.eps_best = raw_diagonal_bound(std::size_t(m),
                                      find_root_pair(spec, tol).t_bar);
  } else {
    row.eps_best = raw_diagonal_bound(std::size_t(m), 0.0);
  }

  row.eps_uniform = tb_hat == 0.0 ? 1.0 : std::min(-std::log(tb_hat), 1.0);
  return row;
}

inline std::vector<AprioriSweepRow> apriori_sweep(
    const std::vector<std::int64_t>& ms, std::int64_t n_lower, double beta,
    std::int64_t k_star, std::int64_t h_factor = 2,
    double tol = kDefaultRootTol) {
  std::vector<AprioriSweepRow> rows;
  rows.reserve(ms.size());
  for (std::int64_t m : ms)
    rows.push_back(apriori_sweep_row(m, n_lower, beta, k_star, h_factor, tol));
  return rows;
}

}  // namespace scenrisk
