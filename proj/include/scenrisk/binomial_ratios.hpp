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
#include <vector>

#include "scenrisk/multi_index.hpp"

namespace scenrisk {

// Ratios of products of binomial coefficients, always in the log domain.
// N and k can reach 1e4 and the raw products overflow anything fixed-width,
// so the factorials are never formed.

// log prod_i C(N_i - j, k_i) / C(N_i, k_i)
//   = sum_i sum_{l=0}^{j-1} [log(N_i - k_i - l) - log(N_i - l)]
inline double log_binom_ratio_minus(const MultiIndex& N, const MultiIndex& k,
                                    std::int64_t j) {
  require_same_length(N, k, "log_binom_ratio_minus");
  if (!all_le(k, N))
    throw DomainError("log_binom_ratio_minus: k must be <= N componentwise");
  std::int64_t jmax = N.min();
  for (std::size_t i = 0; i < N.size(); ++i)
    jmax = std::min(jmax, N[i] - k[i]);
  if (j < 1 || j > jmax)
    throw DomainError("log_binom_ratio_minus: need 1 <= j <= min(N - k)");
  double s = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    if (k[i] == 0) continue;  // C(n,0)/C(N,0) = 1
    for (std::int64_t l = 0; l < j; ++l)
      s += std::log(double(N[i] - k[i] - l)) - std::log(double(N[i] - l));
  }
  return s;
}

// log prod_i C(N_i + j, k_i) / C(N_i, k_i)
//   = sum_i sum_{l=1}^{j} [log(N_i + l) - log(N_i - k_i + l)]  >= 0
inline double log_binom_ratio_plus(const MultiIndex& N, const MultiIndex& k,
                                   std::int64_t j) {
  require_same_length(N, k, "log_binom_ratio_plus");
  if (!all_le(k, N))
    throw DomainError("log_binom_ratio_plus: k must be <= N componentwise");
  if (j < 1) throw DomainError("log_binom_ratio_plus: need j >= 1");
  double s = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    if (k[i] == 0) continue;
    for (std::int64_t l = 1; l <= j; ++l)
      s += std::log(double(N[i] + l)) - std::log(double(N[i] - k[i] + l));
  }
  return s;
}

// Cumulative log-ratio tables shared by every evaluation of the same psi:
//   lneg[j-1] = log prod_i C(N_i - j, k_i)/C(N_i, k_i),  j = 1..min(N-k)
//   lpos[j-1] = log prod_i C(N_i + j, k_i)/C(N_i, k_i),  j = 1..jpos
struct RatioTables {
  std::vector<double> lneg;
  std::vector<double> lpos;
};

inline RatioTables make_ratio_tables(const MultiIndex& k, const MultiIndex& N,
                                     std::int64_t jneg, std::int64_t jpos) {
  RatioTables t;
  t.lneg.resize(std::size_t(std::max<std::int64_t>(jneg, 0)));
  t.lpos.resize(std::size_t(std::max<std::int64_t>(jpos, 0)));
  double acc = 0.0;
  for (std::int64_t j = 1; j <= jneg; ++j) {
    for (std::size_t i = 0; i < N.size(); ++i)
      if (k[i] > 0)
        acc += std::log(double(N[i] - k[i] - (j - 1))) -
               std::log(double(N[i] - (j - 1)));
    t.lneg[std::size_t(j - 1)] = acc;
  }
  acc = 0.0;
  for (std::int64_t j = 1; j <= jpos; ++j) {
    for (std::size_t i = 0; i < N.size(); ++i)
      if (k[i] > 0)
        acc += std::log(double(N[i] + j)) -
               std::log(double(N[i] - k[i] + j));
    t.lpos[std::size_t(j - 1)] = acc;
  }
  return t;
}

// log C(n, k) for scalar arguments, used where single coefficients (not
// ratios along a diagonal) are needed.
inline double log_binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) -
         std::lgamma(double(n - k + 1));
}

}  // namespace scenrisk
