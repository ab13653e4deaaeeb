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

// Walks through the certificate API for a two-criterion decision with
// N = (800, 1200) scenarios and observed complexity (120, 80).

#include <iostream>

#include "scenrisk/scenrisk.hpp"

int main() {
  using namespace scenrisk;

  const MultiIndex N{800, 1200};
  const MultiIndex k{120, 80};
  const double beta = 1e-5;

  const auto band = diagonal_region(N, N, k, beta);
  std::cout << "diagonal band certificate:\n"
            << to_json(band).dump(2) << "\n\n";

  const auto joint = joint_bound_diagonal(N, k, beta);
  std::cout << "joint risk bound (collective): " << joint.bound << "\n";

  const auto indep = joint_bound_independent(
      {{N[0], k[0], beta / 2}, {N[1], k[1], beta / 2}});
  std::cout << "joint risk bound (independent sum): " << indep.bound << "\n\n";

  const auto apriori = apriori_bound_diagonal(N, beta, /*k_star=*/200);
  std::cout << "a-priori bound for any complexity up to 200: "
            << apriori.bound << "\n";

  SizingRequest req;
  req.m = 2;
  req.k_star = 200;
  req.beta = beta;
  req.eps_target = 0.25;
  const auto n_lower = size_datasets(req);
  std::cout << "scenarios per criterion for a 0.25 joint-risk target: "
            << n_lower << "\n";
  return 0;
}
