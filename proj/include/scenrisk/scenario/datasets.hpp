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

#include <ostream>
#include <vector>

#include "scenrisk/multi_index.hpp"

namespace scenrisk {

// One observed uncertainty realization, labeled by the criterion it was
// collected for. The payload carries only the components that criterion
// needs; payloads are never compared across criteria.
struct LabeledScenario {
  int criterion_id = 1;  // 1-based
  std::vector<double> payload;
};

// Per-criterion ordered lists of scenarios. Lists, not sets: duplicates are
// allowed and order is preserved (decision maps must not depend on it).
struct ScenarioDatasets {
  std::vector<std::vector<LabeledScenario>> lists;

  std::size_t criteria() const { return lists.size(); }

  MultiIndex sizes() const {
    std::vector<std::int64_t> n;
    n.reserve(lists.size());
    for (const auto& l : lists) n.push_back(std::int64_t(l.size()));
    return MultiIndex(n);
  }

  void validate() const {
    if (lists.empty()) throw DomainError("ScenarioDatasets: no criteria");
    for (std::size_t i = 0; i < lists.size(); ++i)
      for (const auto& sc : lists[i])
        if (sc.criterion_id != int(i) + 1)
          throw DomainError("ScenarioDatasets: scenario labeled " +
                            std::to_string(sc.criterion_id) +
                            " stored in list " + std::to_string(i + 1));
  }

  ScenarioDatasets without(std::size_t criterion, std::size_t index) const {
    ScenarioDatasets out = *this;
    auto& l = out.lists[criterion];
    l.erase(l.begin() + std::ptrdiff_t(index));
    return out;
  }
};

// CSV dump, one row per scenario: criterion_id followed by the payload.
inline void write_datasets_csv(std::ostream& os, const ScenarioDatasets& data) {
  std::size_t width = 0;
  for (const auto& l : data.lists)
    for (const auto& sc : l) width = std::max(width, sc.payload.size());
  os << "criterion_id";
  for (std::size_t i = 1; i <= width; ++i) os << ",payload" << i;
  os << "\n";
  char buf[64];
  for (const auto& l : data.lists)
    for (const auto& sc : l) {
      os << sc.criterion_id;
      for (std::size_t i = 0; i < width; ++i) {
        if (i < sc.payload.size()) {
          std::snprintf(buf, sizeof buf, "%.15g", sc.payload[i]);
          os << ',' << buf;
        } else {
          os << ',';
        }
      }
      os << "\n";
    }
}

}  // namespace scenrisk
