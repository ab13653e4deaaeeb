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

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenrisk {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Vector of non-negative integer counts indexing the criteria. All
// inequalities between multi-indices are component-wise; note that
// "not (a < b)" is weaker than "a >= b" once m > 1.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<std::int64_t> entries)
      : entries_(std::move(entries)) {
    validate();
  }

  MultiIndex(std::initializer_list<std::int64_t> entries)
      : entries_(entries) {
    validate();
  }

  // n repeated m times, the paper's "n*1" notation.
  static MultiIndex constant(std::size_t m, std::int64_t n) {
    return MultiIndex(std::vector<std::int64_t>(m, n));
  }

  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<std::int64_t>& entries() const { return entries_; }

  std::int64_t sum() const {  // |k|, the 1-norm
    return std::accumulate(entries_.begin(), entries_.end(),
                           std::int64_t{0});
  }
  std::int64_t min() const {
    return *std::min_element(entries_.begin(), entries_.end());
  }
  std::int64_t max() const {
    return *std::max_element(entries_.begin(), entries_.end());
  }

  bool operator==(const MultiIndex& o) const = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(entries_[i]);
    }
    return s + ")";
  }

  // strict-weak order so multi-indices can key maps (lexicographic; this is
  // not the component-wise partial order)
  bool operator<(const MultiIndex& o) const {
    return entries_ < o.entries_;
  }

 private:
  void validate() const {
    if (entries_.empty())
      throw DomainError("MultiIndex must have length m >= 1");
    for (auto e : entries_)
      if (e < 0) throw DomainError("MultiIndex entries must be >= 0");
  }

  std::vector<std::int64_t> entries_;
};

inline bool all_le(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool all_lt(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= b[i]) return false;
  return true;
}

inline void require_same_length(const MultiIndex& a, const MultiIndex& b,
                                const char* what) {
  if (a.size() != b.size())
    throw DomainError(std::string(what) + ": multi-index lengths differ");
}

}  // namespace scenrisk
