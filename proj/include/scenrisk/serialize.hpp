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

#include <cstdio>
#include <string>

#include <json.hpp>

#include "scenrisk/certificates.hpp"

namespace scenrisk {

// Insertion-ordered JSON so identical inputs serialize to identical bytes.
using Json = nlohmann::ordered_json;

// Reals travel as decimal strings with 15 significant digits; multi-indices
// as integer arrays. See docs/formats.md for the full schemas.
inline std::string real_str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline Json to_json(const MultiIndex& k) {
  Json a = Json::array();
  for (auto e : k.entries()) a.push_back(e);
  return a;
}

inline Json to_json(const RootPair& rp) {
  Json j;
  j["t_bar"] = real_str(rp.t_bar);
  j["t_underbar"] = real_str(rp.t_underbar);
  return j;
}

inline Json to_json(const IntervalBound& b) {
  Json j;
  j["eps_lo"] = real_str(b.eps_lo);
  j["eps_hi"] = real_str(b.eps_hi);
  j["k"] = b.k;
  j["N"] = b.N;
  j["beta"] = real_str(b.beta);
  return j;
}

inline Json to_json(const RegionCertificate& c) {
  Json j;
  j["type"] = "region_certificate";
  j["kind"] = region_kind_name(c.kind);
  j["confidence"] = real_str(c.confidence);
  j["k"] = to_json(c.k);
  j["N"] = to_json(c.N);
  j["H"] = to_json(c.H);
  switch (c.kind) {
    case RegionKind::kIndependentBox: {
      Json arr = Json::array();
      for (const auto& b : c.box) arr.push_back(to_json(b));
      j["payload"] = Json{{"intervals", arr}};
      break;
    }
    case RegionKind::kDiagonalBand:
      j["payload"] = Json{{"band", to_json(c.band)}};
      break;
    case RegionKind::kGeneralAllocation:
      j["payload"] = Json{{"scheme", scheme_name(c.alloc->scheme)},
                          {"beta", real_str(c.alloc->beta)}};
      break;
  }
  return j;
}

inline Json to_json(const JointRiskCertificate& c) {
  Json j;
  j["type"] = "joint_risk_certificate";
  j["method"] = joint_method_name(c.method);
  j["bound"] = real_str(c.bound);
  j["confidence"] = real_str(c.confidence);
  Json inputs;
  if (c.k) inputs["k"] = to_json(*c.k);
  if (c.k_star >= 0) inputs["k_star"] = c.k_star;
  inputs["N"] = to_json(c.N);
  inputs["beta"] = real_str(c.beta);
  j["inputs"] = inputs;
  return j;
}

// CSV contract for exported region grids: header `v1,...,vm,member,g_value`
// (plus any extra columns the caller appends, e.g. the box overlay).
inline std::string region_grid_header(std::size_t m,
                                      const std::string& extra = "") {
  std::string h;
  for (std::size_t i = 1; i <= m; ++i) h += "v" + std::to_string(i) + ",";
  h += "member,g_value";
  if (!extra.empty()) h += "," + extra;
  return h;
}

}  // namespace scenrisk
