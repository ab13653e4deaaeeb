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

#include "scenrisk/allocations.hpp"
#include "scenrisk/binomial_ratios.hpp"
#include "scenrisk/certificates.hpp"
#include "scenrisk/multi_index.hpp"
#include "scenrisk/psi.hpp"
#include "scenrisk/scenario/coverage.hpp"
#include "scenrisk/scenario/engine.hpp"
#include "scenrisk/scenario/max_of_samples.hpp"
#include "scenrisk/scenario/robust_lp2d.hpp"
#include "scenrisk/serialize.hpp"
#include "scenrisk/studies.hpp"
