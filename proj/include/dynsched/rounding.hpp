// Copyright 2026 The dynsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNSCHED_ROUNDING_HPP
#define DYNSCHED_ROUNDING_HPP

#include <unordered_map>
#include <vector>

#include "dynsched/core.hpp"

namespace dynsched {

// Two-stage geometric rounding of a large job size (eps*pmax <= p <= pmax),
// anchored at pmax: snap to the (1+eps)^i * eps*pmax grid, then to a
// multiple of eps*pmax, then rescale by 1/(eps*pmax). Makespan rounds both
// stages down; covering rounds up (capped at pmax). The result is an
// integer in [1, 1/eps].
Rational round_job(const Rational& p, const Rational& epsilon,
                   const Rational& pmax, Objective objective);

// Makespan: smallest power of (1+eps) >= s. Covering: largest power <= s.
Rational round_speed(const Rational& s, const Rational& epsilon,
                     Objective objective);

// A per-job placement; used to map a schedule on rounded sizes back to
// original sizes (same machine for every job, loads recomputed).
struct JobPlacement {
  long long job = 0;
  int machine = 0;
};

std::vector<Rational> unround_schedule(
    const std::vector<JobPlacement>& placements,
    const std::unordered_map<long long, Rational>& original_size,
    int machine_count);

}  // namespace dynsched

#endif  // DYNSCHED_ROUNDING_HPP
