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

#include "dynsched/rounding.hpp"

namespace dynsched {

Rational round_job(const Rational& p, const Rational& epsilon,
                   const Rational& pmax, Objective objective) {
  const Rational unit = epsilon * pmax;
  if (p < unit || p > pmax) {
    throw InputError("round_job needs eps*pmax <= p <= pmax");
  }
  PowerGrid grid(epsilon);
  // Stage 1 on the grid (1+eps)^i * unit, stage 2 on multiples of unit.
  Rational scaled = p / unit;  // >= 1
  if (objective == Objective::kMakespan) {
    Rational stage1 = grid.prev_weak(scaled) * unit;
    Rational stage2 = stage1.floor_to_multiple(unit);
    return stage2 / unit;
  }
  Rational stage1 = grid.next(scaled) * unit;
  Rational stage2 = stage1.ceil_to_multiple(unit);
  if (stage2 > pmax) stage2 = pmax;  // pmax is on the stage-2 grid
  return stage2 / unit;
}

Rational round_speed(const Rational& s, const Rational& epsilon,
                     Objective objective) {
  if (s.sign() <= 0) throw InputError("speed must be positive");
  PowerGrid grid(epsilon);
  return objective == Objective::kMakespan ? grid.next(s) : grid.prev_weak(s);
}

std::vector<Rational> unround_schedule(
    const std::vector<JobPlacement>& placements,
    const std::unordered_map<long long, Rational>& original_size,
    int machine_count) {
  std::vector<Rational> loads(machine_count, Rational(0));
  for (const JobPlacement& p : placements) {
    auto it = original_size.find(p.job);
    if (it == original_size.end()) {
      throw InvariantViolation("job without an original size");
    }
    if (p.machine < 0 || p.machine >= machine_count) {
      throw InputError("placement on unknown machine");
    }
    loads[p.machine] += it->second;
  }
  return loads;
}

}  // namespace dynsched
