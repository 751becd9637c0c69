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

#ifndef DYNSCHED_BLUE_GREEDY_HPP
#define DYNSCHED_BLUE_GREEDY_HPP

#include <map>
#include <vector>

#include "dynsched/core.hpp"

namespace dynsched {

// Concrete assignment of the aggregate-constraint ("blue") jobs onto the
// blue machines. Kept proportional: every blue machine i satisfies
// |load_i - s_i * A| <= pmax for A = total blue load / total blue speed.
struct BlueAssignment {
  // machine id -> job counts per type; only current blue machines appear
  std::map<int, std::vector<long long>> per_machine;

  Rational load_of(const std::vector<Rational>& sizes, int machine) const;
};

struct BlueSyncResult {
  BlueAssignment assignment;
  Rational moved_load;  // total size of jobs that changed machine
};

// Rebuilds the assignment for a new target job vector and blue machine set.
// Jobs on machines leaving the blue set and jobs above the per-type target
// are pulled; pulled and new jobs are placed one at a time on the machine
// with the largest deficit s_i*A - load_i; a rebalance loop then moves
// single jobs from the largest-surplus to the largest-deficit machine while
// any |load_i - s_i*A| > pmax.
BlueSyncResult sync_blue(const Instance& inst, const BlueAssignment& prev,
                         const std::vector<long long>& target_jobs,
                         const std::vector<std::pair<int, int>>& blue_machines);

}  // namespace dynsched

#endif  // DYNSCHED_BLUE_GREEDY_HPP
