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

#include "dynsched/blue_greedy.hpp"

#include <algorithm>

namespace dynsched {

Rational BlueAssignment::load_of(const std::vector<Rational>& sizes,
                                 int machine) const {
  Rational load = 0;
  auto it = per_machine.find(machine);
  if (it == per_machine.end()) return load;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (it->second[j] != 0) load += sizes[j] * Rational(it->second[j]);
  }
  return load;
}

BlueSyncResult sync_blue(const Instance& inst, const BlueAssignment& prev,
                         const std::vector<long long>& target_jobs,
                         const std::vector<std::pair<int, int>>& blue_machines) {
  const int d = inst.type_count();
  if (static_cast<int>(target_jobs.size()) != d) {
    throw InputError("sync_blue: bad target dimension");
  }
  bool any_target = false;
  for (long long v : target_jobs) any_target = any_target || v > 0;
  if (blue_machines.empty()) {
    if (any_target) {
      throw InvariantViolation("blue jobs without blue machines");
    }
    BlueSyncResult r;
    // jobs on departing machines left the blue side entirely
    for (const auto& [id, counts] : prev.per_machine) {
      for (int j = 0; j < d; ++j) {
        if (counts[j] != 0) r.moved_load += inst.sizes[j] * Rational(counts[j]);
      }
    }
    return r;
  }

  // Proportional fill level for the target volume.
  Rational total_load = 0;
  for (int j = 0; j < d; ++j) {
    total_load += inst.sizes[j] * Rational(target_jobs[j]);
  }
  Rational speed_sum = 0;
  for (const auto& [id, type] : blue_machines) {
    speed_sum += inst.speeds[type];
  }
  const Rational fill = total_load / speed_sum;

  BlueAssignment next;
  std::map<int, Rational> goal;   // s_i * fill per machine
  std::map<int, Rational> loads;
  for (const auto& [id, type] : blue_machines) {
    auto it = prev.per_machine.find(id);
    next.per_machine[id] =
        it != prev.per_machine.end() ? it->second : std::vector<long long>(d, 0);
    goal[id] = inst.speeds[type] * fill;
  }
  for (const auto& [id, counts] : next.per_machine) {
    Rational load = 0;
    for (int j = 0; j < d; ++j) {
      if (counts[j] != 0) load += inst.sizes[j] * Rational(counts[j]);
    }
    loads[id] = load;
  }

  // Pull per-type surplus (staying machines) into the placement pool;
  // jobs of departed machines are re-placed as well.
  std::vector<long long> pool(d, 0);
  for (int j = 0; j < d; ++j) {
    long long have = 0;
    for (const auto& [id, counts] : next.per_machine) have += counts[j];
    if (have > target_jobs[j]) {
      long long surplus = have - target_jobs[j];
      while (surplus > 0) {
        int pick = -1;
        for (const auto& [id, counts] : next.per_machine) {
          if (counts[j] == 0) continue;
          if (pick < 0 || loads[id] > loads[pick]) pick = id;
        }
        next.per_machine[pick][j] -= 1;
        loads[pick] -= inst.sizes[j];
        --surplus;
      }
    } else {
      pool[j] = target_jobs[j] - have;
    }
  }

  // Deficit-greedy placement, largest sizes first, ties to the lowest id.
  std::vector<int> by_size(d);
  for (int j = 0; j < d; ++j) by_size[j] = j;
  std::sort(by_size.begin(), by_size.end(), [&](int a, int b) {
    if (inst.sizes[a] != inst.sizes[b]) return inst.sizes[a] > inst.sizes[b];
    return a < b;
  });
  for (int j : by_size) {
    for (long long u = 0; u < pool[j]; ++u) {
      int pick = -1;
      Rational best;
      for (const auto& [id, counts] : next.per_machine) {
        (void)counts;
        Rational deficit = goal[id] - loads[id];
        if (pick < 0 || deficit > best) {
          pick = id;
          best = deficit;
        }
      }
      next.per_machine[pick][j] += 1;
      loads[pick] += inst.sizes[j];
    }
  }

  // Rebalance until every machine is within pmax of its proportional load.
  for (long long guard = 0;; ++guard) {
    if (guard > 1'000'000) {
      throw InvariantViolation("blue rebalance failed to settle");
    }
    int hi = -1, lo = -1;
    for (const auto& [id, counts] : next.per_machine) {
      (void)counts;
      if (hi < 0 || loads[id] - goal[id] > loads[hi] - goal[hi]) hi = id;
      if (lo < 0 || loads[id] - goal[id] < loads[lo] - goal[lo]) lo = id;
    }
    Rational worst = max(abs(loads[hi] - goal[hi]), abs(loads[lo] - goal[lo]));
    if (worst <= inst.pmax) break;
    // Largest job on the surplus machine that lands within pmax above the
    // deficit machine's goal; the smallest job otherwise.
    int job = -1;
    for (int j : by_size) {
      if (next.per_machine[hi][j] == 0) continue;
      if (loads[lo] + inst.sizes[j] - goal[lo] <= inst.pmax) {
        job = j;
        break;
      }
    }
    if (job < 0) {
      for (auto it = by_size.rbegin(); it != by_size.rend(); ++it) {
        if (next.per_machine[hi][*it] > 0) {
          job = *it;
          break;
        }
      }
    }
    if (job < 0) {
      throw InvariantViolation("blue rebalance stuck on empty surplus");
    }
    next.per_machine[hi][job] -= 1;
    loads[hi] -= inst.sizes[job];
    next.per_machine[lo][job] += 1;
    loads[lo] += inst.sizes[job];
  }

  // Migration as the minimal per-type matching between the two count
  // matrices; jobs that left the blue side altogether are not migration.
  BlueSyncResult result;
  result.assignment = std::move(next);
  for (int j = 0; j < d; ++j) {
    long long out = 0;
    long long prev_total = 0;
    for (const auto& [id, counts] : prev.per_machine) {
      prev_total += counts[j];
      auto it = result.assignment.per_machine.find(id);
      long long now = it == result.assignment.per_machine.end()
                          ? 0
                          : it->second[j];
      if (counts[j] > now) out += counts[j] - now;
    }
    long long removed = std::max<long long>(0, prev_total - target_jobs[j]);
    long long moved = out - removed;
    if (moved > 0) result.moved_load += inst.sizes[j] * Rational(moved);
  }
  return result;
}

}  // namespace dynsched
