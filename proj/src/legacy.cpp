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

#include "dynsched/legacy.hpp"

#include <algorithm>

namespace dynsched {

bool LegacySchedule::follows(const CountMatrix& hm) const {
  CountMatrix counts(hm.size(),
                     std::vector<long long>(hm.empty() ? 0 : hm[0].size(), 0));
  for (const auto& [id, machine] : machine_of_) {
    const Job& job = jobs_.at(id);
    if (machine < 0 || machine >= static_cast<int>(counts.size())) return false;
    if (job.type < 0 || job.type >= static_cast<int>(counts[machine].size())) {
      return false;
    }
    counts[machine][job.type] += 1;
  }
  return counts == hm;
}

Rational LegacySchedule::convert(const CountMatrix& prev_hm,
                                 const CountMatrix& next_hm,
                                 const std::vector<long long>& removed_ids,
                                 const std::vector<Job>& inserted) {
  if (!follows(prev_hm)) {
    throw InvariantViolation("legacy does not follow the previous schedule");
  }
  const int m = static_cast<int>(next_hm.size());
  const int d = m == 0 ? 0 : static_cast<int>(next_hm[0].size());

  for (long long id : removed_ids) {
    if (machine_of_.erase(id) == 0 || jobs_.erase(id) == 0) {
      throw NoSuchJobError("legacy: removing unknown job");
    }
  }

  // Jobs of each type currently on each machine, most recent last.
  std::vector<std::vector<std::vector<long long>>> on(
      m, std::vector<std::vector<long long>>(d));
  for (const auto& [id, machine] : machine_of_) {
    on[machine][jobs_.at(id).type].push_back(id);
  }

  // Pool: new arrivals plus the overflow of every cell above its new
  // count. The overflow per cell never exceeds the cell's count drop, so
  // at most one job migrates per unit of high-multiplicity movement.
  std::vector<long long> pool;
  for (const Job& job : inserted) {
    jobs_[job.id] = job;
    pool.push_back(job.id);
  }
  Rational migration = 0;
  std::vector<long long> pulled;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) {
      while (static_cast<long long>(on[i][j].size()) > next_hm[i][j]) {
        long long id = on[i][j].back();
        on[i][j].pop_back();
        machine_of_.erase(id);
        pulled.push_back(id);
        pool.push_back(id);
      }
    }
  }
  std::sort(pool.begin(), pool.end());

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) {
      long long need = next_hm[i][j] - static_cast<long long>(on[i][j].size());
      for (; need > 0; --need) {
        auto it = std::find_if(pool.begin(), pool.end(), [&](long long id) {
          return jobs_.at(id).type == j;
        });
        if (it == pool.end()) {
          throw InvariantViolation("legacy: pool is missing a job type");
        }
        machine_of_[*it] = i;
        pool.erase(it);
      }
    }
  }
  if (!pool.empty()) {
    throw InvariantViolation("legacy: unplaced jobs after conversion");
  }
  for (long long id : pulled) {
    // Pulled cells end at their target count; re-placement is always on a
    // different machine.
    migration += jobs_.at(id).original_size;
  }
  return migration;
}

Rational step_migration(const LegacySchedule& before,
                        const LegacySchedule& after) {
  Rational total = 0;
  for (const auto& [id, machine] : before.machine_of()) {
    auto it = after.machine_of().find(id);
    if (it != after.machine_of().end() && it->second != machine) {
      total += before.jobs().at(id).original_size;
    }
  }
  return total;
}

}  // namespace dynsched
