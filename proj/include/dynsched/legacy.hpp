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

#ifndef DYNSCHED_LEGACY_HPP
#define DYNSCHED_LEGACY_HPP

#include <map>
#include <vector>

#include "dynsched/rational.hpp"

namespace dynsched {

// Machine x type counts of a high-multiplicity schedule.
using CountMatrix = std::vector<std::vector<long long>>;

// Per-job schedule that follows the high-multiplicity schedule: for every
// (machine, type), the number of jobs here equals the matrix count.
class LegacySchedule {
 public:
  struct Job {
    long long id;
    int type;
    Rational original_size;
  };

  const std::map<long long, int>& machine_of() const { return machine_of_; }
  const std::map<long long, Job>& jobs() const { return jobs_; }

  bool follows(const CountMatrix& hm) const;

  // Rebuilds the assignment to follow `next_hm`, taking the previous matrix
  // `prev_hm` as the anchor: at most one job of type t moves per unit of
  // count decrease at a (machine, t) cell. Returns the migration, i.e. the
  // total original size of jobs present before and after whose machine
  // changed.
  Rational convert(const CountMatrix& prev_hm, const CountMatrix& next_hm,
                   const std::vector<long long>& removed_ids,
                   const std::vector<Job>& inserted);

 private:
  std::map<long long, int> machine_of_;
  std::map<long long, Job> jobs_;
};

// Total original size of jobs present in both schedules whose machine
// differs.
Rational step_migration(const LegacySchedule& before,
                        const LegacySchedule& after);

}  // namespace dynsched

#endif  // DYNSCHED_LEGACY_HPP
