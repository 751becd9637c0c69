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

#include "dynsched/brute_force.hpp"

#include <algorithm>

namespace dynsched {

namespace {

struct Search {
  std::vector<Rational> jobs;  // descending
  std::vector<Rational> speeds;
  Objective objective;
  std::vector<Rational> loads;
  Rational best;
  bool have_best = false;

  Rational objective_of_loads() const {
    Rational value = loads[0] / speeds[0];
    for (std::size_t i = 1; i < loads.size(); ++i) {
      Rational c = loads[i] / speeds[i];
      if (objective == Objective::kMakespan ? c > value : c < value) value = c;
    }
    return value;
  }

  void run(std::size_t j) {
    if (j == jobs.size()) {
      Rational value = objective_of_loads();
      if (!have_best ||
          (objective == Objective::kMakespan ? value < best : value > best)) {
        best = value;
        have_best = true;
      }
      return;
    }
    for (std::size_t i = 0; i < loads.size(); ++i) {
      // skip machines indistinguishable from an earlier one
      bool duplicate = false;
      for (std::size_t k = 0; k < i; ++k) {
        if (speeds[k] == speeds[i] && loads[k] == loads[i]) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      if (objective == Objective::kMakespan && have_best &&
          (loads[i] + jobs[j]) / speeds[i] >= best) {
        continue;
      }
      loads[i] += jobs[j];
      run(j + 1);
      loads[i] -= jobs[j];
    }
  }
};

}  // namespace

Rational brute_force_opt(const std::vector<Rational>& jobs,
                         const std::vector<Rational>& speeds,
                         Objective objective, std::size_t cap) {
  if (jobs.size() > cap) throw CapacityError("brute force cap exceeded");
  if (speeds.empty()) throw InputError("brute force needs machines");
  if (jobs.empty()) return 0;
  Search s;
  s.jobs = jobs;
  std::sort(s.jobs.begin(), s.jobs.end(),
            [](const Rational& a, const Rational& b) { return a > b; });
  s.speeds = speeds;
  s.objective = objective;
  s.loads.assign(speeds.size(), Rational(0));
  s.run(0);
  return s.best;
}

}  // namespace dynsched
