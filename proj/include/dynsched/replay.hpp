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

#ifndef DYNSCHED_REPLAY_HPP
#define DYNSCHED_REPLAY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynsched/trace.hpp"

namespace dynsched {

enum class ReplayMode { kRounded, kNoRounding };

struct ReplayOptions {
  ReplayMode mode = ReplayMode::kRounded;
  bool oracle = false;
  std::size_t oracle_cap = 10;
  bool check_invariants = true;
};

struct StepMetrics {
  int step = 0;
  bool insert = true;
  Rational size;             // original units
  Rational objective_value;  // original sizes and speeds
  Rational opt_grid;         // governing grid value, engine units
  Rational alpha;
  long long blue_count = 0;
  long long f = 0;
  Rational F;
  Rational phi;
  Rational migration;  // original sizes
  Rational budget;     // p_j plus the potential drop
  bool ok = true;
  std::vector<std::pair<std::string, bool>> verdicts;
  std::optional<Rational> opt_star;
  std::optional<Rational> ratio;

  // Extra per-step data consumed by the acceptance suite.
  std::vector<Rational> machine_loads;     // original units
  std::vector<Rational> original_speeds;
  long long live_jobs = 0;
};

std::vector<StepMetrics> replay(const EventTrace& trace,
                                const ReplayOptions& options);

// Frozen column order:
// step,op,p,objective,opt_grid,alpha,blue_count,f,F,phi,migration,budget,ok
// with opt_star,ratio appended in oracle mode.
std::string metrics_csv(const std::vector<StepMetrics>& rows, bool oracle);

}  // namespace dynsched

#endif  // DYNSCHED_REPLAY_HPP
