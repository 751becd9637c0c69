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

#include "dynsched/engine_cmax.hpp"

namespace dynsched {

CmaxEngine::CmaxEngine(const Instance& inst, LexSolver& solver)
    : inst_(inst), solver_(solver) {
  if (inst.objective != Objective::kMakespan) {
    throw ConfigurationError("makespan engine on a covering instance");
  }
  state_.alpha = 0;
  state_.blue_machines.assign(inst.speeds.size(), 0);
  state_.jobs.assign(inst.sizes.size(), 0);
}

State CmaxEngine::try_btr(long long k, State s, EngineStep* step) {
  bool any_blue = false;
  for (long long b : s.blue_machines) any_blue = any_blue || b > 0;
  if (!any_blue) return s;
  const Rational opt_plus = solver_.opt_bounds(s.jobs).opt_plus;
  auto t = solver_.critical_type(opt_plus);
  if (!t) return s;
  long long kk = std::min(k, s.blue_machines[*t]);
  if (kk == 0) return s;
  s.blue_machines[*t] -= kk;
  s.alpha -= (Rational(1) + inst_.epsilon) * Rational(kk) *
             inst_.speeds[*t] * opt_plus;
  if (step != nullptr) {
    step->recolours.push_back({*t, kk, false, opt_plus});
  }
  return s;
}

EngineStep CmaxEngine::insert(int job_type) {
  if (job_type < 0 || job_type >= inst_.type_count()) {
    throw InputError("insert: job type out of range");
  }
  EngineStep step;
  step.before = state_;
  step.job_type = job_type;
  step.inserted = true;

  State s = state_;
  const Rational& pj = inst_.sizes[job_type];
  const Rational one_eps = Rational(1) + inst_.epsilon;
  std::vector<long long> jobs_plus = s.jobs;
  jobs_plus[job_type] += 1;

  const Rational old_plus = solver_.opt_bounds(s.jobs).opt_plus;
  const OptBounds new_bounds = solver_.opt_bounds(jobs_plus);
  step.grid_before = old_plus;
  step.grid_after = new_bounds.opt_plus;

  if (new_bounds.opt_plus == old_plus) {
    // A p_j-free state admits the job with unchanged parameters; testing
    // the candidate state directly also covers states whose red side can
    // absorb the job without any blue slack.
    State candidate = s;
    candidate.jobs = jobs_plus;
    if (!solver_.is_valid(candidate)) {
      Rational area =
          one_eps * new_bounds.opt_plus * inst_.blue_speed_sum(s.blue_machines);
      s.alpha = min(area, s.alpha + pj);
      candidate.alpha = s.alpha;
      if (!solver_.is_valid(candidate)) {
        auto t = solver_.critical_type(old_plus);
        if (!t || s.blue_machines[*t] == inst_.machine_counts[*t]) {
          throw InvariantViolation(
              "insert: no critical machine left to recolour");
        }
        s.blue_machines[*t] += 1;
        s.alpha += inst_.speeds[*t] * old_plus + inst_.pmax;
        step.recolours.push_back({*t, 1, true, old_plus});
      }
    }
  } else {
    State candidate = s;
    candidate.jobs = jobs_plus;
    if (solver_.is_valid(candidate)) {
      // Pins alpha to the full area of the previous grid value; the slack
      // matters only to later removals.
      s.alpha = one_eps * new_bounds.opt_minus *
                inst_.blue_speed_sum(s.blue_machines);
    } else {
      s.alpha += pj;
    }
  }
  s.jobs = std::move(jobs_plus);
  state_ = s;
  step.after = state_;
  return step;
}

EngineStep CmaxEngine::remove(int job_type) {
  if (job_type < 0 || job_type >= inst_.type_count()) {
    throw InputError("remove: job type out of range");
  }
  if (state_.jobs[job_type] <= 0) {
    throw NoSuchJobError("remove: no job of this type present");
  }
  EngineStep step;
  step.before = state_;
  step.job_type = job_type;
  step.inserted = false;

  State s = state_;
  const Rational one_eps = Rational(1) + inst_.epsilon;
  std::vector<long long> jobs_minus = s.jobs;
  jobs_minus[job_type] -= 1;

  const Rational old_plus = solver_.opt_bounds(s.jobs).opt_plus;
  const OptBounds new_bounds = solver_.opt_bounds(jobs_minus);
  step.grid_before = old_plus;
  step.grid_after = new_bounds.opt_plus;

  auto t = solver_.critical_type(new_bounds.opt_plus);
  if (new_bounds.opt_plus < old_plus) {
    s = try_btr(inst_.machine_total(), std::move(s), &step);
    s.alpha = one_eps * new_bounds.opt_plus *
              inst_.blue_speed_sum(s.blue_machines);
  }
  s.jobs = jobs_minus;
  if (t && s.blue_machines[*t] > 0 &&
      solver_.is_kappa_free(s, inst_.epsilon * inst_.ell + inst_.pmax)) {
    s = try_btr(1, std::move(s), &step);
  }
  if ((!t || s.blue_machines[*t] == 0) &&
      solver_.is_kappa_free(s, inst_.pmax)) {
    s.alpha = max(s.alpha - inst_.pmax,
                  one_eps * new_bounds.opt_minus *
                      inst_.blue_speed_sum(s.blue_machines));
  }
  state_ = s;
  step.after = state_;
  return step;
}

}  // namespace dynsched
