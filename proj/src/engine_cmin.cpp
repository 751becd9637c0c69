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

#include "dynsched/engine_cmin.hpp"

namespace dynsched {

CminEngine::CminEngine(const Instance& inst, LexSolver& solver,
                       CminCriticalAnchor anchor)
    : inst_(inst), solver_(solver), anchor_(anchor) {
  if (inst.objective != Objective::kCovering) {
    throw ConfigurationError("covering engine on a makespan instance");
  }
  state_.alpha = 0;
  state_.blue_machines.assign(inst.speeds.size(), 0);
  state_.jobs.assign(inst.sizes.size(), 0);
}

std::optional<int> CminEngine::recolour_type(
    const std::vector<long long>& jobs) {
  const OptBounds& b = solver_.opt_bounds(jobs);
  return solver_.critical_type(
      anchor_ == CminCriticalAnchor::kUpper ? b.opt_plus : b.opt_minus);
}

State CminEngine::try_rtb(long long k, State s, EngineStep* step) {
  bool any_red = false;
  for (std::size_t t = 0; t < s.blue_machines.size(); ++t) {
    any_red = any_red || s.blue_machines[t] < inst_.machine_counts[t];
  }
  if (!any_red) return s;
  auto t = recolour_type(s.jobs);
  if (!t) return s;
  const Rational opt_minus = solver_.opt_bounds(s.jobs).opt_minus;
  long long red = inst_.machine_counts[*t] - s.blue_machines[*t];
  long long kk = std::min(k, red);
  if (kk == 0) return s;
  s.blue_machines[*t] += kk;
  s.alpha += (Rational(1) + inst_.epsilon) * Rational(kk) *
             inst_.speeds[*t] * opt_minus;
  if (step != nullptr) {
    step->recolours.push_back({*t, kk, true, opt_minus});
  }
  return s;
}

EngineStep CminEngine::remove(int job_type) {
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
  const Rational& pj = inst_.sizes[job_type];
  const Rational one_eps = Rational(1) + inst_.epsilon;
  std::vector<long long> jobs_minus = s.jobs;
  jobs_minus[job_type] -= 1;

  const Rational old_minus = solver_.opt_bounds(s.jobs).opt_minus;
  const OptBounds new_bounds = solver_.opt_bounds(jobs_minus);
  step.grid_before = old_minus;
  step.grid_after = new_bounds.opt_minus;

  if (new_bounds.opt_minus == old_minus) {
    // Mirrors the makespan insert: the candidate state is tested directly,
    // which subsumes the p_j-freeness fast path.
    State candidate = s;
    candidate.jobs = jobs_minus;
    if (!solver_.is_valid(candidate)) {
      Rational area = one_eps * new_bounds.opt_minus *
                      inst_.blue_speed_sum(s.blue_machines);
      s.alpha = max(area, s.alpha - pj);
      candidate.alpha = s.alpha;
      if (!solver_.is_valid(candidate)) {
        auto t = recolour_type(s.jobs);
        if (!t || s.blue_machines[*t] == 0) {
          throw InvariantViolation(
              "remove': no critical machine left to recolour");
        }
        s.blue_machines[*t] -= 1;
        s.alpha -= one_eps * inst_.speeds[*t] * old_minus;
        step.recolours.push_back({*t, 1, false, old_minus});
      }
    }
  } else {
    // The drop can arrive with machines of the old critical type still
    // blue when the optimum lands exactly on a grid power; they are no
    // longer allowed to be blue under the smaller value.
    auto tcrit = solver_.critical_type(old_minus);
    if (tcrit && s.blue_machines[*tcrit] > 0) {
      long long k = s.blue_machines[*tcrit];
      s.blue_machines[*tcrit] = 0;
      s.alpha -= one_eps * Rational(k) * inst_.speeds[*tcrit] * old_minus;
      step.recolours.push_back({*tcrit, k, false, old_minus});
    }
    State candidate = s;
    candidate.jobs = jobs_minus;
    if (solver_.is_valid(candidate)) {
      s.alpha = one_eps * new_bounds.opt_plus *
                inst_.blue_speed_sum(s.blue_machines);
    } else {
      s.alpha -= pj;
    }
  }
  s.jobs = std::move(jobs_minus);
  state_ = s;
  step.after = state_;
  return step;
}

EngineStep CminEngine::insert(int job_type) {
  if (job_type < 0 || job_type >= inst_.type_count()) {
    throw InputError("insert: job type out of range");
  }
  EngineStep step;
  step.before = state_;
  step.job_type = job_type;
  step.inserted = true;

  State s = state_;
  const Rational one_eps = Rational(1) + inst_.epsilon;
  std::vector<long long> jobs_plus = s.jobs;
  jobs_plus[job_type] += 1;

  const Rational old_minus = solver_.opt_bounds(s.jobs).opt_minus;
  const OptBounds new_bounds = solver_.opt_bounds(jobs_plus);
  step.grid_before = old_minus;
  step.grid_after = new_bounds.opt_minus;

  auto t = solver_.critical_type(new_bounds.opt_minus);
  if (new_bounds.opt_minus > old_minus) {
    s = try_rtb(inst_.machine_total(), std::move(s), &step);
    s.alpha = one_eps * new_bounds.opt_minus *
              inst_.blue_speed_sum(s.blue_machines);
  }
  s.jobs = jobs_plus;
  long long red_t =
      t ? inst_.machine_counts[*t] - s.blue_machines[*t] : 0;
  if (t && red_t > 0 && solver_.is_kappa_free(s, inst_.epsilon * inst_.ell)) {
    s = try_rtb(1, std::move(s), &step);
  }
  red_t = t ? inst_.machine_counts[*t] - s.blue_machines[*t] : 0;
  if ((!t || red_t == 0) && solver_.is_kappa_free(s, inst_.pmax)) {
    s.alpha = min(s.alpha + inst_.pmax,
                  one_eps * new_bounds.opt_plus *
                      inst_.blue_speed_sum(s.blue_machines));
  }
  state_ = s;
  step.after = state_;
  return step;
}

}  // namespace dynsched
