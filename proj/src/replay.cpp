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

#include "dynsched/replay.hpp"

#include <algorithm>
#include <sstream>

#include "dynsched/blue_greedy.hpp"
#include "dynsched/brute_force.hpp"
#include "dynsched/engine_cmax.hpp"
#include "dynsched/engine_cmin.hpp"
#include "dynsched/grouping.hpp"
#include "dynsched/legacy.hpp"
#include "dynsched/lexsolver.hpp"
#include "dynsched/rounding.hpp"

namespace dynsched {

namespace {

class Replayer {
 public:
  Replayer(const EventTrace& trace, const ReplayOptions& opts)
      : trace_(trace), opts_(opts) {
    rounded_ = opts.mode == ReplayMode::kRounded;
    makespan_ = trace.objective == Objective::kMakespan;
    m_ = static_cast<int>(trace.speeds.size());
    if (m_ == 0) throw InputError("trace has no machines");
    orig_speeds_ = trace.speeds;
    small_cut_ = trace.epsilon * trace.pmax;
    setup_instance();
    solver_ = std::make_unique<LexSolver>(inst_);
    if (makespan_) {
      cmax_ = std::make_unique<CmaxEngine>(inst_, *solver_);
    } else {
      cmin_ = std::make_unique<CminEngine>(inst_, *solver_);
    }
    if (rounded_) {
      ledger_.emplace(trace.epsilon, trace.pmax);
      // the ledger starts at one frame
      do_engine(true, inst_.frame_type);
    }
    rebuild_schedule();
    prev_hm_ = hm_;
  }

  std::vector<StepMetrics> run();

 private:
  const State& engine_state() const {
    return makespan_ ? cmax_->state() : cmin_->state();
  }

  EngineStep do_engine(bool insert, int type) {
    if (makespan_) return insert ? cmax_->insert(type) : cmax_->remove(type);
    return insert ? cmin_->insert(type) : cmin_->remove(type);
  }

  void setup_instance();
  int type_of_large(const Rational& original) const;
  void apply_frame_delta(long long delta, std::vector<EngineStep>& steps);
  void rebuild_schedule();
  void fill_metrics(StepMetrics& row, const std::vector<EngineStep>& steps,
                    const Rational& phi_before, long long frame_delta,
                    bool small_event);
  void check_step(StepMetrics& row, const std::vector<EngineStep>& steps,
                  const Rational& phi_before, long long frame_delta,
                  bool small_event);

  const EventTrace& trace_;
  ReplayOptions opts_;
  bool rounded_ = false;
  bool makespan_ = true;
  int m_ = 0;
  std::vector<Rational> orig_speeds_;
  Rational small_cut_;  // eps * pmax, original units

  Instance inst_;
  std::map<Rational, int> engine_type_of_;  // engine size -> type index
  std::unique_ptr<LexSolver> solver_;
  std::unique_ptr<CmaxEngine> cmax_;
  std::unique_ptr<CminEngine> cmin_;
  std::optional<FrameLedger> ledger_;

  // live jobs, original units; LIFO identity per exact size
  std::map<Rational, std::vector<long long>> large_by_size_;
  std::map<Rational, std::vector<long long>> small_by_size_;
  std::map<long long, Rational> small_size_of_;
  long long next_id_ = 1;

  // concrete schedule state
  BlueAssignment blue_;
  std::map<int, Configuration> red_config_;
  CountMatrix hm_;       // machine x engine type counts
  CountMatrix prev_hm_;  // previous step, for migration bounds
  SmallMap small_placement_;
  LegacySchedule legacy_;

  // per-step products of the rebuild
  AssociatedSolution sol_;
  Rational blue_moved_;
  Rational blue_moved_bound_;
  Rational small_moved_;
  std::vector<long long> removed_small_ids_;
  std::vector<SmallJob> inserted_small_;
  std::vector<long long> removed_large_;
  std::vector<LegacySchedule::Job> inserted_large_;
  Rational legacy_moved_;
  std::map<long long, int> legacy_before_;
};

void Replayer::setup_instance() {
  std::vector<Rational> engine_sizes;
  for (const TraceEvent& e : trace_.events) {
    bool small = e.size < small_cut_;
    if (small) {
      if (!rounded_) {
        throw InputError("no-rounding mode forbids sizes below eps*pmax");
      }
      continue;
    }
    if (!rounded_ && !e.size.is_integer()) {
      throw InputError("no-rounding mode needs integer sizes");
    }
    Rational engine_size =
        rounded_
            ? round_job(e.size, trace_.epsilon, trace_.pmax, trace_.objective)
            : e.size;
    engine_sizes.push_back(engine_size);
  }
  std::sort(engine_sizes.begin(), engine_sizes.end());
  engine_sizes.erase(std::unique(engine_sizes.begin(), engine_sizes.end()),
                     engine_sizes.end());

  std::vector<Rational> engine_speeds;
  engine_speeds.reserve(orig_speeds_.size());
  for (const Rational& s : orig_speeds_) {
    engine_speeds.push_back(
        round_speed(s, trace_.epsilon, trace_.objective));
  }
  Rational engine_pmax = rounded_ ? Rational(1) / trace_.epsilon : trace_.pmax;
  inst_ = Instance::build(trace_.objective, trace_.epsilon, engine_pmax,
                          engine_sizes, rounded_, engine_speeds);
  for (int j = 0; j < inst_.real_type_count(); ++j) {
    engine_type_of_[inst_.sizes[j]] = j;
  }
}

int Replayer::type_of_large(const Rational& original) const {
  Rational engine_size =
      rounded_ ? round_job(original, trace_.epsilon, trace_.pmax,
                           trace_.objective)
               : original;
  auto it = engine_type_of_.find(engine_size);
  if (it == engine_type_of_.end()) {
    throw InvariantViolation("size missing from the prescanned universe");
  }
  return it->second;
}

void Replayer::apply_frame_delta(long long delta,
                                 std::vector<EngineStep>& steps) {
  for (; delta > 0; --delta) steps.push_back(do_engine(true, inst_.frame_type));
  for (; delta < 0; ++delta) {
    steps.push_back(do_engine(false, inst_.frame_type));
  }
}

void Replayer::rebuild_schedule() {
  const State& s = engine_state();
  sol_ = solver_->solve_associated(s);
  if (!sol_.feasible) {
    throw InvariantViolation("engine state has no associated solution");
  }
  const int d = inst_.type_count();

  // Stable blue set: previously blue machines keep their colour while the
  // per-type count allows, then the lowest red ids are recoloured.
  std::vector<std::vector<int>> machines_of_type(inst_.speeds.size());
  for (int i = 0; i < m_; ++i) {
    machines_of_type[inst_.machine_type[i]].push_back(i);
  }
  std::vector<std::pair<int, int>> blue_set;  // (id, type)
  std::vector<bool> is_blue(m_, false);
  for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
    long long want = s.blue_machines[t];
    std::vector<int> chosen;
    for (int id : machines_of_type[t]) {
      if (static_cast<long long>(chosen.size()) == want) break;
      if (blue_.per_machine.count(id) != 0) chosen.push_back(id);
    }
    for (int id : machines_of_type[t]) {
      if (static_cast<long long>(chosen.size()) == want) break;
      if (blue_.per_machine.count(id) == 0) chosen.push_back(id);
    }
    if (static_cast<long long>(chosen.size()) != want) {
      throw InvariantViolation("blue demand exceeds machines of the type");
    }
    std::sort(chosen.begin(), chosen.end());
    for (int id : chosen) {
      blue_set.emplace_back(id, static_cast<int>(t));
      is_blue[id] = true;
    }
  }
  std::sort(blue_set.begin(), blue_set.end());

  // Machines recoloured red-to-blue enter carrying the jobs of the
  // configuration they held, so the proportional fill starts near them.
  BlueAssignment prev_aug = blue_;
  for (const auto& [id, type] : blue_set) {
    (void)type;
    if (prev_aug.per_machine.count(id) == 0) {
      auto rc = red_config_.find(id);
      if (rc != red_config_.end()) {
        prev_aug.per_machine[id] = rc->second.counts;
      }
    }
  }

  // Blue migration bound inputs: per-type delta and departing loads.
  blue_moved_bound_ = 0;
  {
    std::vector<long long> prev_counts(d, 0);
    for (const auto& [id, counts] : prev_aug.per_machine) {
      for (int j = 0; j < d; ++j) prev_counts[j] += counts[j];
      if (!is_blue[id]) {
        blue_moved_bound_ += prev_aug.load_of(inst_.sizes, id);
      }
    }
    for (int j = 0; j < d; ++j) {
      long long delta = sol_.blue_jobs[j] - prev_counts[j];
      if (delta < 0) delta = -delta;
      blue_moved_bound_ +=
          Rational(delta) * (inst_.sizes[j] + inst_.pmax);
    }
  }
  BlueSyncResult blue_result =
      sync_blue(inst_, prev_aug, sol_.blue_jobs, blue_set);
  blue_moved_ = blue_result.moved_load;
  blue_ = std::move(blue_result.assignment);

  // Red configurations to concrete machines, keeping equal configurations
  // where a machine already holds one.
  std::map<int, Configuration> next_red;
  for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
    std::vector<Configuration> pool;
    for (const auto& [config, count] : sol_.assignment[t]) {
      for (long long k = 0; k < count; ++k) pool.push_back(config);
    }
    std::vector<int> reds;
    for (int id : machines_of_type[t]) {
      if (!is_blue[id]) reds.push_back(id);
    }
    // Every red machine carries exactly one configuration; pad with zeros.
    Configuration zero;
    zero.counts.assign(d, 0);
    zero.load = 0;
    while (pool.size() < reds.size()) pool.push_back(zero);
    if (pool.size() != reds.size()) {
      throw InvariantViolation("config count does not match red machines");
    }
    std::vector<bool> used(pool.size(), false);
    std::vector<int> unmatched;
    for (int id : reds) {
      auto prev = red_config_.find(id);
      bool matched = false;
      if (prev != red_config_.end()) {
        for (std::size_t k = 0; k < pool.size(); ++k) {
          if (!used[k] && pool[k] == prev->second) {
            used[k] = true;
            next_red[id] = pool[k];
            matched = true;
            break;
          }
        }
      }
      if (!matched) unmatched.push_back(id);
    }
    std::size_t k = 0;
    for (int id : unmatched) {
      while (used[k]) ++k;
      used[k] = true;
      next_red[id] = pool[k];
    }
  }
  red_config_ = std::move(next_red);

  // Full high-multiplicity matrix.
  hm_.assign(m_, std::vector<long long>(d, 0));
  for (const auto& [id, config] : red_config_) {
    hm_[id] = config.counts;
  }
  for (const auto& [id, counts] : blue_.per_machine) {
    hm_[id] = counts;
  }
}

std::vector<StepMetrics> Replayer::run() {
  std::vector<StepMetrics> rows;
  int step_no = 0;
  for (const TraceEvent& event : trace_.events) {
    ++step_no;
    StepMetrics row;
    row.step = step_no;
    row.insert = event.insert;
    row.size = event.size;

    const bool small_event = rounded_ && event.size < small_cut_;
    if (!rounded_ && event.size < small_cut_) {
      throw InputError("no-rounding mode forbids sizes below eps*pmax");
    }
    Rational phi_before = ledger_ ? ledger_->phi() : Rational(0);
    long long frame_delta = 0;
    std::vector<EngineStep> steps;
    removed_small_ids_.clear();
    inserted_small_.clear();
    removed_large_.clear();
    inserted_large_.clear();
    legacy_before_ = legacy_.machine_of();

    if (event.insert) {
      long long id = next_id_++;
      if (small_event) {
        FrameLedger::Update upd = ledger_->insert_small(event.size);
        small_by_size_[event.size].push_back(id);
        small_size_of_[id] = event.size;
        inserted_small_.push_back(SmallJob{id, event.size});
        frame_delta = upd.frame_delta;
        apply_frame_delta(frame_delta, steps);
      } else {
        int type = type_of_large(event.size);
        steps.push_back(do_engine(true, type));
        large_by_size_[event.size].push_back(id);
        inserted_large_.push_back(
            LegacySchedule::Job{id, type, event.size});
      }
    } else {
      if (small_event) {
        auto it = small_by_size_.find(event.size);
        if (it == small_by_size_.end() || it->second.empty()) {
          throw NoSuchJobError("remove: no small job of this size");
        }
        long long id = it->second.back();
        it->second.pop_back();
        if (it->second.empty()) small_by_size_.erase(it);
        small_size_of_.erase(id);
        FrameLedger::Update upd = ledger_->remove_small(event.size);
        removed_small_ids_.push_back(id);
        frame_delta = upd.frame_delta;
        apply_frame_delta(frame_delta, steps);
      } else {
        auto it = large_by_size_.find(event.size);
        if (it == large_by_size_.end() || it->second.empty()) {
          throw NoSuchJobError("remove: no job of this size");
        }
        long long id = it->second.back();
        it->second.pop_back();
        if (it->second.empty()) large_by_size_.erase(it);
        int type = type_of_large(event.size);
        steps.push_back(do_engine(false, type));
        removed_large_.push_back(id);
      }
    }

    rebuild_schedule();

    // Legacy schedule follows the real-type part of the matrix.
    const int d_real = inst_.real_type_count();
    auto real_part = [&](const CountMatrix& hm) {
      CountMatrix out(m_, std::vector<long long>(d_real, 0));
      for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < d_real; ++j) out[i][j] = hm[i][j];
      }
      return out;
    };
    CountMatrix prev_real = real_part(prev_hm_);
    CountMatrix next_real = real_part(hm_);
    legacy_moved_ =
        legacy_.convert(prev_real, next_real, removed_large_, inserted_large_);

    // Small jobs follow the frame counts.
    small_moved_ = 0;
    if (rounded_) {
      std::vector<long long> frames(m_, 0);
      for (int i = 0; i < m_; ++i) frames[i] = hm_[i][inst_.frame_type];
      SmallPlacementResult placed =
          place_small_jobs(small_cut_, small_placement_, frames,
                           inserted_small_, removed_small_ids_);
      small_moved_ = placed.moved_load;
      small_placement_ = std::move(placed.placement);
    }

    fill_metrics(row, steps, phi_before, frame_delta, small_event);
    if (opts_.check_invariants) {
      check_step(row, steps, phi_before, frame_delta, small_event);
    }
    row.ok = true;
    for (const auto& [name, pass] : row.verdicts) row.ok = row.ok && pass;
    rows.push_back(std::move(row));
    prev_hm_ = hm_;
  }
  return rows;
}

void Replayer::fill_metrics(StepMetrics& row,
                            const std::vector<EngineStep>& steps,
                            const Rational& phi_before, long long frame_delta,
                            bool small_event) {
  (void)steps;
  (void)frame_delta;
  (void)small_event;
  const State& s = engine_state();
  const OptBounds& b = solver_->opt_bounds(s.jobs);
  row.opt_grid = makespan_ ? b.opt_plus : b.opt_minus;
  row.alpha = s.alpha;
  row.blue_count = 0;
  for (long long v : s.blue_machines) row.blue_count += v;
  if (ledger_) {
    row.f = ledger_->f();
    row.F = ledger_->F();
    row.phi = ledger_->phi();
  }
  row.migration = legacy_moved_ + small_moved_;
  row.budget = row.size + (phi_before - row.phi);

  // Reported loads in original sizes and speeds.
  std::vector<Rational> loads(m_, Rational(0));
  for (const auto& [id, machine] : legacy_.machine_of()) {
    loads[machine] += legacy_.jobs().at(id).original_size;
  }
  for (const auto& [machine, jobs] : small_placement_) {
    for (const SmallJob& job : jobs) loads[machine] += job.size;
  }
  row.machine_loads = loads;
  row.original_speeds = orig_speeds_;
  Rational value = loads[0] / orig_speeds_[0];
  for (int i = 1; i < m_; ++i) {
    Rational c = loads[i] / orig_speeds_[i];
    if (makespan_ ? c > value : c < value) value = c;
  }
  row.objective_value = value;

  row.live_jobs = static_cast<long long>(legacy_.jobs().size() +
                                         small_size_of_.size());
  if (opts_.oracle && row.live_jobs <= static_cast<long long>(opts_.oracle_cap)) {
    std::vector<Rational> jobs;
    for (const auto& [id, job] : legacy_.jobs()) jobs.push_back(job.original_size);
    for (const auto& [id, size] : small_size_of_) jobs.push_back(size);
    row.opt_star = brute_force_opt(jobs, orig_speeds_, trace_.objective,
                                   opts_.oracle_cap);
    if (row.opt_star->sign() > 0) {
      row.ratio = row.objective_value / *row.opt_star;
    }
  }
}

void Replayer::check_step(StepMetrics& row,
                          const std::vector<EngineStep>& steps,
                          const Rational& phi_before, long long frame_delta,
                          bool small_event) {
  auto verdict = [&row](const std::string& name, bool pass) {
    row.verdicts.emplace_back(name, pass);
  };
  const State& s = engine_state();
  const OptBounds& b = solver_->opt_bounds(s.jobs);
  const Rational one_eps = Rational(1) + inst_.epsilon;
  const Rational T = makespan_ ? b.opt_plus : b.opt_minus;
  const Rational area = one_eps * T * inst_.blue_speed_sum(s.blue_machines);

  verdict("state_valid", solver_->is_valid(s));

  {
    bool ok = true;
    for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
      Rational cap = inst_.speeds[t] * T;
      if (s.blue_machines[t] > 0 && cap < inst_.ell) ok = false;
      if (s.blue_machines[t] < inst_.machine_counts[t] && cap > inst_.ell) {
        ok = false;
      }
    }
    verdict("machine_colouring", ok);
  }
  verdict("compatible_colouring",
          makespan_ ? s.alpha.sign() >= 0 && s.alpha <= area
                    : s.alpha >= area);

  {
    bool ok = true;
    for (const EngineStep& st : steps) {
      for (const EngineStep::Recolour& rec : st.recolours) {
        auto crit = solver_->critical_type(rec.grid_value);
        ok = ok && crit && *crit == rec.type;
        ok = ok && (rec.grid_value == st.grid_before ||
                    rec.grid_value == st.grid_after);
      }
    }
    verdict("recolouring_critical_only", ok);
  }

  if (makespan_) {
    auto crit = solver_->critical_type(b.opt_plus);
    bool ok = true;
    if (crit && s.blue_machines[*crit] > 0) {
      std::vector<long long> less = s.blue_machines;
      less[*crit] -= 1;
      ok = one_eps * b.opt_plus * inst_.blue_speed_sum(less) < s.alpha;
    }
    verdict("alpha_lower_bound", ok);
    std::vector<long long> without = s.blue_machines;
    if (crit) without[*crit] = 0;
    Rational delta = one_eps * b.opt_minus * inst_.blue_speed_sum(without);
    verdict("alpha_above_core_area", delta <= s.alpha);
    bool cap_ok = true;
    if (s.alpha > delta) {
      cap_ok = solver_->max_freeness(s) <=
               inst_.ell + 2 * inst_.pmax - Rational(1);
    }
    verdict("freeness_cap", cap_ok);
  } else {
    auto crit = solver_->critical_type(b.opt_minus);
    bool ok = true;
    if (crit && s.blue_machines[*crit] < inst_.machine_counts[*crit]) {
      std::vector<long long> more = s.blue_machines;
      more[*crit] += 1;
      ok = one_eps * b.opt_minus * inst_.blue_speed_sum(more) > s.alpha;
    }
    verdict("alpha_upper_bound", ok);
    std::vector<long long> doubled = s.blue_machines;
    if (crit) doubled[*crit] += s.blue_machines[*crit];
    Rational delta = one_eps * b.opt_plus * inst_.blue_speed_sum(doubled);
    verdict("alpha_below_core_area", s.alpha <= delta);
    bool cap_ok = true;
    if (s.alpha < delta) {
      cap_ok = solver_->max_freeness(s) <=
               one_eps * inst_.ell + inst_.pmax - Rational(1);
    }
    verdict("freeness_cap", cap_ok);
  }

  {
    bool ok = true;
    for (const EngineStep& st : steps) {
      Rational da = st.alpha_delta();
      Rational pj = inst_.sizes[st.job_type];
      long long dmu = st.blue_delta_l1();
      if (makespan_) {
        if (st.inserted) {
          ok = ok && da.sign() >= 0 &&
               da <= inst_.ell + inst_.pmax + 2 * pj && dmu <= 1;
        } else {
          Rational mu_cap = (inst_.ell + 2 * inst_.pmax) / inst_.pmax + 1;
          ok = ok && Rational(dmu) <= mu_cap;
          ok = ok && abs(da) <= Rational(dmu) * one_eps * inst_.ell +
                                    inst_.ell + 4 * inst_.pmax;
        }
      } else {
        if (st.inserted) {
          Rational mu_cap = (one_eps * inst_.ell + inst_.pmax) /
                                (inst_.epsilon * inst_.ell) +
                            1;
          ok = ok && Rational(dmu) <= mu_cap && da.sign() >= 0;
          ok = ok && da <= Rational(dmu) * one_eps * inst_.ell +
                               one_eps * inst_.ell + 3 * inst_.pmax;
        } else {
          Rational mu_cap = (inst_.ell + 2 * inst_.pmax) / inst_.pmax + 1;
          ok = ok && Rational(dmu) <= mu_cap && da.sign() <= 0;
          ok = ok && abs(da) <= Rational(dmu) * one_eps * inst_.ell +
                                    one_eps * inst_.ell + 2 * pj;
        }
      }
    }
    verdict("parameter_deltas", ok);
  }

  {
    bool ok = true;
    const Rational& smax = inst_.speeds[0];
    for (const EngineStep& st : steps) {
      const Rational& larger = st.inserted ? st.grid_after : st.grid_before;
      if (smax * larger < inst_.ell) continue;
      if (st.grid_before.is_zero()) {
        ok = false;
        continue;
      }
      Rational ratio = st.grid_after / st.grid_before;
      if (st.inserted) {
        ok = ok && (ratio == Rational(1) || ratio == one_eps);
      } else {
        ok = ok && (ratio == Rational(1) || ratio == Rational(1) / one_eps);
      }
    }
    verdict("grid_step_ratio", ok);
  }

  {
    // Blue side: proportional loads, knapsack consistency, completion bound.
    Rational blue_load = 0;
    for (int j = 0; j < inst_.type_count(); ++j) {
      blue_load += inst_.sizes[j] * Rational(sol_.blue_jobs[j]);
    }
    Rational speed_sum = inst_.blue_speed_sum(s.blue_machines);
    bool proportional = true;
    bool completion = true;
    if (speed_sum.sign() > 0) {
      Rational fill = blue_load / speed_sum;
      for (const auto& [id, counts] : blue_.per_machine) {
        (void)counts;
        Rational load = blue_.load_of(inst_.sizes, id);
        Rational goal = inst_.speeds[inst_.machine_type[id]] * fill;
        proportional = proportional && abs(load - goal) <= inst_.pmax;
        Rational cap = inst_.speeds[inst_.machine_type[id]] * T;
        if (makespan_) {
          completion = completion &&
                       load <= one_eps * one_eps * cap + inst_.pmax &&
                       load <= one_eps * one_eps * one_eps * cap;
        } else {
          completion = completion && load >= cap;
        }
      }
    } else {
      proportional = blue_load.is_zero();
    }
    verdict("blue_proportional", proportional);
    verdict("blue_completion", completion);
    Rational knap = makespan_
                        ? s.alpha.floor_to_multiple(inst_.granularity)
                        : s.alpha.ceil_to_multiple(inst_.granularity);
    verdict("blue_knapsack",
            makespan_ ? blue_load <= knap : blue_load >= knap);
    verdict("blue_migration", blue_moved_ <= blue_moved_bound_);
  }

  if (rounded_) {
    Rational big_f = ledger_->F();
    Rational f_val = Rational(ledger_->f());
    verdict("frame_corridor", big_f <= f_val && f_val <= big_f + 3);
    bool reset_ok = true;
    if (frame_delta != 0) {
      reset_ok = f_val == Rational(big_f.ceil(), 1) + 1 &&
                 ledger_->phi().is_zero();
    }
    verdict("frame_reset", reset_ok);
    if (small_event) {
      Rational dphi = ledger_->phi() - phi_before;
      bool pot_ok = abs(dphi) <= 3 * small_cut_;
      pot_ok = pot_ok && small_cut_ * Rational(frame_delta < 0 ? -frame_delta
                                                               : frame_delta) +
                                 dphi <=
                             3 * row.size;
      verdict("frame_potential", pot_ok);
    }

    // Small-job sandwich and migration.
    bool sandwich = true;
    std::vector<Rational> small_load(m_, Rational(0));
    for (const auto& [machine, jobs] : small_placement_) {
      for (const SmallJob& job : jobs) small_load[machine] += job.size;
    }
    Rational frame_move_bound = 0;
    for (int i = 0; i < m_; ++i) {
      Rational frames = Rational(hm_[i][inst_.frame_type]);
      sandwich = sandwich &&
                 (Rational(1) + frames) * small_cut_ >= small_load[i] &&
                 small_load[i] >= (frames - 3) * small_cut_;
      long long dfr = hm_[i][inst_.frame_type] - prev_hm_[i][inst_.frame_type];
      frame_move_bound += Rational(dfr < 0 ? -dfr : dfr) * small_cut_;
    }
    verdict("small_sandwich", sandwich);
    Rational event_load = 0;
    for (const SmallJob& job : inserted_small_) event_load += job.size;
    if (small_event && !row.insert) event_load += row.size;
    verdict("small_migration",
            small_moved_ <= 2 * frame_move_bound + event_load);
  }

  {
    const int d_real = inst_.real_type_count();
    CountMatrix real(m_, std::vector<long long>(d_real, 0));
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < d_real; ++j) real[i][j] = hm_[i][j];
    }
    verdict("legacy_follows", legacy_.follows(real));

    // Per type, at most one legacy move per unit of count decrease.
    std::vector<long long> moved_counts(d_real, 0);
    for (const auto& [id, machine] : legacy_.machine_of()) {
      auto it = legacy_before_.find(id);
      if (it != legacy_before_.end() && it->second != machine) {
        moved_counts[legacy_.jobs().at(id).type] += 1;
      }
    }
    bool ok = true;
    for (int j = 0; j < d_real; ++j) {
      long long drop = 0;
      for (int i = 0; i < m_; ++i) {
        long long delta = hm_[i][j] - prev_hm_[i][j];
        if (delta < 0) drop += -delta;
      }
      ok = ok && moved_counts[j] <= drop;
    }
    verdict("legacy_bound", ok);
  }

  if (row.migration.sign() > 0) {
    verdict("amortized_budget_positive", row.budget.sign() > 0);
  }
}

}  // namespace

std::vector<StepMetrics> replay(const EventTrace& trace,
                                const ReplayOptions& options) {
  Replayer r(trace, options);
  return r.run();
}

std::string metrics_csv(const std::vector<StepMetrics>& rows, bool oracle) {
  std::ostringstream out;
  out << "step,op,p,objective,opt_grid,alpha,blue_count,f,F,phi,migration,"
         "budget,ok";
  if (oracle) out << ",opt_star,ratio";
  out << "\n";
  for (const StepMetrics& r : rows) {
    out << r.step << ',' << (r.insert ? "insert" : "remove") << ','
        << r.size.str() << ',' << r.objective_value.str() << ','
        << r.opt_grid.str() << ',' << r.alpha.str() << ',' << r.blue_count
        << ',' << r.f << ',' << r.F.str() << ',' << r.phi.str() << ','
        << r.migration.str() << ',' << r.budget.str() << ','
        << (r.ok ? 1 : 0);
    if (oracle) {
      out << ',' << (r.opt_star ? r.opt_star->str() : "") << ','
          << (r.ratio ? r.ratio->str() : "");
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace dynsched
