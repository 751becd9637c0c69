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

#include "dynsched/lexsolver.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace dynsched {

namespace {

constexpr long long kInfeasibleLoad = std::numeric_limits<long long>::min();
constexpr std::size_t kMaxSkeletons = 8;
constexpr long long kMaxTotalUnits = 4'000'000;

struct VecHash {
  std::size_t operator()(const std::vector<long long>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (long long x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

}  // namespace

struct LexSolver::Skeleton {
  std::vector<long long> jobs;
  std::vector<long long> weights;  // type size in granularity units
  long long total_units = 0;
  bool maximize = true;  // makespan maximizes red load, covering minimizes

  std::vector<Configuration> configs;
  std::vector<long long> config_units;
  // Positions of the (type, config) index list in completion order.
  std::vector<int> pos_type;
  std::vector<int> pos_config;

  std::unordered_map<std::vector<long long>, long long, VecHash> memo;
  std::map<std::pair<long long, std::vector<long long>>, AssociatedSolution>
      solutions;

  // Extremal total red load (max when maximize, min otherwise) over
  // assignments of the remaining machines to configurations at positions
  // >= pos with component-wise sums <= remaining. kInfeasibleLoad when no
  // assignment exists. machines/remaining are mutated and restored.
  long long extremal_from(std::size_t pos, std::vector<long long>& machines,
                          std::vector<long long>& remaining) {
    const std::size_t n = pos_type.size();
    for (;;) {
      if (pos == n) {
        for (long long m : machines) {
          if (m != 0) return kInfeasibleLoad;
        }
        return 0;
      }
      int t = pos_type[pos];
      if (machines[t] > 0) {
        const auto& c = configs[pos_config[pos]].counts;
        bool fits = true;
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (c[j] > remaining[j]) {
            fits = false;
            break;
          }
        }
        if (fits) break;
      }
      ++pos;
    }

    std::vector<long long> key;
    key.reserve(1 + machines.size() + remaining.size());
    key.push_back(static_cast<long long>(pos));
    key.insert(key.end(), machines.begin(), machines.end());
    key.insert(key.end(), remaining.begin(), remaining.end());
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const int t = pos_type[pos];
    const auto& c = configs[pos_config[pos]].counts;
    const long long unit = config_units[pos_config[pos]];
    long long vmax = machines[t];
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] > 0) vmax = std::min(vmax, remaining[j] / c[j]);
    }
    long long best = kInfeasibleLoad;
    for (long long v = 0;; ++v) {
      long long sub = extremal_from(pos + 1, machines, remaining);
      if (sub != kInfeasibleLoad) {
        long long val = sub + v * unit;
        if (best == kInfeasibleLoad || (maximize ? val > best : val < best)) {
          best = val;
        }
      }
      if (v == vmax) break;
      machines[t] -= 1;
      for (std::size_t j = 0; j < c.size(); ++j) remaining[j] -= c[j];
    }
    machines[t] += vmax;
    for (std::size_t j = 0; j < c.size(); ++j) remaining[j] += vmax * c[j];

    memo.emplace(std::move(key), best);
    return best;
  }
};

LexSolver::LexSolver(const Instance& inst) : inst_(inst) {}

LexSolver::~LexSolver() = default;

void LexSolver::clear_caches() {
  skeletons_.clear();
  opt_cache_.clear();
}

long long LexSolver::units_of(const Rational& value) const {
  auto q = value.integer_quotient(inst_.granularity);
  if (!q) throw InvariantViolation("value not on the granularity grid");
  return q->convert_to<long long>();
}

void LexSolver::check_state(const State& state) const {
  if (state.jobs.size() != inst_.sizes.size() ||
      state.blue_machines.size() != inst_.speeds.size()) {
    throw InputError("state dimensions do not match the instance");
  }
  for (std::size_t t = 0; t < state.blue_machines.size(); ++t) {
    if (state.blue_machines[t] < 0 ||
        state.blue_machines[t] > inst_.machine_counts[t]) {
      throw InputError("blue machine count out of range");
    }
  }
  for (long long v : state.jobs) {
    if (v < 0) throw InputError("negative job multiplicity");
  }
}

std::unique_ptr<LexSolver::Skeleton> LexSolver::build_skeleton(
    const std::vector<long long>& jobs,
    const std::vector<bool>* zero_only_types) const {
  auto sk = std::make_unique<Skeleton>();
  sk->jobs = jobs;
  sk->maximize = inst_.objective == Objective::kMakespan;
  sk->weights.reserve(inst_.sizes.size());
  sk->total_units = 0;
  for (std::size_t j = 0; j < inst_.sizes.size(); ++j) {
    auto q = inst_.sizes[j].integer_quotient(inst_.granularity);
    sk->weights.push_back(q->convert_to<long long>());
    sk->total_units += jobs[j] * sk->weights.back();
  }
  if (sk->total_units > kMaxTotalUnits) {
    throw CapacityError("job volume too large for exact solving");
  }

  sk->configs = enumerate_configs(inst_.sizes, inst_.ell, &jobs);
  sk->config_units.reserve(sk->configs.size());
  for (const Configuration& c : sk->configs) {
    sk->config_units.push_back(units_of(c.load));
  }

  const int tau = static_cast<int>(inst_.speeds.size());
  struct Entry {
    int type;
    int config;
    Rational completion;
  };
  std::vector<Entry> entries;
  entries.reserve(sk->configs.size() * tau);
  for (int t = 0; t < tau; ++t) {
    for (std::size_t cid = 0; cid < sk->configs.size(); ++cid) {
      if (zero_only_types != nullptr && (*zero_only_types)[t] &&
          sk->config_units[cid] != 0) {
        continue;
      }
      entries.push_back(
          Entry{t, static_cast<int>(cid),
                sk->configs[cid].load / inst_.speeds[t]});
    }
  }
  CompletionOrder order = sk->maximize ? CompletionOrder::kDescending
                                       : CompletionOrder::kAscending;
  std::sort(entries.begin(), entries.end(),
            [&](const Entry& a, const Entry& b) {
              OrderedIndex ia{a.type, sk->configs[a.config], a.completion};
              OrderedIndex ib{b.type, sk->configs[b.config], b.completion};
              return compare(ia, ib, order) < 0;
            });
  sk->pos_type.reserve(entries.size());
  sk->pos_config.reserve(entries.size());
  for (const Entry& e : entries) {
    sk->pos_type.push_back(e.type);
    sk->pos_config.push_back(e.config);
  }
  return sk;
}

LexSolver::Skeleton& LexSolver::skeleton_for(
    const std::vector<long long>& jobs) {
  for (auto it = skeletons_.begin(); it != skeletons_.end(); ++it) {
    if (it->first == jobs) {
      if (it != skeletons_.begin()) {
        skeletons_.splice(skeletons_.begin(), skeletons_, it);
      }
      return *skeletons_.front().second;
    }
  }
  skeletons_.emplace_front(jobs, build_skeleton(jobs, nullptr));
  if (skeletons_.size() > kMaxSkeletons) skeletons_.pop_back();
  return *skeletons_.front().second;
}

AssociatedSolution LexSolver::solve_on(Skeleton& sk, const State& state,
                                       bool use_cache) {
  const bool makespan = inst_.objective == Objective::kMakespan;
  const long long total = sk.total_units;

  // Blue-area budget in granularity units, clamped to the meaningful range.
  BigInt raw = makespan ? (state.alpha / inst_.granularity).floor()
                        : (state.alpha / inst_.granularity).ceil();
  AssociatedSolution infeasible;
  if (makespan && raw < 0) return infeasible;
  if (!makespan && raw > total) return infeasible;
  long long budget = makespan
                         ? std::min<long long>(total, raw.convert_to<long long>())
                         : std::max<long long>(0, raw.convert_to<long long>());

  std::pair<long long, std::vector<long long>> cache_key{budget,
                                                         state.blue_machines};
  if (use_cache) {
    if (auto it = sk.solutions.find(cache_key); it != sk.solutions.end()) {
      return it->second;
    }
  }

  const std::size_t tau = inst_.speeds.size();
  std::vector<long long> machines(tau);
  long long red_total = 0;
  for (std::size_t t = 0; t < tau; ++t) {
    machines[t] = inst_.machine_counts[t] - state.blue_machines[t];
    red_total += machines[t];
  }
  std::vector<long long> remaining = state.jobs;

  // makespan: red load must reach total - budget; covering: stay below it.
  const long long bound = total - budget;

  AssociatedSolution sol;
  long long extremal = sk.extremal_from(0, machines, remaining);
  bool ok = extremal != kInfeasibleLoad &&
            (makespan ? extremal >= bound : extremal <= bound);
  if (!ok) {
    if (use_cache) sk.solutions.emplace(std::move(cache_key), sol);
    return sol;
  }

  sol.feasible = true;
  sol.red_set_empty = red_total == 0;
  sol.assignment.assign(tau, {});
  long long placed = 0;
  bool objective_set = false;
  const std::size_t n = sk.pos_type.size();
  for (std::size_t pos = 0; pos < n; ++pos) {
    const int t = sk.pos_type[pos];
    if (machines[t] == 0) continue;
    const int cid = sk.pos_config[pos];
    const auto& c = sk.configs[cid].counts;
    long long vmax = machines[t];
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] > 0) vmax = std::min(vmax, remaining[j] / c[j]);
    }
    const long long unit = sk.config_units[cid];
    long long chosen = -1;
    for (long long v = 0;; ++v) {
      long long sub = sk.extremal_from(pos + 1, machines, remaining);
      if (sub != kInfeasibleLoad) {
        long long reach = sub + placed + v * unit;
        if (makespan ? reach >= bound : reach <= bound) {
          chosen = v;
          break;
        }
      }
      if (v == vmax) break;
      machines[t] -= 1;
      for (std::size_t j = 0; j < c.size(); ++j) remaining[j] -= c[j];
    }
    if (chosen < 0) {
      throw InvariantViolation("lex walk lost feasibility");
    }
    // machines/remaining already reflect `chosen` uses of this config.
    placed += chosen * unit;
    if (chosen > 0) {
      sol.assignment[t].emplace_back(sk.configs[cid], chosen);
      if (!objective_set) {
        sol.ilp_objective = sk.configs[cid].load / inst_.speeds[t];
        objective_set = true;
      }
    }
  }
  if (!objective_set) sol.ilp_objective = 0;
  sol.blue_jobs = remaining;

  if (use_cache) sk.solutions.emplace(std::move(cache_key), sol);
  return sol;
}

AssociatedSolution LexSolver::solve_associated(const State& state) {
  check_state(state);
  return solve_on(skeleton_for(state.jobs), state, /*use_cache=*/true);
}

AssociatedSolution LexSolver::solve_pruned(const State& state,
                                           const Rational& T) {
  check_state(state);
  if (inst_.sizes.empty()) return solve_associated(state);
  Rational pmin = inst_.sizes.front();
  for (const Rational& p : inst_.sizes) pmin = min(pmin, p);
  std::vector<bool> zero_only(inst_.speeds.size(), false);
  for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
    zero_only[t] = inst_.speeds[t] * T < pmin;
  }
  auto sk = build_skeleton(state.jobs, &zero_only);
  return solve_on(*sk, state, /*use_cache=*/false);
}

bool LexSolver::is_t_valid(const State& state, const Rational& T) {
  check_state(state);
  const bool makespan = inst_.objective == Objective::kMakespan;
  for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
    Rational capacity = inst_.speeds[t] * T;
    if (state.blue_machines[t] > 0 && capacity < inst_.ell) return false;
    if (state.blue_machines[t] < inst_.machine_counts[t] &&
        capacity > inst_.ell) {
      return false;
    }
  }
  Rational area = (Rational(1) + inst_.epsilon) * T *
                  inst_.blue_speed_sum(state.blue_machines);
  if (makespan) {
    if (state.alpha.sign() < 0 || state.alpha > area) return false;
  } else {
    if (state.alpha < area) return false;
  }
  AssociatedSolution sol = solve_on(skeleton_for(state.jobs), state, true);
  if (!sol.feasible) return false;
  if (makespan) return sol.ilp_objective <= T;
  return sol.red_set_empty || sol.ilp_objective >= T;
}

bool LexSolver::is_valid(const State& state) {
  const OptBounds& b = opt_bounds(state.jobs);
  Rational T = inst_.objective == Objective::kMakespan ? b.opt_plus
                                                       : b.opt_minus;
  return is_t_valid(state, T);
}

State LexSolver::canonical_state(const std::vector<long long>& jobs,
                                 const Rational& T) const {
  const bool makespan = inst_.objective == Objective::kMakespan;
  State s;
  s.jobs = jobs;
  s.blue_machines.assign(inst_.speeds.size(), 0);
  for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
    Rational capacity = inst_.speeds[t] * T;
    bool blue = makespan ? capacity >= inst_.ell : capacity > inst_.ell;
    if (blue) s.blue_machines[t] = inst_.machine_counts[t];
  }
  Rational area = (Rational(1) + inst_.epsilon) * T *
                  inst_.blue_speed_sum(s.blue_machines);
  s.alpha = makespan ? area.floor_to_multiple(inst_.granularity)
                     : area.ceil_to_multiple(inst_.granularity);
  return s;
}

bool LexSolver::exists_valid(const std::vector<long long>& jobs,
                             const Rational& T) {
  return is_t_valid(canonical_state(jobs, T), T);
}

std::optional<int> LexSolver::critical_type(const Rational& T) const {
  if (T.sign() <= 0) return std::nullopt;
  for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
    if (inst_.speeds[t] * T == inst_.ell) return static_cast<int>(t);
  }
  return std::nullopt;
}

const OptBounds& LexSolver::opt_bounds(const std::vector<long long>& jobs) {
  if (auto it = opt_cache_.find(jobs); it != opt_cache_.end()) {
    return it->second;
  }
  const bool makespan = inst_.objective == Objective::kMakespan;
  OptBounds out{0, 0, 0};
  bool all_zero = true;
  for (long long v : jobs) all_zero = all_zero && v == 0;
  if (all_zero) {
    return opt_cache_.emplace(jobs, out).first->second;
  }

  Skeleton& sk = skeleton_for(jobs);
  const Rational one_eps = Rational(1) + inst_.epsilon;

  std::set<Rational> cand;
  {
    std::set<long long> loads;
    for (long long u : sk.config_units) {
      if (u > 0) loads.insert(u);
    }
    for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
      for (long long u : loads) {
        cand.insert(Rational(u) * inst_.granularity / inst_.speeds[t]);
      }
      cand.insert(inst_.ell / inst_.speeds[t]);
    }
  }
  {
    // Reachable blue-load values, as a bounded-count subset-sum table.
    std::vector<char> reach(sk.total_units + 1, 0);
    reach[0] = 1;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      const long long w = sk.weights[j];
      if (jobs[j] == 0) continue;
      std::vector<char> prev = reach;
      for (long long v = 0; v <= sk.total_units; ++v) {
        if (reach[v]) continue;
        for (long long u = 1; u <= jobs[j] && u * w <= v; ++u) {
          if (prev[v - u * w]) {
            reach[v] = 1;
            break;
          }
        }
      }
    }
    std::vector<Rational> prefix;
    Rational s = 0;
    for (std::size_t t = 0; t < inst_.speeds.size(); ++t) {
      s += inst_.speeds[t] * Rational(inst_.machine_counts[t]);
      prefix.push_back(s);
    }
    for (long long u = 1; u <= sk.total_units; ++u) {
      if (!reach[u]) continue;
      Rational load = Rational(u) * inst_.granularity;
      for (const Rational& S : prefix) {
        cand.insert(load / (one_eps * S));
      }
    }
  }
  // Weak upper estimate: everything on one fastest machine.
  cand.insert(Rational(sk.total_units) * inst_.granularity / inst_.speeds[0]);

  std::vector<Rational> c(cand.begin(), cand.end());
  if (makespan) {
    // first candidate admitting a valid state (monotone nondecreasing)
    std::size_t lo = 0, hi = c.size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (exists_valid(jobs, c[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (lo == c.size()) {
      throw InvariantViolation("no feasible bound found for nonempty jobs");
    }
    out.opt = c[lo];
  } else {
    // last candidate admitting a valid state (monotone nonincreasing);
    // T = 0 is always valid for covering.
    std::size_t lo = 0, hi = c.size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (exists_valid(jobs, c[mid])) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    out.opt = lo == 0 ? Rational(0) : c[lo - 1];
  }
  if (out.opt.sign() > 0) {
    PowerGrid grid(inst_.epsilon);
    out.opt_minus = grid.prev_strict(out.opt);
    out.opt_plus = out.opt_minus * one_eps;
  }
  return opt_cache_.emplace(jobs, out).first->second;
}

bool LexSolver::is_kappa_free(const State& state, const Rational& kappa) {
  State shifted = state;
  if (inst_.objective == Objective::kMakespan) {
    shifted.alpha = state.alpha - kappa;
    if (shifted.alpha.sign() < 0) return false;
  } else {
    shifted.alpha = state.alpha + kappa;
  }
  return is_valid(shifted);
}

Rational LexSolver::max_freeness(const State& state) {
  if (!is_valid(state)) {
    throw InputError("max_freeness requires a valid state");
  }
  const bool makespan = inst_.objective == Objective::kMakespan;
  const Rational& g = inst_.granularity;
  auto valid_at = [&](const BigInt& units) {
    State s = state;
    s.alpha = Rational(units, 1) * g;
    return is_valid(s);
  };
  if (makespan) {
    // smallest granular alpha that stays valid; validity is monotone
    // nondecreasing in alpha below the area cap.
    BigInt lo = 0, hi = (state.alpha / g).floor();
    if (valid_at(lo)) return state.alpha;
    while (lo + 1 < hi) {
      BigInt mid = (lo + hi) / 2;
      if (valid_at(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return state.alpha - Rational(hi, 1) * g;
  }
  const long long total_units = skeleton_for(state.jobs).total_units;
  // largest granular alpha that stays valid; monotone nonincreasing above
  // the required-area floor.
  BigInt lo = (state.alpha / g).ceil();
  BigInt hi = total_units;
  if (lo > hi) return 0;
  if (valid_at(hi)) return Rational(hi, 1) * g - state.alpha;
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) / 2;
    if (valid_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Rational(lo, 1) * g - state.alpha;
}

}  // namespace dynsched
