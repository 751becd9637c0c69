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

#ifndef DYNSCHED_LEXSOLVER_HPP
#define DYNSCHED_LEXSOLVER_HPP

#include <list>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynsched/configurations.hpp"
#include "dynsched/core.hpp"
#include "dynsched/rational.hpp"

namespace dynsched {

// The ILP parameter triple (alpha, blue machine counts, job counts): the
// engine's persistent object between steps.
struct State {
  Rational alpha;
  std::vector<long long> blue_machines;
  std::vector<long long> jobs;

  friend bool operator==(const State&, const State&) = default;
};

// The unique lexicographically optimal solution for a state, or infeasible.
struct AssociatedSolution {
  bool feasible = false;
  // No red machines at all. The minimum completion time of an empty red set
  // is +infinity by convention; the makespan of an empty set is 0.
  bool red_set_empty = false;
  Rational ilp_objective;  // Cmax(x) resp. Cmin(x); unset when red_set_empty
  std::vector<long long> blue_jobs;
  // Per machine type, the chosen configurations with multiplicities, listed
  // in solve order (deterministic).
  std::vector<std::vector<std::pair<Configuration, long long>>> assignment;
};

struct OptBounds {
  Rational opt;
  Rational opt_minus;
  Rational opt_plus;
};

// Exact solver for the configuration ILP with the aggregate blue-area
// constraint, plus the derived state predicates: T-validity, validity,
// grid bounds on the optimal ILP objective, critical type and freeness.
class LexSolver {
 public:
  explicit LexSolver(const Instance& inst);
  ~LexSolver();

  // The unique lex-minimal feasible assignment for the state's parameters.
  // alpha is floored (makespan) resp. ceiled (covering) to a multiple of the
  // size granularity before solving.
  AssociatedSolution solve_associated(const State& state);

  // Same ILP, but machine types whose capacity s_t*T is below the smallest
  // job size are forced onto the zero configuration. Agrees with
  // solve_associated whenever the state is T-valid.
  AssociatedSolution solve_pruned(const State& state, const Rational& T);

  bool is_t_valid(const State& state, const Rational& T);
  // T-validity at opt_plus (makespan) resp. opt_minus (covering).
  bool is_valid(const State& state);

  // Whether any T-valid state exists for this job vector, decided through
  // the extremal canonical colouring.
  bool exists_valid(const std::vector<long long>& jobs, const Rational& T);
  State canonical_state(const std::vector<long long>& jobs,
                        const Rational& T) const;

  const OptBounds& opt_bounds(const std::vector<long long>& jobs);

  // The unique type with s_t * T == ell, if any. T == 0 has none.
  std::optional<int> critical_type(const Rational& T) const;

  // Largest kappa >= 0 keeping the alpha-shifted state valid (alpha - kappa
  // for makespan, alpha + kappa for covering). The state must be valid.
  Rational max_freeness(const State& state);
  bool is_kappa_free(const State& state, const Rational& kappa);

  const Instance& instance() const { return inst_; }
  void clear_caches();

 private:
  struct Skeleton;

  Skeleton& skeleton_for(const std::vector<long long>& jobs);
  std::unique_ptr<Skeleton> build_skeleton(
      const std::vector<long long>& jobs,
      const std::vector<bool>* zero_only_types) const;
  AssociatedSolution solve_on(Skeleton& sk, const State& state,
                              bool use_cache);
  void check_state(const State& state) const;
  long long units_of(const Rational& value) const;

  const Instance& inst_;
  // Most recently used skeletons, keyed by job vector.
  std::list<std::pair<std::vector<long long>, std::unique_ptr<Skeleton>>>
      skeletons_;
  std::map<std::vector<long long>, OptBounds> opt_cache_;
};

}  // namespace dynsched

#endif  // DYNSCHED_LEXSOLVER_HPP
