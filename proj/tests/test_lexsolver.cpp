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

#include <doctest.h>

#include <random>

#include "dynsched/lexsolver.hpp"
#include "ilp_oracle.hpp"

using dynsched::AssociatedSolution;
using dynsched::Instance;
using dynsched::LexSolver;
using dynsched::Objective;
using dynsched::OptBounds;
using dynsched::Rational;
using dynsched::State;

namespace {

Rational frac(long long n, long long d) {
  return Rational(dynsched::BigInt(n), dynsched::BigInt(d));
}

Instance unit_instance() {
  // eps=1, pmax=1, one unit-speed machine, one unit job type; ell = 4.
  return Instance::build(Objective::kMakespan, 1, 1, {1}, false, {1});
}

}  // namespace

TEST_CASE("associated solution on known points") {
  Instance inst = unit_instance();
  LexSolver solver(inst);

  AssociatedSolution one = solver.solve_associated(State{0, {0}, {1}});
  REQUIRE(one.feasible);
  CHECK(one.ilp_objective == Rational(1));
  CHECK(one.blue_jobs == std::vector<long long>{0});
  REQUIRE(one.assignment[0].size() == 1);
  CHECK(one.assignment[0][0].first.counts == std::vector<long long>{1});
  CHECK(one.assignment[0][0].second == 1);

  // five unit jobs cannot fit: the largest configuration holds four and
  // there is no blue capacity
  CHECK_FALSE(solver.solve_associated(State{0, {0}, {5}}).feasible);

  AssociatedSolution empty = solver.solve_associated(State{0, {0}, {0}});
  REQUIRE(empty.feasible);
  CHECK(empty.ilp_objective == Rational(0));
  CHECK(empty.assignment[0][0].first.counts == std::vector<long long>{0});
}

TEST_CASE("T-validity and validity on known points") {
  Instance inst = unit_instance();
  LexSolver solver(inst);
  CHECK(solver.is_valid(State{0, {0}, {0}}));
  CHECK(solver.is_valid(State{0, {0}, {1}}));
  CHECK_FALSE(solver.is_valid(State{1, {0}, {1}}));
}

TEST_CASE("grid bounds on known points") {
  {
    Instance inst = unit_instance();
    LexSolver solver(inst);
    OptBounds b = solver.opt_bounds({2});
    CHECK(b.opt == Rational(2));
    CHECK(b.opt_minus == Rational(1));
    CHECK(b.opt_plus == Rational(2));
    OptBounds zero = solver.opt_bounds({0});
    CHECK(zero.opt == Rational(0));
    CHECK(zero.opt_plus == Rational(0));
  }
  {
    Instance inst =
        Instance::build(Objective::kMakespan, 1, 1, {1}, false, {8});
    LexSolver solver(inst);
    OptBounds b = solver.opt_bounds({9});
    CHECK(b.opt == frac(9, 16));
    CHECK(b.opt_minus == frac(1, 2));
    CHECK(b.opt_plus == Rational(1));
  }
}

TEST_CASE("critical type on known points") {
  Instance inst =
      Instance::build(Objective::kMakespan, 1, 1, {1}, false, {1, 2});
  LexSolver solver(inst);
  REQUIRE(inst.ell == Rational(4));
  // speeds are stored descending: type 0 has speed 2, type 1 speed 1
  auto at4 = solver.critical_type(4);
  REQUIRE(at4.has_value());
  CHECK(inst.speeds[*at4] == Rational(1));
  auto at2 = solver.critical_type(2);
  REQUIRE(at2.has_value());
  CHECK(inst.speeds[*at2] == Rational(2));
  CHECK_FALSE(solver.critical_type(8).has_value());
  CHECK_FALSE(solver.critical_type(0).has_value());
}

TEST_CASE("freeness on known points") {
  {
    Instance inst = unit_instance();
    LexSolver solver(inst);
    CHECK(solver.max_freeness(State{0, {0}, {1}}) == Rational(0));
    CHECK_THROWS_AS(solver.max_freeness(State{1, {0}, {1}}),
                    dynsched::InputError);
  }
  {
    Instance inst =
        Instance::build(Objective::kMakespan, 1, 1, {1}, false, {4});
    LexSolver solver(inst);
    State s{8, {1}, {5}};
    REQUIRE(solver.is_valid(s));
    CHECK(solver.max_freeness(s) == Rational(3));
    CHECK(solver.is_kappa_free(s, 3));
    CHECK_FALSE(solver.is_kappa_free(s, 4));
  }
}

TEST_CASE("determinism: repeated solves are identical") {
  Instance inst =
      Instance::build(Objective::kMakespan, 1, 2, {1, 2}, false, {1, 1, 2});
  LexSolver solver(inst);
  State s{3, {0, 1}, {3, 2}};
  AssociatedSolution a = solver.solve_associated(s);
  solver.clear_caches();
  AssociatedSolution b = solver.solve_associated(s);
  CHECK(a.feasible == b.feasible);
  CHECK(a.blue_jobs == b.blue_jobs);
  REQUIRE(a.assignment.size() == b.assignment.size());
  for (std::size_t t = 0; t < a.assignment.size(); ++t) {
    REQUIRE(a.assignment[t].size() == b.assignment[t].size());
    for (std::size_t k = 0; k < a.assignment[t].size(); ++k) {
      CHECK(a.assignment[t][k].first.counts ==
            b.assignment[t][k].first.counts);
      CHECK(a.assignment[t][k].second == b.assignment[t][k].second);
    }
  }
}

namespace {

struct TinyIlp {
  Instance inst;
  State state;
};

TinyIlp random_tiny_ilp(std::mt19937_64& rng, Objective objective) {
  // eps = 1 and pmax <= 2 keep every configuration load at most 8.
  long long pmax = 1 + static_cast<long long>(rng() % 2);
  std::vector<Rational> sizes;
  sizes.push_back(1);
  if (pmax == 2 && rng() % 2 == 0) sizes.push_back(2);
  std::vector<Rational> speeds;
  int m = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < m; ++i) {
    speeds.push_back(Rational::pow(2, static_cast<long long>(rng() % 3) - 1));
  }
  TinyIlp out{Instance::build(objective, 1, pmax, sizes, false, speeds), {}};
  out.state.jobs.resize(out.inst.sizes.size());
  for (auto& v : out.state.jobs) v = rng() % 4;
  out.state.blue_machines.resize(out.inst.speeds.size());
  for (std::size_t t = 0; t < out.inst.speeds.size(); ++t) {
    out.state.blue_machines[t] = rng() % (out.inst.machine_counts[t] + 1);
  }
  long long total = 0;
  for (std::size_t j = 0; j < out.state.jobs.size(); ++j) {
    total += out.state.jobs[j] *
             out.inst.sizes[j].num().convert_to<long long>();
  }
  out.state.alpha = Rational(static_cast<long long>(rng() % (total + 3)));
  return out;
}

}  // namespace

TEST_CASE("solver equals exhaustive lex-min enumeration on tiny ILPs") {
  std::mt19937_64 rng(2026);
  int feasible_seen = 0;
  for (int round = 0; round < 150; ++round) {
    Objective objective =
        round % 2 == 0 ? Objective::kMakespan : Objective::kCovering;
    TinyIlp tiny = random_tiny_ilp(rng, objective);
    LexSolver solver(tiny.inst);
    dynsched::testing::OrderedIlp ilp(tiny.inst);
    auto oracle =
        dynsched::testing::enumerate_lex_min(tiny.inst, ilp, tiny.state);
    AssociatedSolution sol = solver.solve_associated(tiny.state);
    REQUIRE(sol.feasible == oracle.feasible);
    if (!oracle.feasible) continue;
    ++feasible_seen;
    CHECK(dynsched::testing::solution_as_counts(tiny.inst, ilp, sol) ==
          oracle.lex_counts);
    CHECK(sol.blue_jobs == oracle.blue_jobs);
    CHECK(sol.red_set_empty == oracle.red_set_empty);
    if (!oracle.red_set_empty) {
      // the lex-minimal solution attains the extremal objective
      CHECK(sol.ilp_objective == *oracle.lex_objective);
      CHECK(sol.ilp_objective == *oracle.best_objective);
    }
  }
  CHECK(feasible_seen > 40);
}

TEST_CASE("exists_valid is monotone over the grid") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    Objective objective =
        round % 2 == 0 ? Objective::kMakespan : Objective::kCovering;
    TinyIlp tiny = random_tiny_ilp(rng, objective);
    LexSolver solver(tiny.inst);
    bool any = false;
    for (long long v : tiny.state.jobs) any = any || v > 0;
    if (!any) continue;
    OptBounds b = solver.opt_bounds(tiny.state.jobs);
    std::vector<Rational> grid;
    for (long long k = -4; k <= 4; ++k) {
      grid.push_back(b.opt * Rational::pow(2, k));
    }
    bool prev = solver.exists_valid(tiny.state.jobs, grid.front());
    for (const Rational& t : grid) {
      bool cur = solver.exists_valid(tiny.state.jobs, t);
      if (objective == Objective::kMakespan) {
        CHECK((!prev || cur));  // nondecreasing
      } else {
        CHECK((prev || !cur));  // nonincreasing
      }
      prev = cur;
    }
    // weak estimate: everything on the fastest machine
    Rational volume = 0;
    for (std::size_t j = 0; j < tiny.state.jobs.size(); ++j) {
      volume += tiny.inst.sizes[j] * Rational(tiny.state.jobs[j]);
    }
    if (objective == Objective::kMakespan) {
      CHECK(b.opt <= volume / tiny.inst.speeds[0]);
    }
  }
}

TEST_CASE("grid shift equivariance of the bounds") {
  for (long long shift : {-1, 1, 2}) {
    Instance a =
        Instance::build(Objective::kMakespan, 1, 2, {1, 2}, false, {1, 2});
    std::vector<Rational> shifted;
    for (const Rational& s : std::vector<Rational>{1, 2}) {
      shifted.push_back(s * Rational::pow(2, shift));
    }
    Instance b =
        Instance::build(Objective::kMakespan, 1, 2, {1, 2}, false, shifted);
    LexSolver sa(a), sb(b);
    std::vector<long long> jobs{3, 2};
    CHECK(sb.opt_bounds(jobs).opt_plus ==
          sa.opt_bounds(jobs).opt_plus * Rational::pow(2, -shift));
  }
}

TEST_CASE("slow types only carry the zero configuration") {
  // The support observation is a makespan statement: a slow machine with a
  // nonzero configuration would overshoot T. (Covering benefits from big
  // completions, so no analogous pruning applies there.)
  std::mt19937_64 rng(99);
  for (int round = 0; round < 120; ++round) {
    Objective objective = Objective::kMakespan;
    TinyIlp tiny = random_tiny_ilp(rng, objective);
    LexSolver solver(tiny.inst);
    OptBounds b = solver.opt_bounds(tiny.state.jobs);
    Rational t = b.opt_plus;
    if (!solver.is_t_valid(tiny.state, t)) continue;
    AssociatedSolution full = solver.solve_associated(tiny.state);
    AssociatedSolution pruned = solver.solve_pruned(tiny.state, t);
    REQUIRE(pruned.feasible);
    CHECK(pruned.blue_jobs == full.blue_jobs);
    for (std::size_t ty = 0; ty < tiny.inst.speeds.size(); ++ty) {
      REQUIRE(full.assignment[ty].size() == pruned.assignment[ty].size());
      for (std::size_t k = 0; k < full.assignment[ty].size(); ++k) {
        CHECK(full.assignment[ty][k].first.counts ==
              pruned.assignment[ty][k].first.counts);
        CHECK(full.assignment[ty][k].second == pruned.assignment[ty][k].second);
      }
    }
  }
}
