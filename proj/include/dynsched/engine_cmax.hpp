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

#ifndef DYNSCHED_ENGINE_CMAX_HPP
#define DYNSCHED_ENGINE_CMAX_HPP

#include <vector>

#include "dynsched/lexsolver.hpp"

namespace dynsched {

// Audit record of one engine transition, for the invariant checkers.
struct EngineStep {
  State before;
  State after;
  int job_type = -1;
  bool inserted = true;
  Rational grid_before;  // governing grid value (Cmax: opt_plus, Cmin: opt_minus)
  Rational grid_after;

  struct Recolour {
    int type;
    long long count;
    bool to_blue;
    Rational grid_value;  // grid value whose critical type was recoloured
  };
  std::vector<Recolour> recolours;

  Rational alpha_delta() const { return after.alpha - before.alpha; }
  long long blue_delta_l1() const {
    long long d = 0;
    for (std::size_t t = 0; t < before.blue_machines.size(); ++t) {
      long long v = after.blue_machines[t] - before.blue_machines[t];
      d += v < 0 ? -v : v;
    }
    return d;
  }
};

// Dynamic makespan state machine. Starts from the empty valid state
// (0, 0, 0); insert and remove transform valid states into valid states
// with bounded parameter change.
class CmaxEngine {
 public:
  CmaxEngine(const Instance& inst, LexSolver& solver);

  const State& state() const { return state_; }
  void reset(State s) { state_ = std::move(s); }

  EngineStep insert(int job_type);
  EngineStep remove(int job_type);

  // Recolours up to k critical blue machines red, lowering alpha by the
  // vacated area. May return a transiently negative alpha; remove()
  // overwrites it right after.
  State try_btr(long long k, State s, EngineStep* step = nullptr);

 private:
  const Instance& inst_;
  LexSolver& solver_;
  State state_;
};

}  // namespace dynsched

#endif  // DYNSCHED_ENGINE_CMAX_HPP
