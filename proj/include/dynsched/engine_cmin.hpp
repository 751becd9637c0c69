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

#ifndef DYNSCHED_ENGINE_CMIN_HPP
#define DYNSCHED_ENGINE_CMIN_HPP

#include "dynsched/engine_cmax.hpp"
#include "dynsched/lexsolver.hpp"

namespace dynsched {

// Which grid value anchors the critical type inside the covering
// recolouring paths. kGoverning uses the value that governs covering
// validity (opt_minus); kUpper uses opt_plus. kUpper recolours machines
// that must stay red and is kept only so tests can demonstrate that it
// breaks validity; the engine defaults to kGoverning.
enum class CminCriticalAnchor { kGoverning, kUpper };

// Dynamic machine-covering state machine, the dual of CmaxEngine: blue
// machines carry a required area that alpha must stay above, and the
// governing grid value is opt_minus.
class CminEngine {
 public:
  CminEngine(const Instance& inst, LexSolver& solver,
             CminCriticalAnchor anchor = CminCriticalAnchor::kGoverning);

  const State& state() const { return state_; }
  void reset(State s) { state_ = std::move(s); }

  EngineStep insert(int job_type);  // Insert'
  EngineStep remove(int job_type);  // Remove'

  // Recolours up to k critical red machines blue, raising alpha by the
  // area the new blue machines must cover.
  State try_rtb(long long k, State s, EngineStep* step = nullptr);

 private:
  std::optional<int> recolour_type(const std::vector<long long>& jobs);

  const Instance& inst_;
  LexSolver& solver_;
  CminCriticalAnchor anchor_;
  State state_;
};

}  // namespace dynsched

#endif  // DYNSCHED_ENGINE_CMIN_HPP
