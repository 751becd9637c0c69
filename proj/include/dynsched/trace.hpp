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

#ifndef DYNSCHED_TRACE_HPP
#define DYNSCHED_TRACE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dynsched/core.hpp"

namespace dynsched {

struct TraceEvent {
  bool insert = true;
  Rational size;
};

// Line-oriented event trace. Header lines (each once, before events):
//   objective cmax|cmin
//   epsilon a/b
//   pmax a[/b]
//   speeds v1 v2 ...
// Event lines: insert <size> | remove <size>. '#' starts a comment.
struct EventTrace {
  Objective objective = Objective::kMakespan;
  Rational epsilon;
  Rational pmax;
  std::vector<Rational> speeds;  // original, one per concrete machine
  std::vector<TraceEvent> events;
};

EventTrace parse_trace(const std::string& text);
std::string format_trace(const EventTrace& trace);

struct GenParams {
  std::uint64_t seed = 1;
  int machines = 2;
  int steps = 0;
  Rational pmax = 1;
  Rational epsilon = 1;
  Rational small_prob = 0;  // in [0, 1]
  Objective objective = Objective::kMakespan;
  int max_live = 0;  // 0 = unlimited
};

// Deterministic pseudo-random trace: speeds are powers of (1+eps),
// removals only reference present sizes, and the live job count never goes
// negative (or above max_live when set).
EventTrace generate(const GenParams& params);

}  // namespace dynsched

#endif  // DYNSCHED_TRACE_HPP
