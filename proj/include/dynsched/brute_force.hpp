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

#ifndef DYNSCHED_BRUTE_FORCE_HPP
#define DYNSCHED_BRUTE_FORCE_HPP

#include <cstddef>
#include <vector>

#include "dynsched/core.hpp"

namespace dynsched {

// Exact optimal makespan (minimized) or minimum completion time (maximized)
// by exhaustive assignment enumeration with symmetry pruning over machines
// in identical positions. Throws CapacityError above `cap` jobs.
Rational brute_force_opt(const std::vector<Rational>& jobs,
                         const std::vector<Rational>& speeds,
                         Objective objective, std::size_t cap = 10);

}  // namespace dynsched

#endif  // DYNSCHED_BRUTE_FORCE_HPP
