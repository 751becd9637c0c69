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

#ifndef DYNSCHED_CONFIGURATIONS_HPP
#define DYNSCHED_CONFIGURATIONS_HPP

#include <cstddef>
#include <vector>

#include "dynsched/rational.hpp"

namespace dynsched {

inline constexpr std::size_t kDefaultConfigCap = 2'000'000;

// One way to fill a machine: counts per job type, with cached total load.
struct Configuration {
  std::vector<long long> counts;
  Rational load;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.counts == b.counts;
  }
};

// All c in N_0^d with sizes^T c <= bound, optionally also c <= max_counts
// componentwise. The zero configuration is always present. Enumeration
// aborts with CapacityError beyond `cap` configurations.
std::vector<Configuration> enumerate_configs(
    const std::vector<Rational>& sizes, const Rational& bound,
    const std::vector<long long>* max_counts = nullptr,
    std::size_t cap = kDefaultConfigCap);

enum class CompletionOrder { kDescending, kAscending };

// A (machine type, configuration) index with its completion time.
struct OrderedIndex {
  int type = 0;
  Configuration config;
  Rational completion;
};

// -1 when a precedes b, +1 when b precedes a; never 0 for distinct
// (type, config) pairs. Primary key is completion time (descending by
// default, ascending for the covering objective); ties break on smaller
// type index, then on the lexicographically smaller count vector.
int compare(const OrderedIndex& a, const OrderedIndex& b,
            CompletionOrder order = CompletionOrder::kDescending);

}  // namespace dynsched

#endif  // DYNSCHED_CONFIGURATIONS_HPP
