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

#include "dynsched/configurations.hpp"

namespace dynsched {

namespace {

void enumerate_rec(const std::vector<Rational>& sizes,
                   const std::vector<long long>* max_counts, std::size_t cap,
                   std::size_t j, std::vector<long long>& counts,
                   const Rational& remaining, const Rational& load,
                   std::vector<Configuration>& out) {
  if (j == sizes.size()) {
    if (out.size() >= cap) {
      throw CapacityError("configuration cap exceeded");
    }
    out.push_back(Configuration{counts, load});
    return;
  }
  BigInt fit = (remaining / sizes[j]).floor();
  if (fit > BigInt(cap)) throw CapacityError("configuration cap exceeded");
  long long limit = fit.convert_to<long long>();
  if (max_counts != nullptr && (*max_counts)[j] < limit) {
    limit = (*max_counts)[j];
  }
  Rational used = 0;
  for (long long v = 0; v <= limit; ++v) {
    counts[j] = v;
    enumerate_rec(sizes, max_counts, cap, j + 1, counts, remaining - used,
                  load + used, out);
    used += sizes[j];
  }
  counts[j] = 0;
}

}  // namespace

std::vector<Configuration> enumerate_configs(
    const std::vector<Rational>& sizes, const Rational& bound,
    const std::vector<long long>* max_counts, std::size_t cap) {
  for (const Rational& p : sizes) {
    if (p.sign() <= 0) throw InputError("configuration sizes must be positive");
  }
  std::vector<Configuration> out;
  if (bound.sign() < 0) return out;
  std::vector<long long> counts(sizes.size(), 0);
  enumerate_rec(sizes, max_counts, cap, 0, counts, bound, Rational(0), out);
  return out;
}

int compare(const OrderedIndex& a, const OrderedIndex& b,
            CompletionOrder order) {
  if (a.completion != b.completion) {
    bool a_first = order == CompletionOrder::kDescending
                       ? a.completion > b.completion
                       : a.completion < b.completion;
    return a_first ? -1 : 1;
  }
  if (a.type != b.type) return a.type < b.type ? -1 : 1;
  if (a.config.counts < b.config.counts) return -1;
  if (b.config.counts < a.config.counts) return 1;
  return 0;
}

}  // namespace dynsched
