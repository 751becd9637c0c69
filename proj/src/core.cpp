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

#include "dynsched/core.hpp"

#include <algorithm>
#include <map>

namespace dynsched {

PowerGrid::PowerGrid(const Rational& epsilon) : base_(Rational(1) + epsilon) {
  if (epsilon.sign() <= 0) throw ConfigurationError("epsilon must be positive");
}

long long PowerGrid::ceil_exponent(const Rational& x) const {
  if (x.sign() <= 0) throw InputError("grid query needs x > 0");
  // Bracket the exponent by doubling, then bisect on base^k >= x.
  long long lo, hi;
  if (x > Rational(1)) {
    lo = 0;
    hi = 1;
    while (pow(hi) < x) {
      lo = hi;
      hi *= 2;
    }
  } else {
    hi = 0;
    lo = -1;
    while (pow(lo) >= x) {
      hi = lo;
      lo *= 2;
    }
  }
  // Invariant: pow(lo) < x <= pow(hi).
  while (lo + 1 < hi) {
    long long mid = lo + (hi - lo) / 2;
    if (pow(mid) >= x) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Rational PowerGrid::next(const Rational& x) const { return pow(ceil_exponent(x)); }

Rational PowerGrid::prev_strict(const Rational& x) const {
  return pow(ceil_exponent(x) - 1);
}

Rational PowerGrid::prev_weak(const Rational& x) const {
  long long k = ceil_exponent(x);
  if (pow(k) == x) return pow(k);
  return pow(k - 1);
}

bool PowerGrid::on_grid(const Rational& x) const {
  return x.sign() > 0 && next(x) == x;
}

Rational threshold_ell(Objective objective, const Rational& epsilon,
                       const Rational& pmax) {
  if (epsilon.sign() <= 0 || !(Rational(1) / epsilon).is_integer()) {
    throw ConfigurationError("1/epsilon must be a positive integer");
  }
  if (pmax.sign() <= 0) throw ConfigurationError("pmax must be positive");
  PowerGrid grid(epsilon);
  Rational factor = objective == Objective::kMakespan ? 2 : 3;
  Rational anchor = factor / epsilon * pmax;
  return grid.base() * grid.next(anchor);
}

long long Instance::machine_total() const {
  long long m = 0;
  for (long long c : machine_counts) m += c;
  return m;
}

Rational Instance::blue_speed_sum(const std::vector<long long>& blue) const {
  Rational s = 0;
  for (std::size_t t = 0; t < speeds.size(); ++t) {
    if (blue[t] != 0) s += speeds[t] * Rational(blue[t]);
  }
  return s;
}

Instance Instance::build(Objective objective, const Rational& epsilon,
                         const Rational& pmax,
                         std::vector<Rational> type_sizes, bool with_frame_type,
                         const std::vector<Rational>& machine_speeds) {
  Instance inst;
  inst.objective = objective;
  inst.epsilon = epsilon;
  inst.pmax = pmax;
  if (epsilon.sign() <= 0 || !(Rational(1) / epsilon).is_integer()) {
    throw ConfigurationError("1/epsilon must be a positive integer");
  }
  if (pmax.sign() <= 0) throw ConfigurationError("pmax must be positive");
  if (machine_speeds.empty()) throw ConfigurationError("no machines");

  for (std::size_t j = 0; j < type_sizes.size(); ++j) {
    if (type_sizes[j].sign() <= 0) throw ConfigurationError("job size <= 0");
    if (type_sizes[j] > pmax) throw ConfigurationError("job size > pmax");
    if (j > 0 && !(type_sizes[j - 1] < type_sizes[j])) {
      throw ConfigurationError("type sizes must be distinct ascending");
    }
  }
  inst.sizes = std::move(type_sizes);
  if (with_frame_type) {
    Rational frame = epsilon * pmax;
    if (frame > pmax) throw ConfigurationError("frame size above pmax");
    inst.frame_type = static_cast<int>(inst.sizes.size());
    inst.sizes.push_back(frame);
  }
  PowerGrid grid(epsilon);
  std::map<Rational, long long, std::greater<Rational>> by_speed;
  for (const Rational& s : machine_speeds) {
    if (!grid.on_grid(s)) {
      throw ConfigurationError("machine speed not a power of 1+epsilon: " +
                               s.str());
    }
    by_speed[s] += 1;
  }
  std::map<Rational, int, std::greater<Rational>> type_of;
  for (const auto& [speed, count] : by_speed) {
    type_of[speed] = static_cast<int>(inst.speeds.size());
    inst.speeds.push_back(speed);
    inst.machine_counts.push_back(count);
  }
  inst.machine_type.reserve(machine_speeds.size());
  for (const Rational& s : machine_speeds) {
    inst.machine_type.push_back(type_of[s]);
  }

  inst.ell = threshold_ell(objective, epsilon, pmax);
  inst.granularity = 0;
  for (const Rational& p : inst.sizes) {
    inst.granularity = rational_gcd(inst.granularity, p);
  }
  if (inst.granularity.is_zero()) inst.granularity = 1;  // no job types
  return inst;
}

}  // namespace dynsched
