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

#include "dynsched/blue_greedy.hpp"

using dynsched::BlueAssignment;
using dynsched::BlueSyncResult;
using dynsched::Instance;
using dynsched::Objective;
using dynsched::Rational;
using dynsched::sync_blue;

namespace {

// pmax 3, sizes {2, 3}, two unit machines.
Instance two_units() {
  return Instance::build(Objective::kMakespan, 1, 3, {2, 3}, false, {1, 1});
}

Rational load_of(const Instance& inst, const BlueAssignment& a, int machine) {
  return a.load_of(inst.sizes, machine);
}

}  // namespace

TEST_CASE("deficit greedy from empty, ties to the lowest id") {
  Instance inst = two_units();
  BlueAssignment prev;
  // jobs {3, 3, 2}: target counts per type (sizes 2,3) = (1, 2)
  BlueSyncResult r =
      sync_blue(inst, prev, {1, 2}, {{0, inst.machine_type[0]},
                                     {1, inst.machine_type[1]}});
  CHECK(load_of(inst, r.assignment, 0) == Rational(5));
  CHECK(load_of(inst, r.assignment, 1) == Rational(3));
  CHECK(r.moved_load == Rational(0));
}

TEST_CASE("rebalance pulls loads back within pmax") {
  // pmax 2, one job type of size 2, two unit machines; loads (0, 6) exceed
  // the window and one move restores it.
  Instance inst =
      Instance::build(Objective::kMakespan, 1, 2, {2}, false, {1, 1});
  BlueAssignment prev;
  prev.per_machine[0] = {0};
  prev.per_machine[1] = {3};
  BlueSyncResult r = sync_blue(inst, prev, {3}, {{0, 0}, {1, 0}});
  CHECK(load_of(inst, r.assignment, 0) == Rational(2));
  CHECK(load_of(inst, r.assignment, 1) == Rational(4));
  CHECK(r.moved_load == Rational(2));
}

TEST_CASE("no-op sync moves nothing") {
  Instance inst = two_units();
  BlueAssignment prev;
  prev.per_machine[0] = {1, 1};
  prev.per_machine[1] = {0, 1};
  BlueSyncResult r = sync_blue(inst, prev, {1, 2}, {{0, 0}, {1, 0}});
  CHECK(r.moved_load == Rational(0));
  CHECK(r.assignment.per_machine == prev.per_machine);
}

TEST_CASE("blue jobs without blue machines is an engine bug") {
  Instance inst = two_units();
  BlueAssignment prev;
  CHECK_THROWS_AS(sync_blue(inst, prev, {1, 0}, {}),
                  dynsched::InvariantViolation);
  BlueSyncResult r = sync_blue(inst, prev, {0, 0}, {});
  CHECK(r.moved_load == Rational(0));
}

TEST_CASE("random syncs on a fixed set keep the window and the bound") {
  std::mt19937_64 rng(3);
  Instance inst =
      Instance::build(Objective::kMakespan, 1, 3, {1, 2, 3}, false,
                      {1, 1, 2, 4});
  std::vector<std::pair<int, int>> blue;
  for (int i = 0; i < 4; ++i) blue.emplace_back(i, inst.machine_type[i]);
  BlueAssignment prev;
  std::vector<long long> current{0, 0, 0};
  for (int round = 0; round < 120; ++round) {
    std::vector<long long> target = current;
    for (int j = 0; j < 3; ++j) {
      long long delta = static_cast<long long>(rng() % 3) - 1;
      target[j] = std::max<long long>(0, target[j] + delta);
    }
    BlueSyncResult r = sync_blue(inst, prev, target, blue);

    Rational total = 0;
    std::vector<long long> sum{0, 0, 0};
    Rational speed_sum = 0;
    for (const auto& [id, type] : blue) speed_sum += inst.speeds[type];
    for (const auto& [id, counts] : r.assignment.per_machine) {
      for (int j = 0; j < 3; ++j) sum[j] += counts[j];
      total += r.assignment.load_of(inst.sizes, id);
    }
    CHECK(sum == target);
    Rational fill = total / speed_sum;
    for (const auto& [id, counts] : r.assignment.per_machine) {
      (void)counts;
      Rational dev = r.assignment.load_of(inst.sizes, id) -
                     inst.speeds[inst.machine_type[id]] * fill;
      CHECK(abs(dev) <= inst.pmax);
    }

    Rational bound = 0;
    std::vector<long long> prev_counts{0, 0, 0};
    for (const auto& [id, counts] : prev.per_machine) {
      for (int j = 0; j < 3; ++j) prev_counts[j] += counts[j];
    }
    for (int j = 0; j < 3; ++j) {
      long long d = target[j] - prev_counts[j];
      bound += Rational(d < 0 ? -d : d) * (inst.sizes[j] + inst.pmax);
    }
    CHECK(r.moved_load <= bound);

    prev = r.assignment;
    current = target;
  }
}

TEST_CASE("churning the blue set keeps the window") {
  std::mt19937_64 rng(8);
  Instance inst =
      Instance::build(Objective::kMakespan, 1, 3, {1, 2, 3}, false,
                      {1, 1, 2, 4});
  BlueAssignment prev;
  std::vector<long long> current{0, 0, 0};
  for (int round = 0; round < 120; ++round) {
    std::vector<long long> target = current;
    for (int j = 0; j < 3; ++j) {
      long long delta = static_cast<long long>(rng() % 3) - 1;
      target[j] = std::max<long long>(0, target[j] + delta);
    }
    std::vector<std::pair<int, int>> blue;
    std::size_t count = 1 + rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
      blue.emplace_back(static_cast<int>(i),
                        inst.machine_type[static_cast<int>(i)]);
    }
    BlueSyncResult r = sync_blue(inst, prev, target, blue);
    Rational total = 0;
    Rational speed_sum = 0;
    std::vector<long long> sum{0, 0, 0};
    for (const auto& [id, type] : blue) speed_sum += inst.speeds[type];
    for (const auto& [id, counts] : r.assignment.per_machine) {
      for (int j = 0; j < 3; ++j) sum[j] += counts[j];
      total += r.assignment.load_of(inst.sizes, id);
    }
    CHECK(sum == target);
    Rational fill = total / speed_sum;
    for (const auto& [id, counts] : r.assignment.per_machine) {
      (void)counts;
      Rational dev = r.assignment.load_of(inst.sizes, id) -
                     inst.speeds[inst.machine_type[id]] * fill;
      CHECK(abs(dev) <= inst.pmax);
    }
    prev = r.assignment;
    current = target;
  }
}
