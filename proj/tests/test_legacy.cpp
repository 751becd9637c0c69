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

#include "dynsched/legacy.hpp"

using dynsched::CountMatrix;
using dynsched::LegacySchedule;
using dynsched::Rational;

TEST_CASE("insertion lands on its machine without migration") {
  LegacySchedule legacy;
  CountMatrix prev{{0}, {0}};
  CountMatrix next{{0}, {1}};
  Rational moved = legacy.convert(prev, next, {}, {{1, 0, Rational(5)}});
  CHECK(moved == Rational(0));
  CHECK(legacy.machine_of().at(1) == 1);
  CHECK(legacy.follows(next));
}

TEST_CASE("empty conversion") {
  LegacySchedule legacy;
  CHECK(legacy.convert({}, {}, {}, {}) == Rational(0));
  CHECK(legacy.follows({}));
}

TEST_CASE("one moved count moves exactly one job") {
  LegacySchedule legacy;
  legacy.convert(CountMatrix{{0}, {0}}, CountMatrix{{1}, {0}}, {},
                 {{1, 0, Rational(3)}});
  Rational moved = legacy.convert(CountMatrix{{1}, {0}},
                                  CountMatrix{{0}, {1}}, {}, {});
  CHECK(moved == Rational(3));
  CHECK(legacy.machine_of().at(1) == 1);
}

TEST_CASE("removal plus unchanged counts does not touch other jobs") {
  LegacySchedule legacy;
  legacy.convert(CountMatrix{{0}}, CountMatrix{{2}}, {},
                 {{1, 0, Rational(2)}, {2, 0, Rational(2)}});
  Rational moved =
      legacy.convert(CountMatrix{{2}}, CountMatrix{{1}}, {2}, {});
  CHECK(moved == Rational(0));
  CHECK(legacy.machine_of().count(2) == 0);
  CHECK(legacy.machine_of().at(1) == 0);
  CHECK_THROWS_AS(legacy.convert(CountMatrix{{1}}, CountMatrix{{1}}, {7}, {}),
                  dynsched::NoSuchJobError);
}

TEST_CASE("step migration on known points") {
  LegacySchedule a;
  a.convert(CountMatrix{{0, 0}, {0, 0}}, CountMatrix{{1, 1}, {0, 0}}, {},
            {{1, 0, Rational(2)}, {2, 1, Rational(3)}});
  LegacySchedule b = a;
  CHECK(step_migration(a, b) == Rational(0));
  b.convert(CountMatrix{{1, 1}, {0, 0}}, CountMatrix{{0, 0}, {1, 1}}, {}, {});
  CHECK(step_migration(a, b) == Rational(5));
}

TEST_CASE("conversion migration equals the schedule diff on random runs") {
  std::mt19937_64 rng(41);
  const int m = 3, d = 2;
  LegacySchedule legacy;
  CountMatrix prev(m, std::vector<long long>(d, 0));
  long long next_id = 1;
  std::vector<std::pair<long long, int>> live;  // (id, type)
  for (int round = 0; round < 200; ++round) {
    std::vector<long long> removed;
    std::vector<LegacySchedule::Job> inserted;
    std::vector<long long> totals(d, 0);
    for (const auto& [id, type] : live) totals[type] += 1;
    if (live.empty() || rng() % 100 < 55) {
      int type = static_cast<int>(rng() % d);
      inserted.push_back(
          {next_id, type, Rational(1 + static_cast<long long>(rng() % 5))});
      live.emplace_back(next_id, type);
      totals[type] += 1;
      ++next_id;
    } else {
      std::size_t pick = rng() % live.size();
      removed.push_back(live[pick].first);
      totals[live[pick].second] -= 1;
      live.erase(live.begin() + pick);
    }
    // random matrix with the right column sums
    CountMatrix next(m, std::vector<long long>(d, 0));
    for (int j = 0; j < d; ++j) {
      for (long long k = 0; k < totals[j]; ++k) {
        next[rng() % m][j] += 1;
      }
    }
    LegacySchedule before = legacy;
    Rational moved = legacy.convert(prev, next, removed, inserted);
    CHECK(legacy.follows(next));
    CHECK(moved == step_migration(before, legacy));
    // at most one move per unit of count decrease, in every type
    for (int j = 0; j < d; ++j) {
      long long drop = 0;
      for (int i = 0; i < m; ++i) {
        long long delta = next[i][j] - prev[i][j];
        if (delta < 0) drop -= delta;
      }
      long long moved_count = 0;
      for (const auto& [id, machine] : legacy.machine_of()) {
        auto it = before.machine_of().find(id);
        if (it != before.machine_of().end() && it->second != machine &&
            legacy.jobs().at(id).type == j) {
          ++moved_count;
        }
      }
      CHECK(moved_count <= drop);
    }
    prev = next;
  }
}
