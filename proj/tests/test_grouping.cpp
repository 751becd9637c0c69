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

#include <algorithm>
#include <random>

#include "dynsched/grouping.hpp"

using dynsched::FrameLedger;
using dynsched::Rational;
using dynsched::SmallJob;
using dynsched::SmallMap;

namespace {
Rational frac(long long n, long long d) {
  return Rational(dynsched::BigInt(n), dynsched::BigInt(d));
}
}  // namespace

TEST_CASE("size partition boundary") {
  // eps = 1/2, pmax = 8: the boundary 4 is large.
  Rational eps = frac(1, 2);
  CHECK(dynsched::job_is_large(4, eps, 8));
  CHECK_FALSE(dynsched::job_is_large(3, eps, 8));
  CHECK(dynsched::job_is_large(8, eps, 8));
}

TEST_CASE("ledger starts at one frame and zero potential") {
  FrameLedger ledger(1, 1);
  CHECK(ledger.f() == 1);
  CHECK(ledger.F() == Rational(0));
  CHECK(ledger.phi() == Rational(0));
}

TEST_CASE("corridor violation resets the frame count to the middle") {
  // frame size 1; F reaches 0.8, then adding 0.4 pushes F past f = 1.
  FrameLedger ledger(1, 1);
  ledger.insert_small(frac(4, 5));
  CHECK(ledger.f() == 1);
  FrameLedger::Update upd = ledger.insert_small(frac(2, 5));
  CHECK(ledger.F() == frac(6, 5));
  CHECK(ledger.f() == 3);  // ceil(1.2) + 1
  CHECK(upd.frame_delta == 2);
  CHECK(upd.phi_after == Rational(0));
}

TEST_CASE("removal identity must exist") {
  FrameLedger ledger(1, 1);
  ledger.insert_small(frac(1, 2));
  CHECK_THROWS_AS(ledger.remove_small(frac(1, 3)), dynsched::NoSuchJobError);
  ledger.remove_small(frac(1, 2));
  CHECK(ledger.small_count() == 0);
  CHECK_THROWS_AS(ledger.insert_small(Rational(2)), dynsched::InputError);
}

TEST_CASE("potential pays for frame changes on random event streams") {
  std::mt19937_64 rng(13);
  Rational eps = frac(1, 2);
  Rational pmax = 8;
  Rational unit = eps * pmax;  // 4
  for (int round = 0; round < 10; ++round) {
    FrameLedger ledger(eps, pmax);
    std::vector<Rational> live;
    for (int step = 0; step < 300; ++step) {
      bool insert = live.empty() || rng() % 100 < 55;
      Rational phi_before = ledger.phi();
      long long f_before = ledger.f();
      FrameLedger::Update upd;
      Rational size;
      if (insert) {
        size = Rational(1 + static_cast<long long>(rng() % 15), 4);
        upd = ledger.insert_small(size);
        live.push_back(size);
      } else {
        std::size_t pick = rng() % live.size();
        size = live[pick];
        live.erase(live.begin() + pick);
        upd = ledger.remove_small(size);
      }
      Rational big_f = ledger.F();
      Rational f_val = Rational(ledger.f());
      REQUIRE(big_f <= f_val);
      REQUIRE(f_val <= big_f + 3);
      Rational dphi = ledger.phi() - phi_before;
      CHECK(abs(dphi) <= 3 * unit);
      long long df = ledger.f() - f_before;
      CHECK(df == upd.frame_delta);
      CHECK(unit * Rational(df < 0 ? -df : df) + dphi <= 3 * size);
      if (df != 0) {
        CHECK(ledger.phi() == Rational(0));
        CHECK(Rational(ledger.f()) == Rational(big_f.ceil(), 1) + 1);
      }
    }
  }
}

TEST_CASE("small jobs follow frames: single machine essentials") {
  Rational fs = 1;  // frame size
  SmallMap prev;
  // no small jobs at all
  auto empty = dynsched::place_small_jobs(fs, prev, {2, 1}, {}, {});
  CHECK(empty.placement.empty());
  CHECK(empty.moved_load == Rational(0));

  // one frame on machine 1, one half-frame job lands there
  SmallMap one;
  auto placed = dynsched::place_small_jobs(fs, one, {0, 1},
                                           {SmallJob{1, frac(1, 2)}}, {});
  REQUIRE(placed.placement.count(1) == 1);
  CHECK(placed.placement.at(1).size() == 1);
  CHECK(placed.moved_load == Rational(0));
}

TEST_CASE("overflow is pulled and re-placed on the slack machine") {
  Rational fs = 1;
  SmallMap prev;
  prev[0] = {SmallJob{1, frac(3, 4)}, SmallJob{2, frac(3, 4)},
             SmallJob{3, frac(3, 4)}};  // load 2.25 against 1 frame
  // machine 0 drops to 0 frames, machine 1 gains 3
  auto placed = dynsched::place_small_jobs(fs, prev, {0, 3}, {}, {});
  Rational load0 = 0, load1 = 0;
  if (placed.placement.count(0)) {
    for (const SmallJob& j : placed.placement.at(0)) load0 += j.size;
  }
  if (placed.placement.count(1)) {
    for (const SmallJob& j : placed.placement.at(1)) load1 += j.size;
  }
  CHECK(load0 <= (Rational(1) + Rational(0)) * fs);
  CHECK(load1 >= (Rational(3) - 3) * fs);
  CHECK(load0 + load1 == frac(9, 4));
  CHECK(placed.moved_load > Rational(0));
}

TEST_CASE("sandwich bounds hold along random frame streams") {
  std::mt19937_64 rng(29);
  Rational fs = 2;
  const int m = 3;
  SmallMap prev;
  std::vector<long long> frames(m, 1);
  long long next_id = 1;
  std::vector<SmallJob> live;
  for (int step = 0; step < 250; ++step) {
    // random walk on the frame counts, never dropping the total below F
    Rational total = 0;
    for (const auto& [mach, jobs] : prev) {
      for (const SmallJob& j : jobs) total += j.size;
    }
    std::vector<long long> next = frames;
    int which = static_cast<int>(rng() % m);
    next[which] = std::max<long long>(0, next[which] +
                                             (rng() % 2 == 0 ? 1 : -1));
    long long total_frames = 0;
    for (long long f : next) total_frames += f;
    Rational big_f = total / fs;
    if (Rational(total_frames) < big_f || Rational(total_frames) > big_f + 3) {
      next = frames;  // keep the corridor
    }

    std::vector<SmallJob> inserted;
    std::vector<long long> removed;
    if (live.empty() || rng() % 100 < 60) {
      Rational size(1 + static_cast<long long>(rng() % 7), 4);
      inserted.push_back(SmallJob{next_id++, size});
    } else {
      std::size_t pick = rng() % live.size();
      removed.push_back(live[pick].id);
    }
    // keep the corridor after the job change as well
    {
      Rational t2 = total;
      for (const SmallJob& j : inserted) t2 += j.size;
      for (long long id : removed) {
        for (const SmallJob& j : live) {
          if (j.id == id) t2 -= j.size;
        }
      }
      Rational fr((long long)0);
      for (long long f : next) fr += Rational(f);
      if (fr < t2 / fs) {
        long long add = ((t2 / fs) - fr).ceil().convert_to<long long>() + 1;
        next[0] += add;
      } else if (fr > t2 / fs + 3) {
        long long cut = (fr - t2 / fs - 3).ceil().convert_to<long long>();
        next[0] = std::max<long long>(0, next[0] - cut);
      }
    }

    auto placed = dynsched::place_small_jobs(fs, prev, next, inserted, removed);
    std::vector<Rational> load(m, Rational(0));
    for (const auto& [mach, jobs] : placed.placement) {
      for (const SmallJob& j : jobs) load[mach] += j.size;
    }
    for (int i = 0; i < m; ++i) {
      CHECK((Rational(1) + Rational(next[i])) * fs >= load[i]);
      CHECK(load[i] >= (Rational(next[i]) - 3) * fs);
    }
    Rational bound = 0;
    for (int i = 0; i < m; ++i) {
      long long d = next[i] - frames[i];
      bound += Rational(d < 0 ? -d : d) * fs;
    }
    for (const SmallJob& j : inserted) bound += j.size;
    for (long long id : removed) {
      for (const SmallJob& j : live) {
        if (j.id == id) bound += j.size;
      }
    }
    CHECK(placed.moved_load <= 2 * bound + Rational(0));

    for (const SmallJob& j : inserted) live.push_back(j);
    for (long long id : removed) {
      live.erase(std::remove_if(live.begin(), live.end(),
                                [&](const SmallJob& j) { return j.id == id; }),
                 live.end());
    }
    prev = placed.placement;
    frames = next;
  }
}
