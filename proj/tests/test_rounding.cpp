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

#include <set>

#include "dynsched/rounding.hpp"

using dynsched::Objective;
using dynsched::Rational;
using dynsched::round_job;
using dynsched::round_speed;

namespace {
Rational frac(long long n, long long d) {
  return Rational(dynsched::BigInt(n), dynsched::BigInt(d));
}
}  // namespace

TEST_CASE("job rounding on known points") {
  Rational eps = frac(1, 2);
  CHECK(round_job(5, eps, 8, Objective::kMakespan) == Rational(1));
  CHECK(round_job(8, eps, 8, Objective::kMakespan) == Rational(1));
  CHECK(round_job(4, eps, 8, Objective::kMakespan) == Rational(1));
  CHECK(round_job(4, eps, 8, Objective::kCovering) == Rational(1));
  CHECK(round_job(frac(1, 3), frac(1, 3), 1, Objective::kMakespan) ==
        Rational(1));
  CHECK_THROWS_AS(round_job(1, eps, 8, Objective::kMakespan),
                  dynsched::InputError);
  CHECK_THROWS_AS(round_job(9, eps, 8, Objective::kMakespan),
                  dynsched::InputError);
}

TEST_CASE("speed rounding on known points") {
  Rational eps = frac(1, 2);
  CHECK(round_speed(1, eps, Objective::kMakespan) == Rational(1));
  CHECK(round_speed(frac(13, 10), eps, Objective::kMakespan) == frac(3, 2));
  CHECK(round_speed(frac(13, 10), eps, Objective::kCovering) == Rational(1));
}

TEST_CASE("rounding direction and loss bounds on a dense lattice") {
  for (long long e : {1, 2, 3}) {
    Rational eps = frac(1, e);
    Rational one_eps = Rational(1) + eps;
    Rational loss_up = one_eps * one_eps * one_eps;
    for (long long pm : {1, 4, 8}) {
      Rational pmax(pm);
      Rational unit = eps * pmax;
      std::set<Rational> down_values;
      for (long long k = 0; k <= 96; ++k) {
        Rational p = unit + (pmax - unit) * frac(k, 96);
        Rational down = round_job(p, eps, pmax, Objective::kMakespan) * unit;
        Rational up = round_job(p, eps, pmax, Objective::kCovering) * unit;
        CHECK(down <= p);
        CHECK(p <= loss_up * down);
        CHECK(up >= p);
        CHECK(up <= pmax);
        // covering rounds up by less than the two grid stages combined
        CHECK(up <= one_eps * p + unit);
        // scaled values are integers in [1, 1/eps]
        Rational scaled = down / unit;
        CHECK(scaled.is_integer());
        CHECK(scaled >= Rational(1));
        CHECK(scaled <= Rational(e));
        down_values.insert(scaled);
        // Re-rounding never increases and stabilizes after one application.
        // (Exact idempotence fails off the power grid, e.g. eps=1/3 maps
        // 2*unit down to 1*unit.)
        Rational re = round_job(down, eps, pmax, Objective::kMakespan);
        CHECK(re <= scaled);
        CHECK(round_job(re * unit, eps, pmax, Objective::kMakespan) == re);
      }
      // type-count bound
      dynsched::PowerGrid grid(eps);
      long long log_term = 0;
      while (grid.pow(log_term) < Rational(e)) ++log_term;
      CHECK(static_cast<long long>(down_values.size()) <= e * (log_term + 2));
    }
  }
}

TEST_CASE("unrounding keeps machines and recomputes loads") {
  std::unordered_map<long long, Rational> sizes{{1, 5}, {2, 3}};
  std::vector<dynsched::JobPlacement> placements{{1, 0}, {2, 1}};
  auto loads = dynsched::unround_schedule(placements, sizes, 2);
  CHECK(loads[0] == Rational(5));
  CHECK(loads[1] == Rational(3));
  CHECK(dynsched::unround_schedule({}, sizes, 2) ==
        std::vector<Rational>{0, 0});
  CHECK_THROWS_AS(dynsched::unround_schedule({{3, 0}}, sizes, 2),
                  dynsched::InvariantViolation);

  // one job of 5 rounded to 4 on a unit machine: ratio within (1+eps)^3
  Rational eps = frac(1, 2);
  Rational rounded_back = round_job(5, eps, 8, Objective::kMakespan) * eps * 8;
  CHECK(rounded_back == Rational(4));
  CHECK(Rational(5) / rounded_back <=
        (Rational(1) + eps) * (Rational(1) + eps) * (Rational(1) + eps));
}
