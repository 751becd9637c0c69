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

#ifndef DYNSCHED_CORE_HPP
#define DYNSCHED_CORE_HPP

#include <string>
#include <vector>

#include "dynsched/rational.hpp"

namespace dynsched {

enum class Objective { kMakespan, kCovering };

inline const char* objective_name(Objective o) {
  return o == Objective::kMakespan ? "cmax" : "cmin";
}

// Power-of-(1+eps) grid. Exponents are found by exact repeated
// multiplication with integer bisection, never by logarithms.
class PowerGrid {
 public:
  explicit PowerGrid(const Rational& epsilon);

  const Rational& base() const { return base_; }

  Rational pow(long long k) const { return Rational::pow(base_, k); }

  // Smallest base^k >= x (x > 0).
  Rational next(const Rational& x) const;
  // Largest base^k < x (x > 0).
  Rational prev_strict(const Rational& x) const;
  // Largest base^k <= x (x > 0).
  Rational prev_weak(const Rational& x) const;

  bool on_grid(const Rational& x) const;

 private:
  // Exponent of the smallest power >= x.
  long long ceil_exponent(const Rational& x) const;

  Rational base_;
};

// Capacity threshold separating machines covered by explicit configurations
// from machines covered by the aggregate blue-area constraint.
// Satisfies eps * ell >= 2*pmax (makespan) resp. >= 3*pmax (covering), and
// ell is a power of (1+eps).
Rational threshold_ell(Objective objective, const Rational& epsilon,
                       const Rational& pmax);

// Static description of the engine-side instance: the job-type universe,
// machine types and the derived constants. Job multiplicities live in State.
struct Instance {
  Objective objective = Objective::kMakespan;
  Rational epsilon;
  Rational pmax;  // engine units

  // Type sizes. Real types first, distinct and ascending; the dedicated
  // frame type, when present, is appended last and may repeat a real size.
  std::vector<Rational> sizes;
  int frame_type = -1;

  std::vector<Rational> speeds;            // distinct powers of 1+eps, descending
  std::vector<long long> machine_counts;   // per speed type
  std::vector<int> machine_type;           // concrete machine id -> type index

  Rational ell;
  Rational granularity;  // gcd of all type sizes

  int type_count() const { return static_cast<int>(sizes.size()); }
  int real_type_count() const {
    return type_count() - (frame_type >= 0 ? 1 : 0);
  }
  long long machine_total() const;
  Rational blue_speed_sum(const std::vector<long long>& blue) const;

  // Validates inputs and fills the derived fields. `machine_speeds` is the
  // concrete per-machine speed list (already powers of 1+eps).
  static Instance build(Objective objective, const Rational& epsilon,
                        const Rational& pmax, std::vector<Rational> type_sizes,
                        bool with_frame_type,
                        const std::vector<Rational>& machine_speeds);
};

}  // namespace dynsched

#endif  // DYNSCHED_CORE_HPP
