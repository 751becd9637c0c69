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

#ifndef DYNSCHED_GROUPING_HPP
#define DYNSCHED_GROUPING_HPP

#include <map>
#include <vector>

#include "dynsched/rational.hpp"

namespace dynsched {

// A job is large iff its size is at least eps * pmax, small otherwise.
bool job_is_large(const Rational& size, const Rational& epsilon,
                  const Rational& pmax);

// Groups small jobs (size < eps*pmax) into placeholder frames of size
// exactly eps*pmax. Keeps F <= f <= F+3 for F = (total small size)/(eps*pmax)
// and a potential that pays for frame-count changes:
//   phi = 3*eps*pmax * ((f -. (F+2)) + ((F+1) -. f)),  a -. b = max(a-b, 0).
class FrameLedger {
 public:
  FrameLedger(const Rational& epsilon, const Rational& pmax);

  struct Update {
    long long frame_delta = 0;
    Rational phi_before;
    Rational phi_after;
  };

  Update insert_small(const Rational& size);
  // Removes one small job of this exact size (sizes are interchangeable in
  // the ledger; per-job identity is the caller's bookkeeping).
  Update remove_small(const Rational& size);

  Rational frame_size() const { return frame_size_; }
  const Rational& total_small() const { return total_small_; }
  Rational F() const { return total_small_ / frame_size_; }
  long long f() const { return frames_; }
  Rational phi() const;
  long long small_count() const { return count_; }

 private:
  Update settle(const Rational& delta);

  Rational epsilon_;
  Rational pmax_;
  Rational frame_size_;
  Rational total_small_;
  std::map<Rational, long long> by_size_;
  long long count_ = 0;
  long long frames_ = 1;  // one frame from the start
};

// One small job with its identity; sizes are original units.
struct SmallJob {
  long long id = 0;
  Rational size;

  friend bool operator==(const SmallJob&, const SmallJob&) = default;
};

using SmallMap = std::map<int, std::vector<SmallJob>>;  // machine -> jobs

struct SmallPlacementResult {
  SmallMap placement;
  Rational moved_load;  // sizes of jobs that changed machine
};

// Follows the frame counts of the concrete schedule: pulls the overflow
// from machines whose small load exceeds (1 + frames)*frame_size, then
// places removed+new jobs one at a time on the machine with the largest
// slack frames*frame_size - small load. Afterwards every machine i obeys
//   (1 + frames_i)*fs >= small_load_i >= (frames_i - 3)*fs.
SmallPlacementResult place_small_jobs(const Rational& frame_size,
                                      const SmallMap& prev,
                                      const std::vector<long long>& frames,
                                      const std::vector<SmallJob>& inserted,
                                      const std::vector<long long>& removed_ids);

}  // namespace dynsched

#endif  // DYNSCHED_GROUPING_HPP
