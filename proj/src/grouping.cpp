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

#include "dynsched/grouping.hpp"

#include <algorithm>

namespace dynsched {

bool job_is_large(const Rational& size, const Rational& epsilon,
                  const Rational& pmax) {
  return size >= epsilon * pmax;
}

FrameLedger::FrameLedger(const Rational& epsilon, const Rational& pmax)
    : epsilon_(epsilon), pmax_(pmax), frame_size_(epsilon * pmax) {
  if (frame_size_.sign() <= 0) {
    throw ConfigurationError("frame size must be positive");
  }
}

Rational FrameLedger::phi() const {
  Rational big_f = F();
  Rational f_val = Rational(frames_);
  Rational up = f_val - (big_f + 2);
  Rational down = big_f + 1 - f_val;
  if (up.sign() < 0) up = 0;
  if (down.sign() < 0) down = 0;
  return 3 * frame_size_ * (up + down);
}

FrameLedger::Update FrameLedger::settle(const Rational& delta) {
  Update u;
  u.phi_before = phi();
  total_small_ += delta;
  Rational big_f = F();
  // Reset to the middle only when the corridor F <= f <= F+3 would break.
  if (Rational(frames_) < big_f || Rational(frames_) > big_f + 3) {
    long long target = big_f.ceil().convert_to<long long>() + 1;
    u.frame_delta = target - frames_;
    frames_ = target;
  }
  u.phi_after = phi();
  return u;
}

FrameLedger::Update FrameLedger::insert_small(const Rational& size) {
  if (size.sign() <= 0 || size >= frame_size_) {
    throw InputError("small-job size out of range");
  }
  by_size_[size] += 1;
  ++count_;
  return settle(size);
}

FrameLedger::Update FrameLedger::remove_small(const Rational& size) {
  auto it = by_size_.find(size);
  if (it == by_size_.end() || it->second == 0) {
    throw NoSuchJobError("no small job of this size");
  }
  it->second -= 1;
  if (it->second == 0) by_size_.erase(it);
  --count_;
  return settle(-size);
}

SmallPlacementResult place_small_jobs(const Rational& frame_size,
                                      const SmallMap& prev,
                                      const std::vector<long long>& frames,
                                      const std::vector<SmallJob>& inserted,
                                      const std::vector<long long>& removed_ids) {
  SmallPlacementResult result;
  const int m = static_cast<int>(frames.size());

  // Start from the previous placement minus the removed jobs.
  SmallMap cur;
  for (const auto& [machine, jobs] : prev) {
    for (const SmallJob& job : jobs) {
      bool removed = std::find(removed_ids.begin(), removed_ids.end(),
                               job.id) != removed_ids.end();
      if (!removed) cur[machine].push_back(job);
    }
  }

  std::vector<Rational> load(m, Rational(0));
  for (const auto& [machine, jobs] : cur) {
    if (machine < 0 || machine >= m) {
      throw InputError("small placement references unknown machine");
    }
    for (const SmallJob& job : jobs) load[machine] += job.size;
  }

  // Pull the overflow where the frame area shrank; pulled jobs re-enter the
  // pool together with the newly inserted ones. LIFO keeps pulls
  // deterministic.
  struct PoolJob {
    SmallJob job;
    int origin;  // -1 for new arrivals
  };
  std::vector<PoolJob> pool;
  for (const SmallJob& job : inserted) pool.push_back({job, -1});
  for (auto& [machine, jobs] : cur) {
    Rational cap = (Rational(1) + Rational(frames[machine])) * frame_size;
    while (load[machine] > cap && !jobs.empty()) {
      pool.push_back({jobs.back(), machine});
      load[machine] -= jobs.back().size;
      jobs.pop_back();
    }
  }
  std::sort(pool.begin(), pool.end(),
            [](const PoolJob& a, const PoolJob& b) { return a.job.id < b.job.id; });

  // Place every pool job on the machine with the largest frame slack.
  for (const PoolJob& p : pool) {
    int pick = 0;
    Rational best = Rational(frames[0]) * frame_size - load[0];
    for (int i = 1; i < m; ++i) {
      Rational slack = Rational(frames[i]) * frame_size - load[i];
      if (slack > best) {
        best = slack;
        pick = i;
      }
    }
    cur[pick].push_back(p.job);
    load[pick] += p.job.size;
    if (p.origin >= 0 && p.origin != pick) result.moved_load += p.job.size;
  }

  // Repair any machine still more than three frames short: feed it from
  // the most loaded machine relative to its frames. Deficits only appear
  // where the frame count grew or jobs were removed, so these moves stay
  // inside the same budget as the pulls.
  for (long long guard = 0;; ++guard) {
    if (guard > 1'000'000) {
      throw InvariantViolation("small-job repair failed to settle");
    }
    int deficit = -1;
    Rational worst;
    for (int i = 0; i < m; ++i) {
      Rational slack = Rational(frames[i]) * frame_size - load[i];
      if (slack > 3 * frame_size && (deficit < 0 || slack > worst)) {
        deficit = i;
        worst = slack;
      }
    }
    if (deficit < 0) break;
    int donor = -1;
    Rational donor_slack;
    for (int i = 0; i < m; ++i) {
      if (cur[i].empty() || i == deficit) continue;
      Rational slack = Rational(frames[i]) * frame_size - load[i];
      if (donor < 0 || slack < donor_slack) {
        donor = i;
        donor_slack = slack;
      }
    }
    if (donor < 0) {
      throw InvariantViolation("small-job repair found no donor");
    }
    SmallJob job = cur[donor].back();
    cur[donor].pop_back();
    load[donor] -= job.size;
    cur[deficit].push_back(job);
    load[deficit] += job.size;
    result.moved_load += job.size;
  }

  for (auto it = cur.begin(); it != cur.end();) {
    if (it->second.empty()) {
      it = cur.erase(it);
    } else {
      ++it;
    }
  }
  result.placement = std::move(cur);
  return result;
}

}  // namespace dynsched
