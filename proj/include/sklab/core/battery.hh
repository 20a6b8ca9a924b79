/*
 * Copyright (c) 2026, The sklab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#ifndef SKLAB_CORE_BATTERY_HH_
#define SKLAB_CORE_BATTERY_HH_

#include <cstdint>
#include <vector>

namespace sklab {
namespace core {

struct BatteryOptions {
  std::uint64_t seed = 0;
  int models = 100;
  int max_len = 4;
  // Random (state, sequence, observer) samples per model for the oracle check.
  int oracle_samples = 100;
  int oracle_max_len = 6;
};

/**
 * Seeded random micro-models checked for internal agreement. Model i uses
 * seed + i and is deterministic for even i. Every counter except the last
 * two must be zero.
 */
struct BatteryReport {
  int models = 0;
  int deterministic = 0;
  int invalid = 0;                  // a model assumption fails
  int engine_disagreements = 0;     // quotient vs reference engine
  int replay_failures = 0;          // counterexample does not replay
  int implication_violations = 0;   // implication edges and equalities
  int crosscheck_inconsistent = 0;  // SC/LR vs noninfluence
  int oracle_mismatches = 0;        // memoized sources/ipurge vs recursion
  int oracle_samples = 0;
  std::vector<std::uint64_t> failing_seeds;
  // Informational.
  int sc_without_nonleakage = 0;
  int all_properties_hold = 0;

  bool ok() const { return failing_seeds.empty(); }
};

BatteryReport RunMicroBattery(const BatteryOptions& opts);

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_BATTERY_HH_ */
