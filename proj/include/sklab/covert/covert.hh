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

#ifndef SKLAB_COVERT_COVERT_HH_
#define SKLAB_COVERT_COVERT_HH_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sklab/arinc/config.hh"
#include "sklab/arinc/event.hh"
#include "sklab/arinc/kernel_l2.hh"
#include "sklab/core/crosscheck.hh"
#include "sklab/core/unwinding.hh"

namespace sklab {
namespace covert {

enum class VariantId {
  kCC1 = 1,  // lossless queuing with visible send status
  kCC2,      // no port ownership check
  kCC3,      // global port id counter
  kCC4,      // mode-aware scheduler
  kCC5,      // global process id space
  kCC6,      // no process ownership check
};

inline constexpr std::array<VariantId, 6> kAllVariants = {
    VariantId::kCC1, VariantId::kCC2, VariantId::kCC3,
    VariantId::kCC4, VariantId::kCC5, VariantId::kCC6};

/// e.g. "CC1_LosslessQueuing".
const char* VariantName(VariantId v);
/// Accepts 1..6, "CC3" or the full name.
std::optional<VariantId> ParseVariant(std::string_view s);
int VariantNumber(VariantId v);
/// Specification level the variant mutates (1 or 2).
int VariantLevel(VariantId v);
arinc::L2Options VariantOptions(VariantId v);
/**
 * Configuration the variant is checked on: the given one, except that the
 * shared process-id variant caps every partition at one process so that its
 * space stays within the default state budget.
 */
arinc::KernelConfig VariantConfig(VariantId v, const arinc::KernelConfig& conf);

enum class Existence { kExists, kPotential, kVariantOnly };
const char* ExistenceName(Existence e);
/// Whether the channel is present in the standard itself.
Existence StandardExistence(VariantId v);

/// The failing condition and event kinds the channel is expected to produce.
struct ChannelClaim {
  core::Condition condition = core::Condition::kSC;
  std::vector<arinc::EventKind> kinds;
  std::optional<core::DomainId> d;  // required observer, when the claim names one
  std::string text;
};

std::vector<ChannelClaim> ExpectedClaims(VariantId v,
                                         const arinc::KernelConfig& conf);

struct ClaimResult {
  ChannelClaim claim;
  bool matched = false;
  std::optional<core::UnwindingVerdict> verdict;  // least matching failure
  bool replayed = false;  // witness reproduced on the model itself
};

struct VariantFinding {
  VariantId variant = VariantId::kCC1;
  int level = 1;
  std::size_t states = 0;
  std::vector<std::string> event_names;
  std::vector<std::string> domain_names;
  std::vector<core::UnwindingVerdict> failures;  // every failing verdict
  std::vector<ClaimResult> claims;
  // Bounded properties and their agreement with direct SC/LR checking.
  std::vector<core::PropertyVerdict> properties;
  std::optional<core::ConsistencyReport> crosscheck;

  bool matches() const;
};

struct CovertOptions {
  std::size_t state_budget = 2'000'000;
  core::UnwindingOptions unwinding;
  bool crosscheck = true;
  // Property bound per level; the second-level spaces are far larger.
  int crosscheck_len_l1 = 4;
  int crosscheck_len_l2 = 1;
};

/**
 * Builds the variant, runs the unwinding checks (the new-variable checks of
 * the refinement for level-2 allocation channels), and matches the failures
 * against the expected claims. Throws NoViolationFound if nothing fails.
 * Optionally also checks the bounded properties on the variant and compares
 * them with its direct SC/LR verdicts.
 */
VariantFinding FindViolation(VariantId v, const arinc::KernelConfig& conf,
                             const CovertOptions& opts = {});

/**
 * Two runs of the lossless-queuing variant that differ only in whether the
 * receiving partition consumes a message, followed by a send of the sending
 * partition. The sender's final view tells the runs apart; the same runs on
 * the baseline do not.
 */
struct AttackTrace {
  std::vector<std::string> bit1;  // receiver consumes
  std::vector<std::string> bit0;  // receiver stays idle
  std::string sender;
  bool variant_distinguishes = false;
  bool baseline_distinguishes = false;
  // Transmitted bit per run, decoded from the sender's last return value.
  int decoded_bit1 = -1;
  int decoded_bit0 = -1;
  int bits() const { return variant_distinguishes ? 1 : 0; }
};

AttackTrace AttackTraceCC1(const arinc::KernelConfig& conf);

}  // namespace covert
}  // namespace sklab

#endif /* SKLAB_COVERT_COVERT_HH_ */
