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

#include <gtest/gtest.h>

#include <algorithm>

#include "sklab/arinc/kernel_l1.hh"
#include "sklab/core/errors.hh"
#include "sklab/covert/covert.hh"

namespace sklab {
namespace covert {
namespace {

using arinc::Event;
using arinc::EventKind;
using arinc::KernelL1;
using arinc::L1Options;

constexpr std::uint8_t kP1 = 2, kP2 = 3;

KernelL1::State Steps(const KernelL1& m, KernelL1::State s, std::initializer_list<Event> es) {
  for (const auto& e : es) s = m.Exec(s, e);
  return s;
}

const Event kSchedP1{EventKind::kSchedule, kP1};
const Event kSchedP2{EventKind::kSchedule, kP2};
const Event kSchedT{EventKind::kSchedule, core::kTransmitter};
const Event kTransfer{EventKind::kTransferQueuingMessage, 0};

TEST(Variants, NamesAndNumbers) {
  for (auto v : kAllVariants) {
    EXPECT_EQ(ParseVariant(VariantName(v)), v);
    EXPECT_EQ(ParseVariant(std::to_string(VariantNumber(v))), v);
  }
  EXPECT_EQ(VariantLevel(VariantId::kCC4), 1);
  EXPECT_EQ(VariantLevel(VariantId::kCC5), 2);
  EXPECT_FALSE(ParseVariant("CC7").has_value());
  EXPECT_FALSE(ParseVariant("").has_value());
}

TEST(Variants, LosslessTransferKeepsTheSourceWhenTheDestinationIsFull) {
  L1Options o;
  o.lossless_queuing = true;
  const KernelL1 m(arinc::BaselineConfig(), o);
  const Event create_src{EventKind::kCreateQueuingPort, 0};
  const Event create_dst{EventKind::kCreateQueuingPort, 2};
  const Event send0{EventKind::kSendQueuingMessage, 1, 0};
  const Event send1{EventKind::kSendQueuingMessage, 1, 1};
  auto s = Steps(m, m.SystemInit(), {kSchedP2, create_dst, kSchedP1, create_src, send0,
                                   kSchedT, kTransfer, kSchedP1, send1, kSchedT, kTransfer});
  EXPECT_EQ(s.ports[0].len, 1);
  EXPECT_EQ(s.ports[0].buf[0], 1);
  EXPECT_EQ(s.ports[2].len, 1);
  EXPECT_EQ(s.ports[2].buf[0], 0);
  // A further send on the full source is refused and reported to the sender.
  s = Steps(m, s, {kSchedP1, send0});
  EXPECT_EQ(s.last_ret[0], arinc::kRetNotAvailable);
  EXPECT_EQ(s.ports[0].len, 1);
}

TEST(Variants, GlobalPortIdsAreConsecutiveAcrossPartitions) {
  L1Options o;
  o.global_port_ids = true;
  const KernelL1 m(arinc::BaselineConfig(), o);
  const auto s = Steps(m, m.SystemInit(),
                     {kSchedP2, {EventKind::kCreateQueuingPort, 2}, kSchedP1,
                      {EventKind::kCreateQueuingPort, 0}});
  EXPECT_EQ(s.ports[2].id, 1);
  EXPECT_EQ(s.ports[0].id, 2);
  // Without the counter the ids are the static ones.
  const KernelL1 b(arinc::BaselineConfig());
  const auto t = Steps(b, b.SystemInit(),
                     {kSchedP2, {EventKind::kCreateQueuingPort, 2}, kSchedP1,
                      {EventKind::kCreateQueuingPort, 0}});
  EXPECT_EQ(t.ports[2].id, 3);
  EXPECT_EQ(t.ports[0].id, 1);
}

TEST(Variants, ModeAwareSchedulerSkipsIdlePartitions) {
  L1Options o;
  o.mode_aware_scheduler = true;
  const KernelL1 m(arinc::BaselineConfig(), o);
  const Event idle{EventKind::kSetPartitionMode, static_cast<std::uint8_t>(arinc::Mode::kIdle)};
  const auto s = Steps(m, m.SystemInit(), {kSchedP1, idle, kSchedP1});
  EXPECT_EQ(s.cur, core::kTransmitter);
  EXPECT_EQ(m.ScheduleChoices(s).size(), 2u);
  EXPECT_EQ(Steps(m, m.SystemInit(), {kSchedP1}).cur, kP1);
}

CovertOptions Fast() {
  CovertOptions o;
  o.crosscheck = false;
  return o;
}

bool FailsOn(const VariantFinding& f, core::Condition c, EventKind k) {
  return std::any_of(f.failures.begin(), f.failures.end(), [&](const auto& v) {
    if (v.condition != c) return false;
    // Event names start with the kind name.
    const std::string& n = f.event_names[v.event];
    return n.rfind(arinc::KindName(k), 0) == 0;
  });
}

TEST(Findings, LosslessQueuingFailsLocalRespect) {
  const auto f = FindViolation(VariantId::kCC1, arinc::BaselineConfig(), Fast());
  EXPECT_TRUE(f.matches());
  EXPECT_EQ(f.level, 1);
  EXPECT_TRUE(FailsOn(f, core::Condition::kLR, EventKind::kTransferQueuingMessage));
  EXPECT_TRUE(FailsOn(f, core::Condition::kLR, EventKind::kReceiveQueuingMessage));
  for (const auto& c : f.claims) EXPECT_TRUE(c.replayed) << c.claim.text;
}

TEST(Findings, MissingOwnershipFailsLocalRespect) {
  const auto f = FindViolation(VariantId::kCC2, arinc::BaselineConfig(), Fast());
  EXPECT_TRUE(f.matches());
  EXPECT_FALSE(core::AllHold(f.failures, core::Condition::kLR));
}

TEST(Findings, SharedIdCounterFailsStepConsistency) {
  const auto f = FindViolation(VariantId::kCC3, arinc::BaselineConfig(), Fast());
  EXPECT_TRUE(f.matches());
  EXPECT_FALSE(core::AllHold(f.failures, core::Condition::kSC));
}

TEST(Findings, ModeAwareSchedulingFailsStepConsistencyOfSchedule) {
  const auto f = FindViolation(VariantId::kCC4, arinc::BaselineConfig(), Fast());
  EXPECT_TRUE(f.matches());
  EXPECT_TRUE(FailsOn(f, core::Condition::kSC, EventKind::kSchedule));
}

TEST(Findings, AllFailuresReplayOnTheirModel) {
  const auto f = FindViolation(VariantId::kCC1, arinc::BaselineConfig(), Fast());
  const auto conf = VariantConfig(VariantId::kCC1, arinc::BaselineConfig());
  const KernelL1 m(conf, VariantOptions(VariantId::kCC1).l1);
  ASSERT_FALSE(f.failures.empty());
  for (const auto& v : f.failures) EXPECT_TRUE(core::ReplayOnModel(m, v));
}

TEST(Findings, CrosscheckAgreesForTheFirstVariant) {
  const auto f = FindViolation(VariantId::kCC1, arinc::BaselineConfig());
  ASSERT_TRUE(f.crosscheck.has_value());
  EXPECT_TRUE(f.crosscheck->consistent());
  EXPECT_FALSE(f.crosscheck->noninfluence_holds);
}

TEST(Attack, LosslessQueuingCarriesOneBit) {
  const auto a = AttackTraceCC1(arinc::BaselineConfig());
  EXPECT_TRUE(a.variant_distinguishes);
  EXPECT_FALSE(a.baseline_distinguishes);
  EXPECT_EQ(a.bits(), 1);
  EXPECT_EQ(a.decoded_bit1, 1);
  EXPECT_EQ(a.decoded_bit0, 0);
  EXPECT_FALSE(a.sender.empty());
  EXPECT_NE(a.bit1, a.bit0);
}

}  // namespace
}  // namespace covert
}  // namespace sklab
