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
#include "sklab/arinc/kernel_l2.hh"
#include "sklab/core/errors.hh"

namespace sklab {
namespace arinc {
namespace {

// Baseline layout: ports q_src(0, id 1), s_src(1, id 2), q_dst(2, id 3),
// s_dst(3, id 4); channels chq(0) and chs(1); P1 = domain 2, P2 = domain 3.
constexpr std::uint8_t kP1 = 2, kP2 = 3;
const Event kSchedP1{EventKind::kSchedule, kP1};
const Event kSchedP2{EventKind::kSchedule, kP2};
const Event kSchedT{EventKind::kSchedule, core::kTransmitter};
const Event kCreateQSrc{EventKind::kCreateQueuingPort, 0};
const Event kCreateQDst{EventKind::kCreateQueuingPort, 2};
const Event kCreateSSrc{EventKind::kCreateSamplingPort, 1};
const Event kCreateSDst{EventKind::kCreateSamplingPort, 3};
const Event kTransferQ{EventKind::kTransferQueuingMessage, 0};
const Event kTransferS{EventKind::kTransferSamplingMessage, 1};
const Event kReceive{EventKind::kReceiveQueuingMessage, 3};
const Event kRead{EventKind::kReadSamplingMessage, 4};
Event Send(std::uint8_t m) { return {EventKind::kSendQueuingMessage, 1, m}; }
Event Write(std::uint8_t m) { return {EventKind::kWriteSamplingMessage, 2, m}; }
Event SetMode(Mode m) { return {EventKind::kSetPartitionMode, static_cast<std::uint8_t>(m)}; }

template <class M>
typename M::State Steps(const M& m, typename M::State s, std::initializer_list<Event> es) {
  for (const auto& e : es) s = m.Exec(s, e);
  return s;
}

class L1Test : public ::testing::Test {
 protected:
  KernelL1 m{BaselineConfig()};
  // Both queuing ports created.
  StateL1 Ready() const {
    return Steps(m, m.SystemInit(), {kSchedP1, kCreateQSrc, kSchedP2, kCreateQDst});
  }
};

TEST_F(L1Test, InitialState) {
  const auto s = m.SystemInit();
  EXPECT_EQ(s.cur, core::kTransmitter);
  EXPECT_EQ(s.mode(0), Mode::kColdStart);
  EXPECT_EQ(s.mode(1), Mode::kColdStart);
  for (const auto& p : s.ports) EXPECT_FALSE(p.created);
}

TEST_F(L1Test, ScheduleHasOneChoicePerPartitionPlusTransmitter) {
  const auto choices = m.ScheduleChoices(m.SystemInit());
  ASSERT_EQ(choices.size(), 3u);
  std::vector<int> curs;
  for (const auto& c : choices) curs.push_back(c.cur);
  std::sort(curs.begin(), curs.end());
  EXPECT_EQ(curs, (std::vector<int>{core::kTransmitter, kP1, kP2}));
}

TEST_F(L1Test, EventDomains) {
  const auto s = Steps(m, m.SystemInit(), {kSchedP2});
  EXPECT_EQ(m.dom(s, kSchedP1), core::kScheduler);
  EXPECT_EQ(m.dom(s, kTransferQ), core::kTransmitter);
  EXPECT_EQ(m.dom(s, Send(0)), kP2);
  EXPECT_EQ(m.dom(m.SystemInit(), Send(0)), core::kTransmitter);
}

TEST_F(L1Test, OnlyTheOwnerCreatesAPort) {
  const auto by_p2 = Steps(m, m.SystemInit(), {kSchedP2, kCreateQSrc});
  EXPECT_FALSE(by_p2.ports[0].created);
  const auto by_p1 = Steps(m, m.SystemInit(), {kSchedP1, kCreateQSrc});
  EXPECT_TRUE(by_p1.ports[0].created);
  EXPECT_EQ(by_p1.ports[0].id, 1);
  EXPECT_EQ(Steps(m, by_p1, {kCreateQSrc}), by_p1);  // idempotent
}

TEST_F(L1Test, SendTransferReceive) {
  auto s = Steps(m, Ready(), {kSchedP1, Send(1)});
  EXPECT_EQ(s.ports[0].len, 1);
  s = Steps(m, s, {kSchedT, kTransferQ});
  EXPECT_EQ(s.ports[0].len, 0);
  EXPECT_EQ(s.ports[2].len, 1);
  EXPECT_EQ(s.ports[2].buf[0], 1);
  auto [r, msg] = m.ReceiveQueMsg(Steps(m, s, {kSchedP2}), 3);
  ASSERT_TRUE(msg.has_value());
  EXPECT_EQ(*msg, 1);
  EXPECT_EQ(r.ports[2].len, 0);
}

TEST_F(L1Test, SendToFullSourceIsLostSilently) {
  const auto s = Steps(m, Ready(), {kSchedP1, Send(0)});
  const auto [r, ok] = m.SendQueMsgLost(s, 1, 1);
  EXPECT_TRUE(ok);
  EXPECT_EQ(r, s);
}

TEST_F(L1Test, TransferToFullDestinationDropsTheMessage) {
  const auto s = Steps(m, Ready(), {kSchedP1, Send(0), kSchedT, kTransferQ,
                                  kSchedP1, Send(1), kSchedT, kTransferQ});
  EXPECT_EQ(s.ports[0].len, 0);  // source drained
  EXPECT_EQ(s.ports[2].len, 1);
  EXPECT_EQ(s.ports[2].buf[0], 0);  // first message kept
}

TEST_F(L1Test, TransferWithoutDestinationDropsTheMessage) {
  const auto s = Steps(m, m.SystemInit(),
                     {kSchedP1, kCreateQSrc, Send(1), kSchedT, kTransferQ});
  EXPECT_EQ(s.ports[0].len, 0);
  EXPECT_FALSE(s.ports[2].created);
}

TEST_F(L1Test, ForeignReceiveIsANoOp) {
  const auto s = Steps(m, Ready(), {kSchedP1, Send(1), kSchedT, kTransferQ, kSchedP1});
  EXPECT_EQ(Steps(m, s, {kReceive}), s);
}

TEST_F(L1Test, SamplingOverwritesAndReadsWithoutConsuming) {
  auto s = Steps(m, m.SystemInit(), {kSchedP1, kCreateSSrc, Write(0), Write(1),
                                   kSchedP2, kCreateSDst, kSchedT, kTransferS});
  EXPECT_EQ(s.ports[1].buf[0], 1);
  EXPECT_EQ(s.ports[3].len, 1);
  EXPECT_EQ(s.ports[3].buf[0], 1);
  s = Steps(m, s, {kSchedP2});
  const auto [r, v] = m.ReadSampMsg(s, 4);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, 1);
  EXPECT_EQ(r, s);
}

TEST_F(L1Test, ModeTransitions) {
  const auto s = Steps(m, m.SystemInit(), {kSchedP1, SetMode(Mode::kWarmStart)});
  EXPECT_EQ(s.mode(0), Mode::kColdStart);  // COLD_START -> WARM_START refused
  const auto n = Steps(m, s, {SetMode(Mode::kNormal)});
  EXPECT_EQ(n.mode(0), Mode::kNormal);
  EXPECT_EQ(Steps(m, n, {SetMode(Mode::kIdle)}).mode(0), Mode::kIdle);
}

TEST_F(L1Test, InterferenceFollowsTheChannelMatrix) {
  EXPECT_TRUE(m.interferes(kP1, core::kTransmitter));
  EXPECT_TRUE(m.interferes(core::kTransmitter, kP2));
  EXPECT_FALSE(m.interferes(kP1, kP2));
  EXPECT_FALSE(m.interferes(kP2, core::kTransmitter));
  EXPECT_FALSE(m.interferes(core::kTransmitter, kP1));
  for (core::DomainId d = 0; d < 4; ++d) {
    EXPECT_TRUE(m.interferes(core::kScheduler, d));
    EXPECT_TRUE(m.interferes(d, d));
    if (d != core::kScheduler) {
      EXPECT_FALSE(m.interferes(d, core::kScheduler));
    }
  }
}

TEST_F(L1Test, SenderCannotObserveSourceFullness) {
  const auto s = Steps(m, Ready(), {kSchedP1});
  EXPECT_TRUE(m.vpeq(s, kP1, Steps(m, s, {Send(0)})));
  EXPECT_FALSE(m.vpeq(s, core::kTransmitter, Steps(m, s, {Send(0)})));
}

TEST_F(L1Test, EventUniverse) {
  EXPECT_EQ(m.events().size(), 24u);
  EXPECT_EQ(m.event_name(Send(1)), "SendQueuingMessage(1,1)");
  EXPECT_EQ(m.event_name(kSchedT), "Schedule(T)");
  EXPECT_EQ(m.event_name(kCreateQDst), "CreateQueuingPort(q_dst)");
}

// ---- second level ----------------------------------------------------------

Event Create(std::uint8_t prio) { return {EventKind::kCreateProcess, prio}; }
Event Start(std::uint8_t part, std::uint8_t slot) { return {EventKind::kStartProcess, part, slot}; }
Event Stop(std::uint8_t part, std::uint8_t slot) { return {EventKind::kStopProcess, part, slot}; }
const Event kSchedProc{EventKind::kScheduleProcess};

class L2Test : public ::testing::Test {
 protected:
  KernelL2 m{BaselineConfig()};
};

TEST_F(L2Test, EventUniverseExtendsTheFirstLevel) {
  const KernelL1 l1(BaselineConfig());
  ASSERT_EQ(m.num_refined_events(), l1.events().size());
  for (std::size_t i = 0; i < l1.events().size(); ++i) {
    EXPECT_EQ(m.events()[i], l1.events()[i]);
  }
  for (std::size_t i = m.num_refined_events(); i < m.events().size(); ++i) {
    EXPECT_TRUE(IsProcessEvent(m.events()[i].kind));
  }
}

TEST_F(L2Test, CreateProcessRespectsModeAndBound) {
  auto s = Steps(m, m.initial(), {kSchedP2, Create(1)});
  EXPECT_EQ(s.procs[1][0].st(), ProcState::kDormant);
  EXPECT_EQ(s.procs[1][0].prio, 1);
  EXPECT_EQ(Steps(m, s, {Create(0)}), s);  // P2 holds at most one process
  const auto n = Steps(m, m.initial(), {kSchedP1, SetMode(Mode::kNormal), Create(0)});
  EXPECT_EQ(n.procs[0][0].st(), ProcState::kAbsent);
}

TEST_F(L2Test, StartWaitsUntilNormalThenSchedulesByPriority) {
  auto s = Steps(m, m.initial(), {kSchedP1, Create(0), Create(1), Start(0, 0), Start(0, 1)});
  EXPECT_EQ(s.procs[0][0].st(), ProcState::kWaiting);
  s = Steps(m, s, {SetMode(Mode::kNormal)});
  EXPECT_EQ(s.procs[0][0].st(), ProcState::kReady);
  s = Steps(m, s, {kSchedProc});
  EXPECT_EQ(s.procs[0][1].st(), ProcState::kRunning);  // higher priority
  EXPECT_EQ(s.cur_proc[0], 2);
  s = Steps(m, s, {Stop(0, 1)});
  EXPECT_EQ(s.procs[0][1].st(), ProcState::kDormant);
  EXPECT_EQ(s.cur_proc[0], 0);
}

TEST_F(L2Test, EqualPrioritiesGoToTheLeastSlot) {
  auto s = Steps(m, m.initial(), {kSchedP1, Create(1), Create(1), Start(0, 0), Start(0, 1),
                                SetMode(Mode::kNormal), kSchedProc});
  EXPECT_EQ(s.procs[0][0].st(), ProcState::kRunning);
  EXPECT_EQ(s.procs[0][1].st(), ProcState::kReady);
}

TEST_F(L2Test, ForeignProcessServicesAreRefused) {
  const auto s = Steps(m, m.initial(), {kSchedP2, Create(0), kSchedP1});
  EXPECT_EQ(Steps(m, s, {Start(1, 0)}), s);
  const KernelL2 open(BaselineConfig(), [] {
    L2Options o;
    o.no_process_ownership = true;
    return o;
  }());
  const auto t = Steps(open, Steps(open, open.initial(), {kSchedP2, Create(0), kSchedP1}),
                     {Start(1, 0)});
  EXPECT_EQ(t.procs[1][0].st(), ProcState::kWaiting);
}

TEST_F(L2Test, LeavingNormalClearsTheProcessTable) {
  auto s = Steps(m, m.initial(), {kSchedP1, Create(0), Start(0, 0), SetMode(Mode::kNormal),
                                kSchedProc, SetMode(Mode::kIdle)});
  EXPECT_EQ(s.procs[0][0].st(), ProcState::kAbsent);
  EXPECT_EQ(s.cur_proc[0], 0);
}

TEST_F(L2Test, ViewSplitsIntoAbstractAndNewParts) {
  const auto s = Steps(m, m.initial(), {kSchedP1, Create(1)});
  EXPECT_EQ(m.abstract().View(s.base, kP1) + "|" + m.DeltaView(s, kP1), m.View(s, kP1));
  EXPECT_TRUE(m.DeltaView(s, core::kTransmitter).empty());
  EXPECT_NE(m.DeltaView(s, kP1), m.DeltaView(m.initial(), kP1));
}

// ---- configuration constraints ---------------------------------------------

KernelConfig Raw() {
  KernelConfig c;
  c.partitions = {{1, "P1", {"a"}, 1}, {2, "P2", {"b"}, 1}};
  c.channels = {{ChannelMode::kQueuing, "ch", "a", "b", 1}};
  return c;
}

std::string Violation(const KernelConfig& c) {
  try {
    Finalize(c);
  } catch (const InvalidConfig& e) {
    return e.constraint();
  }
  return "";
}

TEST(Config, BaselineLayout) {
  const auto c = BaselineConfig();
  ASSERT_EQ(c.ports.size(), 4u);
  EXPECT_EQ(c.ports[2].name, "q_dst");
  EXPECT_EQ(c.ports[2].id, 3);
  EXPECT_EQ(c.ports[2].owner, 1);
  EXPECT_EQ(c.ports[2].dir, PortDir::kDest);
  EXPECT_EQ(c.channel_source(0), 0);
  EXPECT_EQ(c.channel_dest(1), 3);
}

TEST(Config, ConstraintViolationsAreNamed) {
  EXPECT_EQ(Violation(Raw()), "");
  auto same = Raw();
  same.partitions[0].ports = {"a", "b"};
  same.partitions[1].ports = {};
  EXPECT_EQ(Violation(same), "channel endpoints must belong to distinct partitions");
  auto dup = Raw();
  dup.partitions[1].ports = {"a"};
  EXPECT_EQ(Violation(dup), "duplicate port name 'a'");
  auto cap = Raw();
  cap.channels[0].capacity = 0;
  EXPECT_EQ(Violation(cap).rfind("queuing capacity out of range", 0), 0u);
  auto dangling = Raw();
  dangling.channels[0].dest = "zz";
  EXPECT_EQ(Violation(dangling), "channel endpoint names an unconfigured port");
  auto unused = Raw();
  unused.partitions[0].ports.push_back("c");
  EXPECT_EQ(Violation(unused), "port 'c' is not connected to a channel");
  auto reserved = Raw();
  reserved.partitions[0].name = "T";
  EXPECT_EQ(Violation(reserved), "partition name must be nonempty and not S/T");
  auto empty = Raw();
  empty.alphabet.clear();
  EXPECT_EQ(Violation(empty), "message alphabet must be nonempty");
}

}  // namespace
}  // namespace arinc
}  // namespace sklab
