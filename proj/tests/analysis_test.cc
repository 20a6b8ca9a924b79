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

#include "sklab/arinc/kernel_l1.hh"
#include "sklab/arinc/kernel_l2.hh"
#include "sklab/core/battery.hh"
#include "sklab/core/crosscheck.hh"
#include "sklab/core/properties.hh"
#include "sklab/core/refinement.hh"
#include "sklab/core/space.hh"
#include "sklab/core/unwinding.hh"
#include "toy.hh"

namespace sklab {
namespace {

using core::Condition;
using core::PropertyId;
using testing::Toy;

constexpr core::DomainId kP2 = 3;

const core::UnwindingVerdict* Find(const std::vector<core::UnwindingVerdict>& vs,
                                   std::uint32_t e, Condition c) {
  for (const auto& v : vs) {
    if (v.event == e && v.condition == c) return &v;
  }
  return nullptr;
}

// ---- unwinding -------------------------------------------------------------

TEST(Unwinding, ToyHoldsEverywhere) {
  const Toy m;
  const auto sp = core::Explore(m);
  const auto vs = core::UnwindingChecker(sp.graph).CheckAll();
  ASSERT_EQ(vs.size(), 4u);
  EXPECT_TRUE(core::AllHold(vs));
}

TEST(Unwinding, LeakFailsLocalRespectForTheReceiver) {
  const Toy m(true);
  const auto sp = core::Explore(m);
  const auto vs = core::UnwindingChecker(sp.graph).CheckAll();
  EXPECT_TRUE(core::AllHold(vs, Condition::kSC));
  const auto* lr = Find(vs, 2, Condition::kLR);
  ASSERT_NE(lr, nullptr);
  ASSERT_FALSE(lr->holds);
  ASSERT_TRUE(lr->witness.has_value());
  EXPECT_EQ(lr->witness->d, kP2);
  EXPECT_TRUE(core::ReplayWitness(sp.graph, *lr));
  EXPECT_TRUE(core::ReplayOnModel(m, *lr));
  // The other events respect the policy.
  EXPECT_TRUE(Find(vs, 0, Condition::kLR)->holds);
  EXPECT_TRUE(Find(vs, 1, Condition::kLR)->holds);
}

TEST(Unwinding, BaselineFirstLevelHoldsWithAnyWorkerCount) {
  const arinc::KernelL1 m(arinc::BaselineConfig());
  const auto sp = core::Explore(m);
  const auto one = core::UnwindingChecker(sp.graph).CheckAll();
  EXPECT_EQ(one.size(), 48u);
  EXPECT_TRUE(core::AllHold(one));
  const auto three = core::UnwindingChecker(sp.graph, {.workers = 3}).CheckAll();
  ASSERT_EQ(three.size(), one.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(three[i].event, one[i].event);
    EXPECT_EQ(three[i].holds, one[i].holds);
  }
}

// ---- properties ------------------------------------------------------------

TEST(Properties, ToyHoldsAndLeakyToyViolates) {
  const Toy safe;
  const auto sp = core::Explore(safe);
  for (const auto& v : core::CheckProperties(sp.graph, {.max_len = 4})) {
    EXPECT_TRUE(v.holds) << core::PropertyName(v.property);
  }
  const Toy leaky(true);
  const auto lp = core::Explore(leaky);
  const auto vs = core::CheckProperties(lp.graph, {.max_len = 3});
  ASSERT_EQ(vs.size(), 7u);
  EXPECT_TRUE(core::CheckImplications(vs).consistent());
  for (const auto& v : vs) {
    if (v.property == PropertyId::kNoninterference) {
      EXPECT_FALSE(v.holds);
    }
    if (v.holds) continue;
    ASSERT_TRUE(v.counterexample.has_value());
    EXPECT_TRUE(core::ReplayCounterexample(lp.graph, v.property, *v.counterexample))
        << core::PropertyName(v.property);
  }
  const auto uw = core::UnwindingChecker(lp.graph).CheckAll();
  EXPECT_TRUE(core::CrosscheckUnwinding(uw, vs).consistent());
}

TEST(Properties, EnginesAgreeOnLeakyToy) {
  const auto sp = core::Explore(Toy(true));
  const auto ref = core::detail::CheckReference(sp.graph, {.max_len = 3});
  const auto q = core::detail::CheckQuotient(sp.graph, {.max_len = 3});
  ASSERT_TRUE(q.has_value());
  ASSERT_EQ(ref.size(), q->size());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(ref[i].holds, (*q)[i].holds);
}

TEST(Properties, NamesRoundTrip) {
  for (auto p : core::kAllProperties) {
    EXPECT_EQ(core::ParsePropertyName(core::PropertyName(p)), p);
  }
  EXPECT_FALSE(core::ParsePropertyName("bogus").has_value());
}

TEST(Properties, BaselineFirstLevelAtShortBound) {
  const arinc::KernelL1 m(arinc::BaselineConfig());
  const auto sp = core::Explore(m);
  const auto vs = core::CheckProperties(sp.graph, {.max_len = 2});
  for (const auto& v : vs) EXPECT_TRUE(v.holds) << core::PropertyName(v.property);
}

TEST(Properties, WorkBudgetIsEnforced) {
  const auto sp = core::Explore(arinc::KernelL1(arinc::BaselineConfig()));
  EXPECT_THROW(core::CheckProperties(sp.graph, {.max_len = 6}), BoundTooLarge);
}

TEST(Properties, MicroBatteryFindsNoDisagreement) {
  core::BatteryOptions o;
  o.models = 120;
  const auto r = core::RunMicroBattery(o);
  EXPECT_EQ(r.models, 120);
  EXPECT_EQ(r.engine_disagreements, 0);
  EXPECT_EQ(r.replay_failures, 0);
  EXPECT_EQ(r.implication_violations, 0);
  EXPECT_EQ(r.crosscheck_inconsistent, 0);
  EXPECT_EQ(r.oracle_mismatches, 0);
  EXPECT_EQ(r.invalid, 0);
  EXPECT_TRUE(r.ok());
  // Some models must be insecure, or the battery proves little.
  EXPECT_LT(r.all_properties_hold, r.models);
}

// ---- refinement ------------------------------------------------------------

// One queuing channel and one process per partition keeps the spaces small.
arinc::KernelConfig SmallConfig() {
  arinc::KernelConfig c;
  c.partitions = {{1, "P1", {"q_src"}, 1}, {2, "P2", {"q_dst"}, 1}};
  c.channels = {{arinc::ChannelMode::kQueuing, "chq", "q_src", "q_dst", 1}};
  return arinc::Finalize(c);
}

TEST(Refinement, IdentityAndComposition) {
  const Toy m(true);
  const auto sp = core::Explore(m);
  const auto id = core::IdentityMap(m);
  const auto r = core::CheckRefinement(m, sp, m, sp, id);
  EXPECT_TRUE(r.conditions_hold());
  EXPECT_TRUE(r.images.holds);
  EXPECT_TRUE(r.delta_skipped);
  const auto twice = core::Compose(id, id);
  EXPECT_TRUE(core::CheckRefinement(m, sp, m, sp, twice).conditions_hold());
}

TEST(Refinement, SecondLevelRefinesFirst) {
  const arinc::KernelL1 a(SmallConfig());
  const arinc::KernelL2 c(SmallConfig());
  const auto sa = core::Explore(a);
  const auto sc = core::Explore(c);
  const auto rm = arinc::BuildRefinementMap(c);
  const auto rep = core::CheckRefinement(a, sa, c, sc, rm);
  ASSERT_EQ(rep.conditions.size(), 6u);
  for (const auto& r : rep.conditions) EXPECT_TRUE(r.holds) << r.name << ": " << r.detail;
  EXPECT_TRUE(rep.images.holds);
  EXPECT_FALSE(rep.delta_skipped);
  EXPECT_TRUE(rep.delta_hold());
  const auto abs = core::UnwindingChecker(sa.graph).CheckAll();
  EXPECT_TRUE(core::ConcludeSecurity(core::AllHold(abs), rep));
  const auto direct = core::UnwindingChecker(sc.graph).CheckAll();
  for (const auto& x : core::CompareRoutes(rm.theta, abs, rep.delta, direct)) {
    EXPECT_TRUE(x.consistent()) << x.event;
  }
  const auto ti = core::CheckTraceInclusion(a, c, rm, 3);
  EXPECT_TRUE(ti.holds);
  EXPECT_GT(ti.sequences, 1000u);
  // Composing with the identity on top changes nothing.
  const auto comp = core::Compose(core::IdentityMap(a), rm);
  EXPECT_TRUE(core::CheckRefinement(a, sa, c, sc, comp).conditions_hold());
}

TEST(Refinement, PortTouchingStartBreaksStuttering) {
  const arinc::KernelL1 a(SmallConfig());
  arinc::L2Options o;
  o.start_touches_port = true;
  const arinc::KernelL2 c(SmallConfig(), o);
  const auto sa = core::Explore(a);
  const auto sc = core::Explore(c);
  const auto rep = core::CheckRefinement(a, sa, c, sc, arinc::BuildRefinementMap(c));
  ASSERT_NE(rep.first_failure(), nullptr);
  EXPECT_EQ(rep.first_failure()->id, 3);
  ASSERT_TRUE(rep.first_failure()->s_path.has_value());
  EXPECT_FALSE(core::ConcludeSecurity(true, rep));
  EXPECT_FALSE(core::CheckTraceInclusion(a, c, arinc::BuildRefinementMap(c), 5,
                                         100'000'000).holds);
}

TEST(Refinement, TraceInclusionRespectsTheWorkBudget) {
  const arinc::KernelL1 a(arinc::BaselineConfig());
  const arinc::KernelL2 c(arinc::BaselineConfig());
  EXPECT_THROW(core::CheckTraceInclusion(a, c, arinc::BuildRefinementMap(c), 6),
               BoundTooLarge);
}

TEST(Refinement, CrosscheckBookkeeping) {
  core::ConsistencyReport r;
  r.bound = 2;
  r.sc_holds = false;
  r.noninfluence_holds = false;
  EXPECT_TRUE(r.consistent());
  r.noninfluence_holds = true;
  EXPECT_FALSE(r.completeness());
  r.bound = 0;
  EXPECT_TRUE(r.completeness());
}

}  // namespace
}  // namespace sklab
