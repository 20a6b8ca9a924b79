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
#include "sklab/core/micro.hh"
#include "sklab/core/quotient.hh"
#include "sklab/core/sources.hh"
#include "sklab/core/space.hh"
#include "sklab/core/validate.hh"
#include "toy.hh"

namespace sklab {
namespace {

using core::DomainSet;
using core::EventSeq;
using testing::Toy;

constexpr core::DomainId kP1 = 2;
constexpr core::DomainId kP2 = 3;

DomainSet Set(std::initializer_list<core::DomainId> ds) {
  DomainSet s;
  for (auto d : ds) s.insert(d);
  return s;
}

TEST(DomainSet, BasicOperations) {
  DomainSet a = Set({0, 3});
  EXPECT_TRUE(a.contains(0));
  EXPECT_FALSE(a.contains(1));
  EXPECT_EQ(a.size(), 2);
  EXPECT_TRUE(a.intersects(Set({3, 5})));
  EXPECT_FALSE(a.intersects(Set({1})));
  EXPECT_EQ((a | Set({1})).members(), (std::vector<core::DomainId>{0, 1, 3}));
  EXPECT_TRUE(DomainSet().empty());
}

TEST(Domains, SchedulerAndTransmitterComeFirst) {
  auto ds = core::MakeDomains({"A", "B"}, {7, 9});
  ASSERT_EQ(ds.size(), 4u);
  EXPECT_EQ(ds[core::kScheduler].kind, core::DomainKind::kScheduler);
  EXPECT_EQ(ds[core::kTransmitter].kind, core::DomainKind::kTransmitter);
  EXPECT_EQ(ds[2].name, "A");
  EXPECT_EQ(ds[3].part_id, 9);
}

TEST(Explore, BreadthFirstIndicesAndPaths) {
  const auto sp = core::Explore(Toy());
  // 0 --set_x--> 1 --copy--> 3
  ASSERT_EQ(sp.graph.num_states(), 3u);
  EXPECT_EQ(sp.states, (std::vector<Toy::State>{0, 1, 3}));
  EXPECT_EQ(sp.graph.PathTo(2), (EventSeq{0, 1}));
  EXPECT_EQ(sp.graph.next(1, 1), 2u);
  EXPECT_EQ(sp.graph.dom(0, 1), core::kTransmitter);
  EXPECT_TRUE(sp.graph.deterministic());
  EXPECT_TRUE(sp.graph.vpeq(1, kP2, 0));   // y still 0
  EXPECT_FALSE(sp.graph.vpeq(2, kP2, 0));
}

TEST(Explore, StateBudgetIsEnforced) {
  EXPECT_THROW(core::Explore(Toy(), {2}), StateBudgetExceeded);
  EXPECT_NO_THROW(core::Explore(Toy(), {3}));
}

TEST(Explore, RepeatedExplorationIsIdentical) {
  const arinc::KernelL1 m(arinc::BaselineConfig());
  const auto a = core::Explore(m);
  const auto b = core::Explore(m);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.graph.num_states(), 8064u);
  for (core::DomainId d = 0; d < 4; ++d) EXPECT_EQ(a.graph.classes(d), b.graph.classes(d));
}

// Expected values below are worked out by hand from the recursive definitions.
TEST(Sources, HandComputedValues) {
  const auto sp = core::Explore(Toy());
  const auto& g = sp.graph;
  const EventSeq set_copy{0, 1}, set_only{0}, copy_set{1, 0};
  EXPECT_EQ(core::Sources(g, set_copy, 0, kP2), Set({core::kTransmitter, kP1, kP2}));
  EXPECT_EQ(core::Sources(g, set_only, 0, kP2), Set({kP2}));
  EXPECT_EQ(core::Sources(g, copy_set, 0, kP2), Set({core::kTransmitter, kP2}));
  EXPECT_EQ(core::Sources(g, EventSeq{}, 0, kP1), Set({kP1}));
  EXPECT_EQ(core::Sources(g, set_only, 0, core::kTransmitter),
            Set({kP1, core::kTransmitter}));
}

TEST(Ipurge, HandComputedValues) {
  const auto sp = core::Explore(Toy());
  const auto& g = sp.graph;
  EXPECT_EQ(core::Ipurge(g, EventSeq{0, 1}, kP2, {0}), (EventSeq{0, 1}));
  EXPECT_EQ(core::Ipurge(g, EventSeq{0}, kP2, {0}), EventSeq{});
  EXPECT_EQ(core::Ipurge(g, EventSeq{1, 0}, kP2, {0}), (EventSeq{1}));
  EXPECT_EQ(core::Ipurge(g, EventSeq{0, 0, 1}, kP1, {0}), (EventSeq{0, 0}));
}

TEST(Sources, MemoizedMatchesRecursionOnToy) {
  const Toy m(true);
  const auto sp = core::Explore(m);
  const auto& g = sp.graph;
  // Every sequence of length <= 4 from every state, every observer.
  std::vector<EventSeq> seqs{{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<EventSeq> next;
    for (const auto& s : seqs) {
      if (static_cast<int>(s.size()) != len - 1) continue;
      for (std::uint32_t e = 0; e < 3; ++e) {
        auto t = s;
        t.push_back(e);
        next.push_back(t);
      }
    }
    seqs.insert(seqs.end(), next.begin(), next.end());
  }
  for (core::StateIndex s = 0; s < g.num_states(); ++s) {
    for (core::DomainId d = 0; d < 4; ++d) {
      for (const auto& es : seqs) {
        std::vector<Toy::Event> mes(es.begin(), es.end());
        EXPECT_EQ(core::Sources(g, es, s, d),
                  core::naive::Sources(m, std::span<const Toy::Event>(mes), sp.states[s], d));
        EXPECT_EQ(core::Sources(g, es, s, d), core::naive::Sources(g, es, s, d));
        const auto slow = core::naive::Ipurge(m, std::span<const Toy::Event>(mes), d,
                                              {sp.states[s]});
        EXPECT_EQ(core::Ipurge(g, es, d, {s}), EventSeq(slow.begin(), slow.end()));
      }
    }
  }
}

TEST(Execution, SetSemanticsOnNondeterministicModel) {
  core::MicroOptions mo;
  mo.deterministic = false;
  // Find a seed with a branching transition.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = core::GenerateMicroModel(seed, mo);
    const auto sp = core::Explore(m);
    if (sp.graph.deterministic()) continue;
    for (core::StateIndex s = 0; s < sp.graph.num_states(); ++s) {
      for (std::uint32_t e = 0; e < sp.graph.num_events(); ++e) {
        const auto succ = sp.graph.successors(s, e);
        std::vector<core::StateIndex> want(succ.begin(), succ.end());
        const EventSeq one{e};
        auto ex = core::Execution(sp.graph, s, one);
        std::sort(want.begin(), want.end());
        std::sort(ex.begin(), ex.end());
        EXPECT_EQ(ex, want);
      }
    }
    return;
  }
  FAIL() << "no nondeterministic micro-model found";
}

TEST(ObsEquivalent, ComparesAllFinalStates) {
  const auto sp = core::Explore(Toy());
  const auto& g = sp.graph;
  EXPECT_TRUE(core::ObsEquivalent(g, 0, EventSeq{0}, kP2, 0, EventSeq{}));
  EXPECT_FALSE(core::ObsEquivalent(g, 0, EventSeq{0, 1}, kP2, 0, EventSeq{1}));
}

struct SchedulerListens : Toy {
  bool interferes(core::DomainId a, core::DomainId b) const {
    return Toy::interferes(a, b) || (a == kP1 && b == core::kScheduler);
  }
};

struct DirectFlow : Toy {
  bool interferes(core::DomainId a, core::DomainId b) const {
    return Toy::interferes(a, b) || (a == kP2 && b == kP1);  // not mediated
  }
};

TEST(Validate, ToySatisfiesAllAssumptions) {
  const Toy m;
  const auto rep = core::ValidateModel(m, core::Explore(m));
  ASSERT_EQ(rep.assumptions.size(), 6u);
  EXPECT_TRUE(rep.ok());
  for (const auto& a : rep.assumptions) EXPECT_TRUE(a.exhaustive) << a.name;
}

TEST(Validate, DetectsPolicyViolations) {
  const SchedulerListens a;
  const auto ra = core::ValidateModel(a, core::Explore(a));
  EXPECT_FALSE(ra.assumptions[2].holds);
  EXPECT_TRUE(ra.assumptions[0].holds);

  const DirectFlow b;
  const auto rb = core::ValidateModel(b, core::Explore(b));
  EXPECT_FALSE(rb.assumptions[0].holds);
  EXPECT_EQ(rb.assumptions[0].detail, "P2 ~> P1");
}

TEST(Micro, GenerationIsDeterministicAndBounded) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto a = core::GenerateMicroModel(seed);
    EXPECT_EQ(a.Describe(), core::GenerateMicroModel(seed).Describe());
    EXPECT_LE(a.domains().size(), 5u);
    EXPECT_LE(a.events().size(), 3u);
    EXPECT_LE(a.num_states(), 6);
    const auto sp = core::Explore(a);
    EXPECT_TRUE(core::ValidateModel(a, sp).ok()) << a.Describe();
  }
}

TEST(Quotient, RespectsViewsDomainsAndTransitions) {
  const arinc::KernelL1 m(arinc::BaselineConfig());
  const auto sp = core::Explore(m);
  const auto& g = sp.graph;
  const auto q = core::BuildQuotient(g);
  EXPECT_LT(q.num_blocks, g.num_states());
  EXPECT_LE(q.num_event_classes, g.num_events());
  std::vector<core::StateIndex> first(q.num_blocks, core::kNoState);
  for (core::StateIndex s = 0; s < g.num_states(); ++s) {
    const auto b = q.block_of[s];
    if (first[b] == core::kNoState) first[b] = s;
    EXPECT_EQ(q.rep[b], first[b]);
    for (core::DomainId d = 0; d < g.num_domains(); ++d) {
      EXPECT_EQ(g.view_class(d, s), g.view_class(d, q.rep[b]));
    }
    for (std::uint32_t e = 0; e < g.num_events(); ++e) {
      EXPECT_EQ(q.Next(b, q.event_class[e]), q.block_of[g.next(s, e)]);
      EXPECT_EQ(q.Dom(b, q.event_class[e]), g.dom(s, e));
    }
  }
}

TEST(Quotient, FewerLabelsGiveCoarserBlocks) {
  const arinc::KernelL1 m(arinc::BaselineConfig());
  const auto sp = core::Explore(m);
  const auto full = core::BuildQuotient(sp.graph);
  const auto sched = core::BuildQuotient(sp.graph, DomainSet::Of(core::kScheduler));
  EXPECT_LE(sched.num_blocks, full.num_blocks);
  EXPECT_TRUE(sched.cls[core::kTransmitter].empty());
}

}  // namespace
}  // namespace sklab
