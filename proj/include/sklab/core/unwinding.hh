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

#ifndef SKLAB_CORE_UNWINDING_HH_
#define SKLAB_CORE_UNWINDING_HH_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sklab/core/graph.hh"
#include "sklab/core/model.hh"
#include "sklab/core/sources.hh"

namespace sklab {
namespace core {

enum class Condition { kSC, kLR, kSCDelta, kLRDelta };

const char* ConditionName(Condition c);

/// A replayable violation of one unwinding condition.
struct Witness {
  DomainId d = 0;
  std::uint32_t event = 0;
  EventSeq s_path;
  std::optional<EventSeq> t_path;  // SC only
  StateIndex s = 0;
  std::optional<StateIndex> t;
  // Offending successors (of s, and of t for SC).
  StateIndex s_next = 0;
  StateIndex t_next = 0;
};

struct UnwindingVerdict {
  std::uint32_t event = 0;
  Condition condition = Condition::kSC;
  bool holds = true;
  std::optional<Witness> witness;
};

struct UnwindingOptions {
  std::size_t pair_budget = 20'000'000;
  int workers = 1;
};

/**
 * Per-domain class tables used as the conclusion of a check. The graph's own
 * view classes are the default; the new-variable conditions pass the classes
 * of the restricted equivalence instead.
 */
using ClassTables = std::vector<std::vector<StateIndex>>;

/**
 * Exact unwinding checks over a compiled reachable graph.
 *
 * SC groups states by (class_d, class_S, class_w) where w = dom(s,e); under
 * the scheduler-determines-domain assumption one pass per (event, domain) is
 * enough. If that assumption fails the checker falls back to explicit pair
 * iteration, bounded by the pair budget.
 */
class UnwindingChecker {
 public:
  explicit UnwindingChecker(const TransitionGraph& g,
                            UnwindingOptions opts = {});

  /// Replace the conclusion relation (hypotheses keep the graph's classes).
  void SetConclusion(const ClassTables* concl) { concl_ = concl; }

  UnwindingVerdict CheckSC(std::uint32_t e) const;
  UnwindingVerdict CheckLR(std::uint32_t e) const;

  /// SC and LR for every event, SC verdicts first, both in event order.
  std::vector<UnwindingVerdict> CheckAll() const;

  bool dom_determined_by_scheduler() const { return a5_; }

 private:
  StateIndex Concl(DomainId d, StateIndex s) const {
    return concl_ ? (*concl_)[d][s] : g_.view_class(d, s);
  }
  UnwindingVerdict CheckSCGrouped(std::uint32_t e) const;
  UnwindingVerdict CheckSCPairs(std::uint32_t e) const;
  void Finish(UnwindingVerdict* v) const;

  const TransitionGraph& g_;
  UnwindingOptions opts_;
  const ClassTables* concl_ = nullptr;
  bool a5_ = true;
  // combined_[d][w][s]: dense id of (class_d, class_S, class_w).
  std::vector<std::vector<std::vector<StateIndex>>> combined_;
  std::vector<std::vector<StateIndex>> ncombined_;
};

bool AllHold(const std::vector<UnwindingVerdict>& vs);
bool AllHold(const std::vector<UnwindingVerdict>& vs, Condition c);

/// Replays a witness on the graph and confirms the violation.
bool ReplayWitness(const TransitionGraph& g, const UnwindingVerdict& v,
                   const ClassTables* concl = nullptr);

/**
 * Replays a witness on the model itself: runs the stored paths from the
 * initial state, applies the event and checks the asserted inequivalence with
 * the model's own vpeq (or `concl_eq` for the new-variable conditions).
 */
template <KernelModel M, class ConclEq>
bool ReplayOnModel(const M& m, const UnwindingVerdict& v, ConclEq concl_eq) {
  if (v.holds || !v.witness) return false;
  const auto& w = *v.witness;
  const auto& evs = m.events();
  auto run = [&](const EventSeq& path) {
    std::vector<typename M::Event> es;
    for (auto i : path) es.push_back(evs[i]);
    return Execution(m, m.initial(), std::span<const typename M::Event>(es));
  };
  const auto& e = evs[w.event];
  for (const auto& s : run(w.s_path)) {
    const DomainId dom = m.dom(s, e);
    if (v.condition == Condition::kLR || v.condition == Condition::kLRDelta) {
      if (m.interferes(dom, w.d)) continue;
      for (const auto& s1 : Successors(m, s, e)) {
        if (!concl_eq(s, w.d, s1)) return true;
      }
      continue;
    }
    for (const auto& t : run(*w.t_path)) {
      if (!m.interferes(dom, w.d) || !m.vpeq(s, w.d, t) ||
          !m.vpeq(s, kScheduler, t) || !m.vpeq(s, dom, t)) {
        continue;
      }
      for (const auto& s1 : Successors(m, s, e)) {
        for (const auto& t1 : Successors(m, t, e)) {
          if (!concl_eq(s1, w.d, t1)) return true;
        }
      }
    }
  }
  return false;
}

template <KernelModel M>
bool ReplayOnModel(const M& m, const UnwindingVerdict& v) {
  return ReplayOnModel(m, v, [&](const auto& a, DomainId d, const auto& b) {
    return m.vpeq(a, d, b);
  });
}

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_UNWINDING_HH_ */
