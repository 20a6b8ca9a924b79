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

#ifndef SKLAB_CORE_SPACE_HH_
#define SKLAB_CORE_SPACE_HH_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sklab/core/errors.hh"
#include "sklab/core/graph.hh"
#include "sklab/core/model.hh"

namespace sklab {
namespace core {

struct ExploreOptions {
  std::size_t state_budget = 2'000'000;
};

/**
 * Reachable states of a model together with their compiled graph.
 *
 * Lookup goes through an open-addressing table of indices into `states`, so
 * each state is stored exactly once.
 */
template <class State>
class ReachableSpace {
 public:
  std::vector<State> states;
  TransitionGraph graph;

  std::optional<StateIndex> Find(const State& s) const {
    if (slots_.empty()) return std::nullopt;
    std::size_t h = std::hash<State>()(s) & mask_;
    while (slots_[h] != kNoState) {
      if (states[slots_[h]] == s) return slots_[h];
      h = (h + 1) & mask_;
    }
    return std::nullopt;
  }

  bool Contains(const State& s) const { return Find(s).has_value(); }

  // Returns (index, inserted).
  std::pair<StateIndex, bool> Insert(const State& s) {
    if ((states.size() + 1) * 2 > slots_.size()) Grow();
    std::size_t h = std::hash<State>()(s) & mask_;
    while (slots_[h] != kNoState) {
      if (states[slots_[h]] == s) return {slots_[h], false};
      h = (h + 1) & mask_;
    }
    const auto idx = static_cast<StateIndex>(states.size());
    states.push_back(s);
    slots_[h] = idx;
    return {idx, true};
  }

 private:
  void Grow() {
    std::size_t cap = slots_.empty() ? 1024 : slots_.size() * 2;
    slots_.assign(cap, kNoState);
    mask_ = cap - 1;
    for (StateIndex i = 0; i < states.size(); ++i) {
      std::size_t h = std::hash<State>()(states[i]) & mask_;
      while (slots_[h] != kNoState) h = (h + 1) & mask_;
      slots_[h] = i;
    }
  }

  std::vector<StateIndex> slots_;
  std::size_t mask_ = 0;
};

template <KernelModel M>
TransitionGraph EmptyGraphFor(const M& m) {
  const auto& doms = m.domains();
  std::vector<std::vector<bool>> intf(doms.size(),
                                      std::vector<bool>(doms.size()));
  for (std::size_t a = 0; a < doms.size(); ++a) {
    for (std::size_t b = 0; b < doms.size(); ++b) {
      intf[a][b] = m.interferes(static_cast<DomainId>(a),
                                static_cast<DomainId>(b));
    }
  }
  std::vector<std::string> names;
  names.reserve(m.events().size());
  for (const auto& e : m.events()) names.push_back(m.event_name(e));
  return TransitionGraph(doms, std::move(names), std::move(intf));
}

/// Per-domain class ids of the states of a space, numbered by first occurrence.
template <KernelModel M>
std::vector<StateIndex> ComputeClasses(const M& m,
                                       const std::vector<typename M::State>& states,
                                       DomainId d) {
  if constexpr (HasView<M>) {
    std::vector<std::string> keys;
    keys.reserve(states.size());
    for (const auto& s : states) keys.push_back(m.view(s, d));
    return NumberByFirstOccurrence(keys, nullptr);
  } else {
    // Representative scan; only used for small models without a view.
    std::vector<StateIndex> reps;
    std::vector<StateIndex> out(states.size());
    for (StateIndex i = 0; i < states.size(); ++i) {
      StateIndex c = kNoState;
      for (StateIndex k = 0; k < reps.size(); ++k) {
        if (m.vpeq(states[reps[k]], d, states[i])) {
          c = k;
          break;
        }
      }
      if (c == kNoState) {
        c = static_cast<StateIndex>(reps.size());
        reps.push_back(i);
      }
      out[i] = c;
    }
    return out;
  }
}

/**
 * Breadth-first closure from the initial state. Events are expanded in
 * declared order and successor sets in sorted order, so indices are
 * deterministic.
 */
template <KernelModel M>
ReachableSpace<typename M::State> Explore(const M& m,
                                          const ExploreOptions& opts = {}) {
  using State = typename M::State;
  ReachableSpace<State> space;
  space.graph = EmptyGraphFor(m);
  const auto& events = m.events();

  space.Insert(m.initial());
  space.graph.AddState(kNoState, 0);

  std::vector<State> out;
  std::vector<StateIndex> targets;
  for (StateIndex i = 0; i < space.states.size(); ++i) {
    const State s = space.states[i];
    for (std::uint32_t e = 0; e < events.size(); ++e) {
      out.clear();
      m.step(s, events[e], out);
      SortUnique(&out);
      if (out.empty()) {
        throw ModelInvalid("event " + m.event_name(events[e]) +
                           " has no successor in a reachable state");
      }
      targets.clear();
      for (const auto& x : out) {
        auto [idx, fresh] = space.Insert(x);
        if (fresh) {
          if (space.states.size() > opts.state_budget) {
            throw StateBudgetExceeded("reachable space exceeds " +
                                      std::to_string(opts.state_budget) +
                                      " states");
          }
          space.graph.AddState(i, e);
        }
        targets.push_back(idx);
      }
      space.graph.SetEdges(i, e, m.dom(s, events[e]), targets);
    }
  }
  for (std::size_t d = 0; d < m.domains().size(); ++d) {
    space.graph.SetClasses(static_cast<DomainId>(d),
                           ComputeClasses(m, space.states, static_cast<DomainId>(d)));
  }
  return space;
}

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_SPACE_HH_ */
