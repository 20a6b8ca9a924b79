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

#ifndef SKLAB_CORE_GRAPH_HH_
#define SKLAB_CORE_GRAPH_HH_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sklab/core/domain.hh"

namespace sklab {
namespace core {

using StateIndex = std::uint32_t;
constexpr StateIndex kNoState = 0xffffffffu;

/**
 * The reachable state graph of a model, compiled to dense indices.
 *
 * State 0 is the initial state; indices follow breadth-first discovery order.
 * Per-domain equivalence classes are numbered by first occurrence, so two
 * states are d-equivalent iff their class ids for d are equal.
 */
class TransitionGraph {
 public:
  TransitionGraph() = default;
  TransitionGraph(std::vector<Domain> domains,
                  std::vector<std::string> event_names,
                  std::vector<std::vector<bool>> interferes);

  StateIndex num_states() const {
    return static_cast<StateIndex>(parent_.size());
  }
  std::uint32_t num_events() const { return num_events_; }
  std::size_t num_domains() const { return domains_.size(); }
  const std::vector<Domain>& domains() const { return domains_; }
  const std::vector<std::string>& event_names() const { return event_names_; }

  bool deterministic() const { return multi_span_.empty(); }

  std::span<const StateIndex> successors(StateIndex s, std::uint32_t e) const {
    const std::size_t k = Slot(s, e);
    const StateIndex v = succ_[k];
    if ((v & kMultiFlag) == 0) return {&succ_[k], 1};
    const auto& sp = multi_span_[v & ~kMultiFlag];
    return {multi_targets_.data() + sp.first, sp.second};
  }

  // Only meaningful for deterministic graphs.
  StateIndex next(StateIndex s, std::uint32_t e) const {
    return succ_[Slot(s, e)];
  }
  DomainId dom(StateIndex s, std::uint32_t e) const { return dom_[Slot(s, e)]; }

  bool interferes(DomainId a, DomainId b) const {
    return influence_[a].contains(b);
  }
  DomainSet influence(DomainId a) const { return influence_[a]; }

  StateIndex view_class(DomainId d, StateIndex s) const { return cls_[d][s]; }
  const std::vector<StateIndex>& classes(DomainId d) const { return cls_[d]; }
  StateIndex num_classes(DomainId d) const { return ncls_[d]; }
  bool vpeq(StateIndex s, DomainId d, StateIndex t) const {
    return cls_[d][s] == cls_[d][t];
  }

  StateIndex parent(StateIndex s) const { return parent_[s]; }
  /// Event indices leading from the initial state to s along the BFS tree.
  std::vector<std::uint32_t> PathTo(StateIndex s) const;

  // Construction interface, used by the explorer.
  void Reserve(std::size_t states);
  StateIndex AddState(StateIndex parent, std::uint32_t parent_event);
  void SetEdges(StateIndex s, std::uint32_t e, DomainId dom,
                std::span<const StateIndex> targets);
  void SetClasses(DomainId d, std::vector<StateIndex> cls);

 private:
  static constexpr StateIndex kMultiFlag = 0x80000000u;

  std::size_t Slot(StateIndex s, std::uint32_t e) const {
    return static_cast<std::size_t>(s) * num_events_ + e;
  }

  std::vector<Domain> domains_;
  std::vector<std::string> event_names_;
  std::uint32_t num_events_ = 0;
  std::vector<DomainSet> influence_;

  std::vector<StateIndex> succ_;
  std::vector<DomainId> dom_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> multi_span_;
  std::vector<StateIndex> multi_targets_;

  std::vector<StateIndex> parent_;
  std::vector<std::uint32_t> parent_event_;

  std::vector<std::vector<StateIndex>> cls_;
  std::vector<StateIndex> ncls_;
};

/// Number the blocks of a labelling by first occurrence.
template <class Key, class Hash = std::hash<Key>>
std::vector<StateIndex> NumberByFirstOccurrence(const std::vector<Key>& keys,
                                                StateIndex* count) {
  std::unordered_map<Key, StateIndex, Hash> ids;
  ids.reserve(keys.size());
  std::vector<StateIndex> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [it, fresh] =
        ids.emplace(keys[i], static_cast<StateIndex>(ids.size()));
    out[i] = it->second;
  }
  if (count != nullptr) *count = static_cast<StateIndex>(ids.size());
  return out;
}

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_GRAPH_HH_ */
