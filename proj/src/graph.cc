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

#include "sklab/core/graph.hh"

#include <algorithm>
#include <stdexcept>

namespace sklab {
namespace core {

TransitionGraph::TransitionGraph(std::vector<Domain> domains,
                                 std::vector<std::string> event_names,
                                 std::vector<std::vector<bool>> interferes)
    : domains_(std::move(domains)),
      event_names_(std::move(event_names)),
      num_events_(static_cast<std::uint32_t>(event_names_.size())) {
  influence_.resize(domains_.size());
  for (std::size_t a = 0; a < domains_.size(); ++a) {
    for (std::size_t b = 0; b < domains_.size(); ++b) {
      if (interferes[a][b]) influence_[a].insert(static_cast<DomainId>(b));
    }
  }
  cls_.resize(domains_.size());
  ncls_.resize(domains_.size(), 0);
}

std::vector<std::uint32_t> TransitionGraph::PathTo(StateIndex s) const {
  std::vector<std::uint32_t> path;
  while (parent_[s] != kNoState) {
    path.push_back(parent_event_[s]);
    s = parent_[s];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

void TransitionGraph::Reserve(std::size_t states) {
  parent_.reserve(states);
  parent_event_.reserve(states);
}

StateIndex TransitionGraph::AddState(StateIndex parent,
                                     std::uint32_t parent_event) {
  parent_.push_back(parent);
  parent_event_.push_back(parent_event);
  return static_cast<StateIndex>(parent_.size() - 1);
}

void TransitionGraph::SetEdges(StateIndex s, std::uint32_t e, DomainId dom,
                               std::span<const StateIndex> targets) {
  const std::size_t k = Slot(s, e);
  if (succ_.size() <= k) {
    succ_.resize(Slot(s + 1, 0), kNoState);
    dom_.resize(Slot(s + 1, 0), 0);
  }
  if (targets.empty()) {
    throw std::logic_error("event without successor: " + event_names_[e]);
  }
  dom_[k] = dom;
  if (targets.size() == 1) {
    succ_[k] = targets[0];
    return;
  }
  succ_[k] = kMultiFlag | static_cast<StateIndex>(multi_span_.size());
  multi_span_.emplace_back(static_cast<std::uint32_t>(multi_targets_.size()),
                           static_cast<std::uint32_t>(targets.size()));
  multi_targets_.insert(multi_targets_.end(), targets.begin(), targets.end());
}

void TransitionGraph::SetClasses(DomainId d, std::vector<StateIndex> cls) {
  StateIndex n = 0;
  for (StateIndex c : cls) n = std::max(n, c + 1);
  cls_[d] = std::move(cls);
  ncls_[d] = n;
}

}  // namespace core
}  // namespace sklab
