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

#ifndef SKLAB_CORE_QUOTIENT_HH_
#define SKLAB_CORE_QUOTIENT_HH_

#include <cstdint>
#include <vector>

#include "sklab/core/graph.hh"

namespace sklab {
namespace core {

/**
 * Coarsest partition of a deterministic graph that respects every domain's
 * view classes, every event's domain and every transition, with events that
 * behave identically on all blocks merged into one class.
 *
 * Execution, sources and ipurge are invariant under this quotient, so bounded
 * property checks can run on blocks and event classes and map witnesses back
 * through the representatives.
 */
struct Quotient {
  std::uint32_t num_blocks = 0;
  std::uint32_t num_event_classes = 0;
  std::vector<StateIndex> block_of;    // per concrete state
  std::vector<StateIndex> rep;         // least concrete state per block
  std::vector<std::uint32_t> event_class;  // per concrete event
  std::vector<std::uint32_t> event_rep;    // least concrete event per class
  std::vector<StateIndex> next;        // num_blocks x num_event_classes
  std::vector<DomainId> dom;
  DomainSet labels;                    // domains whose views were respected
  std::vector<std::vector<StateIndex>> cls;  // per domain in labels, per block
  std::vector<StateIndex> ncls;

  StateIndex Next(StateIndex b, std::uint32_t e) const {
    return next[static_cast<std::size_t>(b) * num_event_classes + e];
  }
  DomainId Dom(StateIndex b, std::uint32_t e) const {
    return dom[static_cast<std::size_t>(b) * num_event_classes + e];
  }
};

/// Requires a deterministic graph.
Quotient BuildQuotient(const TransitionGraph& g);
/// As above, but only the views of domains in `labels` are respected; cls
/// is left empty for the other domains.
Quotient BuildQuotient(const TransitionGraph& g, DomainSet labels);

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_QUOTIENT_HH_ */
