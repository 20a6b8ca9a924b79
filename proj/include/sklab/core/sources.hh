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

#ifndef SKLAB_CORE_SOURCES_HH_
#define SKLAB_CORE_SOURCES_HH_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "sklab/core/graph.hh"

namespace sklab {
namespace core {

using EventSeq = std::vector<std::uint32_t>;

/// Final states of running `es` from each state of `ss` (sorted, unique).
std::vector<StateIndex> Execution(const TransitionGraph& g,
                                  std::span<const StateIndex> ss,
                                  std::span<const std::uint32_t> es);
std::vector<StateIndex> Execution(const TransitionGraph& g, StateIndex s,
                                  std::span<const std::uint32_t> es);

bool ObsEquivalent(const TransitionGraph& g, StateIndex s,
                   std::span<const std::uint32_t> es1, DomainId d,
                   StateIndex t, std::span<const std::uint32_t> es2);

/**
 * sources/ipurge for one fixed event sequence and observer, memoized on
 * (suffix position, state). Evaluating ipurge from several start sets reuses
 * the same table.
 */
class PurgeEvaluator {
 public:
  PurgeEvaluator(const TransitionGraph& g, std::span<const std::uint32_t> es,
                 DomainId d)
      : g_(g), es_(es), d_(d) {}

  DomainSet Sources(std::size_t pos, StateIndex s);
  EventSeq Ipurge(std::vector<StateIndex> ss);

 private:
  const TransitionGraph& g_;
  std::span<const std::uint32_t> es_;
  DomainId d_;
  std::unordered_map<std::uint64_t, DomainSet> memo_;
};

DomainSet Sources(const TransitionGraph& g, std::span<const std::uint32_t> es,
                  StateIndex s, DomainId d);
EventSeq Ipurge(const TransitionGraph& g, std::span<const std::uint32_t> es,
                DomainId d, std::vector<StateIndex> ss);

// Direct transcriptions of the recursive definitions, without sharing.
namespace naive {

DomainSet Sources(const TransitionGraph& g, std::span<const std::uint32_t> es,
                  StateIndex s, DomainId d);
EventSeq Ipurge(const TransitionGraph& g, std::span<const std::uint32_t> es,
                DomainId d, std::vector<StateIndex> ss);

}  // namespace naive

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_SOURCES_HH_ */
