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

#ifndef SKLAB_CORE_MICRO_HH_
#define SKLAB_CORE_MICRO_HH_

#include <cstdint>
#include <string>
#include <vector>

#include "sklab/core/domain.hh"

namespace sklab {
namespace core {

struct MicroOptions {
  int max_partitions = 3;
  int max_events = 3;
  int max_states = 6;
  bool deterministic = false;
  // Chance that a generated model has its transitions repaired so that no
  // event changes a view it may not influence.
  double respect_prob = 0.5;
};

/**
 * A small random security model over explicit tables. The policy is
 * reflexive and satisfies the transmitter, scheduler and scheduler-isolation
 * laws; equivalences are class tables; event domains depend only on the
 * scheduler class; every event is enabled everywhere.
 */
class MicroModel {
 public:
  using State = std::uint8_t;
  using Event = std::uint8_t;

  State initial() const { return 0; }
  const std::vector<Event>& events() const { return events_; }
  void step(State s, Event e, std::vector<State>& out) const {
    for (State t : succ_[s][e]) out.push_back(t);
  }
  DomainId dom(State s, Event e) const { return dom_[cls_[kScheduler][s]][e]; }
  const std::vector<Domain>& domains() const { return domains_; }
  bool interferes(DomainId a, DomainId b) const { return policy_[a][b]; }
  bool vpeq(State s, DomainId d, State t) const {
    return cls_[d][s] == cls_[d][t];
  }
  std::string view(State s, DomainId d) const {
    return std::to_string(cls_[d][s]);
  }
  std::string event_name(Event e) const { return "e" + std::to_string(e); }

  int num_states() const { return static_cast<int>(succ_.size()); }
  /// Compact human-readable dump, used in test failure messages.
  std::string Describe() const;

 private:
  friend MicroModel GenerateMicroModel(std::uint64_t, const MicroOptions&);

  std::vector<Domain> domains_;
  std::vector<Event> events_;
  std::vector<std::vector<bool>> policy_;
  std::vector<std::vector<std::uint8_t>> cls_;  // [domain][state]
  std::vector<std::vector<DomainId>> dom_;      // [scheduler class][event]
  std::vector<std::vector<std::vector<State>>> succ_;  // [state][event]
};

/// Deterministic in the seed.
MicroModel GenerateMicroModel(std::uint64_t seed, const MicroOptions& opts = {});

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_MICRO_HH_ */
