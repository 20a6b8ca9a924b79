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

#ifndef SKLAB_ARINC_KERNEL_L2_HH_
#define SKLAB_ARINC_KERNEL_L2_HH_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "sklab/arinc/kernel_l1.hh"
#include "sklab/core/refinement.hh"

namespace sklab {
namespace arinc {

enum class ProcState : std::uint8_t {
  kAbsent = 0,
  kDormant,
  kReady,
  kRunning,
  kWaiting,
};

const char* ProcStateName(ProcState st);

struct ProcSlot {
  std::uint8_t state = 0;  // ProcState
  std::uint8_t prio = 0;
  std::uint8_t suspended = 0;  // WAITING reached through Suspend

  auto operator<=>(const ProcSlot&) const = default;
  ProcState st() const { return static_cast<ProcState>(state); }
};

/**
 * Second-level state: the first-level record extended with per-partition
 * process tables. cur_proc[p] is 0 when no process runs, else slot + 1.
 */
struct StateL2 {
  StateL1 base;
  std::array<std::array<ProcSlot, kMaxProcesses>, kMaxPartitions> procs{};
  std::array<std::uint8_t, kMaxPartitions> cur_proc{};

  auto operator<=>(const StateL2&) const = default;
};

static_assert(std::has_unique_object_representations_v<StateL2>);

struct L2Options {
  L1Options l1;
  bool global_process_ids = false;    // slots allocated from a shared space
  bool no_process_ownership = false;  // process services skip the owner check
  bool start_touches_port = false;    // faulty refinement used by tests

  bool any() const {
    return global_process_ids || no_process_ownership || start_touches_port;
  }
};

/**
 * The second-level specification. Its event universe is the first-level
 * universe (same order, same indices) followed by the process events.
 */
class KernelL2 {
 public:
  using State = StateL2;
  using Event = arinc::Event;

  explicit KernelL2(KernelConfig conf, L2Options opts = {});

  State initial() const;
  const std::vector<Event>& events() const { return events_; }
  void step(const State& s, const Event& e, std::vector<State>& out) const {
    out.push_back(Exec(s, e));
  }
  DomainId dom(const State& s, const Event& e) const {
    return l1_.dom(s.base, e);
  }
  const std::vector<core::Domain>& domains() const { return l1_.domains(); }
  bool interferes(DomainId a, DomainId b) const {
    return l1_.interferes(a, b);
  }
  bool vpeq(const State& s, DomainId d, const State& t) const {
    return View(s, d) == View(t, d);
  }
  std::string view(const State& s, DomainId d) const { return View(s, d); }
  std::string event_name(const Event& e) const { return EventName(conf(), e); }

  const KernelConfig& conf() const { return l1_.config(); }
  const KernelL1& abstract() const { return l1_; }
  const L2Options& options() const { return opts_; }
  std::size_t num_refined_events() const { return num_refined_; }

  // Process management.
  State CreateProcess(const State& s, int prio) const;
  State StartProcess(const State& s, int part, int slot) const;
  State StopProcess(const State& s, int part, int slot) const;
  State SuspendProcess(const State& s, int part, int slot) const;
  State ResumeProcess(const State& s, int part, int slot) const;
  State SetPriority(const State& s, int part, int slot, int prio) const;
  State ScheduleProcess(const State& s) const;
  State SetPartitionModeR(const State& s, Mode m) const;

  State Exec(const State& s, const Event& e) const;

  /// Observation of d over the whole state: the abstract view plus DeltaView.
  std::string View(const State& s, DomainId d) const;
  /// Observation of d over the new variables only (empty for S and T).
  std::string DeltaView(const State& s, DomainId d) const;

  /// Number of addressable process slots in partition p.
  int slots(int p) const;

 private:
  // Slot addressed by (part, slot) if the caller may use it, else nullptr.
  const ProcSlot* Target(const State& s, int part, int slot) const;

  KernelL1 l1_;
  L2Options opts_;
  std::vector<Event> events_;
  std::size_t num_refined_ = 0;
};

/**
 * Ψ projects onto the first-level record, Θ is the identity on refined events
 * and τ on process events, and the new-variable equivalence compares a
 * partition's process table and current process.
 */
core::RefinementMap<StateL2, StateL1> BuildRefinementMap(const KernelL2& m);

}  // namespace arinc
}  // namespace sklab

template <>
struct std::hash<sklab::arinc::StateL2> {
  std::size_t operator()(const sklab::arinc::StateL2& s) const noexcept {
    return std::hash<std::string_view>()(std::string_view(
        reinterpret_cast<const char*>(&s), sizeof(s)));
  }
};

#endif /* SKLAB_ARINC_KERNEL_L2_HH_ */
