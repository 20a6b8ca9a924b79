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

#ifndef SKLAB_ARINC_KERNEL_L1_HH_
#define SKLAB_ARINC_KERNEL_L1_HH_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "sklab/arinc/config.hh"
#include "sklab/arinc/event.hh"
#include "sklab/core/domain.hh"

namespace sklab {
namespace arinc {

using core::DomainId;

struct PortState {
  std::uint8_t created = 0;
  std::uint8_t id = 0;
  std::uint8_t len = 0;  // queued messages, or 1 if a sampling value exists
  std::array<std::uint8_t, kMaxCapacity> buf{};

  auto operator<=>(const PortState&) const = default;
};

// Status codes written to the observation register by the variants.
enum : std::uint8_t { kRetNone = 0, kRetNoError = 1, kRetNotAvailable = 2 };

/**
 * Top-level kernel state. Ports are indexed by configured port; part_ports and
 * comm of the abstract record are the created entries of `ports`. The
 * register and the id counter are only written by insecure variants.
 */
struct StateL1 {
  std::array<std::uint8_t, kMaxPartitions> modes{};
  std::uint8_t cur = core::kTransmitter;
  std::uint8_t next_port_id = 0;
  std::array<std::uint8_t, kMaxPartitions> last_ret{};
  std::array<PortState, kMaxPorts> ports{};

  auto operator<=>(const StateL1&) const = default;

  Mode mode(int p) const { return static_cast<Mode>(modes[p]); }
  // Partition index of cur, or -1 when the transmitter runs.
  int cur_partition() const { return cur >= 2 ? cur - 2 : -1; }
};

static_assert(std::has_unique_object_representations_v<StateL1>);

/// Mutations of the secure specification realising the covert channels.
struct L1Options {
  bool lossless_queuing = false;   // sends report fullness; transfer blocks
  bool no_port_ownership = false;  // IPC services skip the owner check
  bool global_port_ids = false;    // ids drawn from a shared counter
  bool mode_aware_scheduler = false;  // IDLE partitions are never selected

  bool observation_register() const {
    return lossless_queuing || global_port_ids;
  }
};

/**
 * The top-level functional specification of an ARINC 653 separation kernel as
 * a security model instance.
 */
class KernelL1 {
 public:
  using State = StateL1;
  using Event = arinc::Event;

  explicit KernelL1(KernelConfig conf, L1Options opts = {});

  // Model interface.
  State initial() const { return SystemInit(); }
  const std::vector<Event>& events() const { return events_; }
  void step(const State& s, const Event& e, std::vector<State>& out) const {
    out.push_back(Exec(s, e));
  }
  DomainId dom(const State& s, const Event& e) const;
  const std::vector<core::Domain>& domains() const { return domains_; }
  bool interferes(DomainId a, DomainId b) const { return Interference1(a, b); }
  bool vpeq(const State& s, DomainId d, const State& t) const {
    return View(s, d) == View(t, d);
  }
  std::string view(const State& s, DomainId d) const { return View(s, d); }
  std::string event_name(const Event& e) const { return EventName(conf_, e); }

  const KernelConfig& config() const { return conf_; }
  const L1Options& options() const { return opts_; }

  // Specification functions.
  State SystemInit() const;
  State Schedule(const State& s, DomainId target) const;
  std::vector<State> ScheduleChoices(const State& s) const;
  State SetPartMode(const State& s, Mode m) const;
  State CreateQueuingPort(const State& s, int port) const;
  State CreateSamplingPort(const State& s, int port) const;
  std::pair<State, bool> SendQueMsgLost(const State& s, int port_id,
                                        std::uint8_t msg) const;
  std::pair<State, std::optional<std::uint8_t>> ReceiveQueMsg(
      const State& s, int port_id) const;
  State TransfQueMsgLost(const State& s, int channel) const;
  State WriteSampMsg(const State& s, int port_id, std::uint8_t msg) const;
  std::pair<State, std::optional<std::uint8_t>> ReadSampMsg(
      const State& s, int port_id) const;
  State TransfSampMsg(const State& s, int channel) const;
  bool Interference1(DomainId a, DomainId b) const;
  bool VpeqL1(const State& s, DomainId d, const State& t) const {
    return vpeq(s, d, t);
  }
  std::string View(const State& s, DomainId d) const;

  /// Deterministic effect of one event (all L1 events are deterministic).
  State Exec(const State& s, const Event& e) const;

  /// Index of the created port carrying `port_id`, or -1.
  int FindPort(const State& s, int port_id) const;

  DomainId partition_domain(int p) const { return static_cast<DomainId>(p + 2); }

 private:
  State CreatePort(const State& s, int port, ChannelMode kind) const;
  // Port index usable by the current partition for the given service, or -1.
  int UsablePort(const State& s, int port_id, ChannelMode mode,
                 PortDir dir) const;

  KernelConfig conf_;
  L1Options opts_;
  std::vector<core::Domain> domains_;
  std::vector<Event> events_;
  std::vector<bool> sources_channel_;  // per partition
  std::vector<bool> sinks_channel_;
};

/// Event universe of the first level for a configuration.
std::vector<Event> L1Events(const KernelConfig& conf, const L1Options& opts);

}  // namespace arinc
}  // namespace sklab

template <>
struct std::hash<sklab::arinc::StateL1> {
  std::size_t operator()(const sklab::arinc::StateL1& s) const noexcept {
    return std::hash<std::string_view>()(std::string_view(
        reinterpret_cast<const char*>(&s), sizeof(s)));
  }
};

#endif /* SKLAB_ARINC_KERNEL_L1_HH_ */
