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

#ifndef SKLAB_ARINC_EVENT_HH_
#define SKLAB_ARINC_EVENT_HH_

#include <compare>
#include <cstdint>
#include <string>

#include "sklab/arinc/config.hh"

namespace sklab {
namespace arinc {

enum class Mode : std::uint8_t { kIdle = 0, kColdStart, kWarmStart, kNormal };

const char* ModeName(Mode m);

enum class EventKind : std::uint8_t {
  // System events.
  kSchedule,
  kTransferQueuingMessage,
  kTransferSamplingMessage,
  // Hypercalls: inter-partition communication.
  kCreateQueuingPort,
  kSendQueuingMessage,
  kReceiveQueuingMessage,
  kGetQueuingPortId,
  kCreateSamplingPort,
  kWriteSamplingMessage,
  kReadSamplingMessage,
  kGetSamplingPortId,
  // Hypercalls: partition management.
  kSetPartitionMode,
  kGetPartitionStatus,
  // Second level only.
  kCreateProcess,
  kStartProcess,
  kStopProcess,
  kSuspendProcess,
  kResumeProcess,
  kSetPriority,
  kGetProcessStatus,
  kScheduleProcess,
};

/**
 * An event with up to three small parameters. Meaning by kind:
 *   Schedule(a = target domain), Transfer*(a = channel),
 *   Create*Port / Get*PortId (a = port index), Send/Write (a = port id,
 *   b = message), Receive/Read (a = port id), SetPartitionMode (a = mode),
 *   CreateProcess (a = priority), process services (a = partition index,
 *   b = slot, c = priority for SetPriority).
 */
struct Event {
  EventKind kind = EventKind::kSchedule;
  std::uint8_t a = 0;
  std::uint8_t b = 0;
  std::uint8_t c = 0;

  auto operator<=>(const Event&) const = default;
};

inline bool IsHypercall(EventKind k) {
  return k != EventKind::kSchedule && k != EventKind::kTransferQueuingMessage &&
         k != EventKind::kTransferSamplingMessage &&
         k != EventKind::kScheduleProcess;
}

inline bool IsProcessEvent(EventKind k) {
  return k >= EventKind::kCreateProcess;
}

const char* KindName(EventKind k);
std::string EventName(const KernelConfig& conf, const Event& e);

}  // namespace arinc
}  // namespace sklab

#endif /* SKLAB_ARINC_EVENT_HH_ */
