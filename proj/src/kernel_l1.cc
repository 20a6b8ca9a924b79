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

#include "sklab/arinc/kernel_l1.hh"

#include <algorithm>

namespace sklab {
namespace arinc {

const char* ModeName(Mode m) {
  switch (m) {
    case Mode::kIdle: return "IDLE";
    case Mode::kColdStart: return "COLD_START";
    case Mode::kWarmStart: return "WARM_START";
    case Mode::kNormal: return "NORMAL";
  }
  return "?";
}

const char* KindName(EventKind k) {
  switch (k) {
    case EventKind::kSchedule: return "Schedule";
    case EventKind::kTransferQueuingMessage: return "TransferQueuingMessage";
    case EventKind::kTransferSamplingMessage: return "TransferSamplingMessage";
    case EventKind::kCreateQueuingPort: return "CreateQueuingPort";
    case EventKind::kSendQueuingMessage: return "SendQueuingMessage";
    case EventKind::kReceiveQueuingMessage: return "ReceiveQueuingMessage";
    case EventKind::kGetQueuingPortId: return "GetQueuingPortId";
    case EventKind::kCreateSamplingPort: return "CreateSamplingPort";
    case EventKind::kWriteSamplingMessage: return "WriteSamplingMessage";
    case EventKind::kReadSamplingMessage: return "ReadSamplingMessage";
    case EventKind::kGetSamplingPortId: return "GetSamplingPortId";
    case EventKind::kSetPartitionMode: return "SetPartitionMode";
    case EventKind::kGetPartitionStatus: return "GetPartitionStatus";
    case EventKind::kCreateProcess: return "CreateProcess";
    case EventKind::kStartProcess: return "StartProcess";
    case EventKind::kStopProcess: return "StopProcess";
    case EventKind::kSuspendProcess: return "SuspendProcess";
    case EventKind::kResumeProcess: return "ResumeProcess";
    case EventKind::kSetPriority: return "SetPriority";
    case EventKind::kGetProcessStatus: return "GetProcessStatus";
    case EventKind::kScheduleProcess: return "ScheduleProcess";
  }
  return "?";
}

std::string EventName(const KernelConfig& conf, const Event& e) {
  std::string n = KindName(e.kind);
  auto num = [](int v) { return std::to_string(v); };
  auto proc = [&](int p, int k) {
    return conf.partitions[p].name + "." + num(k);
  };
  switch (e.kind) {
    case EventKind::kSchedule:
      return n + "(" +
             (e.a == core::kTransmitter ? std::string("T")
                                        : conf.partitions[e.a - 2].name) +
             ")";
    case EventKind::kTransferQueuingMessage:
    case EventKind::kTransferSamplingMessage:
      return n + "(" + conf.channels[e.a].name + ")";
    case EventKind::kCreateQueuingPort:
    case EventKind::kCreateSamplingPort:
    case EventKind::kGetQueuingPortId:
    case EventKind::kGetSamplingPortId:
      return n + "(" + conf.ports[e.a].name + ")";
    case EventKind::kSendQueuingMessage:
    case EventKind::kWriteSamplingMessage:
      return n + "(" + num(e.a) + "," + num(e.b) + ")";
    case EventKind::kReceiveQueuingMessage:
    case EventKind::kReadSamplingMessage:
      return n + "(" + num(e.a) + ")";
    case EventKind::kSetPartitionMode:
      return n + "(" + ModeName(static_cast<Mode>(e.a)) + ")";
    case EventKind::kCreateProcess:
      return n + "(" + num(e.a) + ")";
    case EventKind::kSetPriority:
      return n + "(" + proc(e.a, e.b) + "," + num(e.c) + ")";
    case EventKind::kStartProcess:
    case EventKind::kStopProcess:
    case EventKind::kSuspendProcess:
    case EventKind::kResumeProcess:
    case EventKind::kGetProcessStatus:
      return n + "(" + proc(e.a, e.b) + ")";
    case EventKind::kGetPartitionStatus:
    case EventKind::kScheduleProcess:
      return n;
  }
  return n;
}

std::vector<Event> L1Events(const KernelConfig& conf, const L1Options& opts) {
  std::vector<Event> ev;
  auto u8 = [](int v) { return static_cast<std::uint8_t>(v); };
  const int np = static_cast<int>(conf.partitions.size());
  for (int p = 0; p < np; ++p) ev.push_back({EventKind::kSchedule, u8(p + 2)});
  ev.push_back({EventKind::kSchedule, core::kTransmitter});
  for (std::size_t c = 0; c < conf.channels.size(); ++c) {
    ev.push_back({conf.channels[c].mode == ChannelMode::kQueuing
                      ? EventKind::kTransferQueuingMessage
                      : EventKind::kTransferSamplingMessage,
                  u8(c)});
  }
  const auto& ports = conf.ports;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    ev.push_back({ports[i].mode == ChannelMode::kQueuing
                      ? EventKind::kCreateQueuingPort
                      : EventKind::kCreateSamplingPort,
                  u8(i)});
  }
  // With static ids a service only needs the ids of ports of the matching
  // kind; dynamic ids can land on any port.
  auto ids_for = [&](ChannelMode mode, PortDir dir) {
    std::vector<int> ids;
    for (const auto& pc : ports) {
      if (opts.global_port_ids || (pc.mode == mode && pc.dir == dir)) {
        ids.push_back(opts.global_port_ids ? static_cast<int>(ids.size()) + 1
                                           : pc.id);
      }
    }
    return ids;
  };
  for (int id : ids_for(ChannelMode::kQueuing, PortDir::kSource)) {
    for (int m : conf.alphabet) {
      ev.push_back({EventKind::kSendQueuingMessage, u8(id), u8(m)});
    }
  }
  for (int id : ids_for(ChannelMode::kQueuing, PortDir::kDest)) {
    ev.push_back({EventKind::kReceiveQueuingMessage, u8(id)});
  }
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i].mode == ChannelMode::kQueuing) {
      ev.push_back({EventKind::kGetQueuingPortId, u8(i)});
    }
  }
  for (int id : ids_for(ChannelMode::kSampling, PortDir::kSource)) {
    for (int m : conf.alphabet) {
      ev.push_back({EventKind::kWriteSamplingMessage, u8(id), u8(m)});
    }
  }
  for (int id : ids_for(ChannelMode::kSampling, PortDir::kDest)) {
    ev.push_back({EventKind::kReadSamplingMessage, u8(id)});
  }
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i].mode == ChannelMode::kSampling) {
      ev.push_back({EventKind::kGetSamplingPortId, u8(i)});
    }
  }
  for (int m = 0; m < 4; ++m) ev.push_back({EventKind::kSetPartitionMode, u8(m)});
  ev.push_back({EventKind::kGetPartitionStatus});
  return ev;
}

KernelL1::KernelL1(KernelConfig conf, L1Options opts)
    : conf_(std::move(conf)), opts_(opts) {
  std::vector<std::string> names;
  std::vector<int> ids;
  for (const auto& p : conf_.partitions) {
    names.push_back(p.name);
    ids.push_back(p.id);
  }
  domains_ = core::MakeDomains(names, ids);
  events_ = L1Events(conf_, opts_);
  sources_channel_.assign(conf_.partitions.size(), false);
  sinks_channel_.assign(conf_.partitions.size(), false);
  for (std::size_t c = 0; c < conf_.channels.size(); ++c) {
    sources_channel_[conf_.ports[conf_.channel_source(c)].owner] = true;
    sinks_channel_[conf_.ports[conf_.channel_dest(c)].owner] = true;
  }
}

DomainId KernelL1::dom(const State& s, const Event& e) const {
  switch (e.kind) {
    case EventKind::kSchedule: return core::kScheduler;
    case EventKind::kTransferQueuingMessage:
    case EventKind::kTransferSamplingMessage: return core::kTransmitter;
    default: return s.cur;
  }
}

bool KernelL1::Interference1(DomainId a, DomainId b) const {
  if (a == b) return true;
  if (a == core::kScheduler) return true;
  if (b == core::kScheduler) return false;
  if (a >= 2 && b == core::kTransmitter) return sources_channel_[a - 2];
  if (a == core::kTransmitter && b >= 2) return sinks_channel_[b - 2];
  return false;
}

StateL1 KernelL1::SystemInit() const {
  State s;
  for (std::size_t p = 0; p < conf_.partitions.size(); ++p) {
    s.modes[p] = static_cast<std::uint8_t>(Mode::kColdStart);
  }
  s.cur = core::kTransmitter;
  s.next_port_id = opts_.global_port_ids ? 1 : 0;
  return s;
}

StateL1 KernelL1::Schedule(const State& s, DomainId target) const {
  State r = s;
  if (opts_.mode_aware_scheduler && target >= 2 &&
      s.mode(target - 2) == Mode::kIdle) {
    r.cur = core::kTransmitter;
  } else {
    r.cur = target;
  }
  return r;
}

std::vector<StateL1> KernelL1::ScheduleChoices(const State& s) const {
  std::vector<State> out;
  for (std::size_t p = 0; p < conf_.partitions.size(); ++p) {
    out.push_back(Schedule(s, partition_domain(static_cast<int>(p))));
  }
  out.push_back(Schedule(s, core::kTransmitter));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StateL1 KernelL1::SetPartMode(const State& s, Mode m) const {
  const int p = s.cur_partition();
  if (p < 0) return s;
  if (s.mode(p) == Mode::kColdStart && m == Mode::kWarmStart) return s;
  State r = s;
  r.modes[p] = static_cast<std::uint8_t>(m);
  return r;
}

StateL1 KernelL1::CreatePort(const State& s, int port, ChannelMode kind) const {
  const int p = s.cur_partition();
  if (p < 0 || port < 0 || port >= static_cast<int>(conf_.ports.size())) {
    return s;
  }
  const auto& pc = conf_.ports[port];
  if (pc.owner != p || pc.mode != kind || s.ports[port].created) return s;
  State r = s;
  auto& ps = r.ports[port];
  ps = PortState{};
  ps.created = 1;
  if (opts_.global_port_ids) {
    ps.id = r.next_port_id++;
    r.last_ret[p] = ps.id;
  } else {
    ps.id = pc.id;
  }
  return r;
}

StateL1 KernelL1::CreateQueuingPort(const State& s, int port) const {
  return CreatePort(s, port, ChannelMode::kQueuing);
}

StateL1 KernelL1::CreateSamplingPort(const State& s, int port) const {
  return CreatePort(s, port, ChannelMode::kSampling);
}

int KernelL1::FindPort(const State& s, int port_id) const {
  for (std::size_t i = 0; i < conf_.ports.size(); ++i) {
    if (s.ports[i].created && s.ports[i].id == port_id) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

int KernelL1::UsablePort(const State& s, int port_id, ChannelMode mode,
                         PortDir dir) const {
  const int p = s.cur_partition();
  if (p < 0) return -1;
  const int i = FindPort(s, port_id);
  if (i < 0) return -1;
  const auto& pc = conf_.ports[i];
  if (pc.mode != mode || pc.dir != dir) return -1;
  if (!opts_.no_port_ownership && pc.owner != p) return -1;
  return i;
}

std::pair<StateL1, bool> KernelL1::SendQueMsgLost(const State& s, int port_id,
                                                  std::uint8_t msg) const {
  const int i =
      UsablePort(s, port_id, ChannelMode::kQueuing, PortDir::kSource);
  if (i < 0) return {s, false};
  const int cap = conf_.ports[i].capacity;
  State r = s;
  auto& ps = r.ports[i];
  if (ps.len == cap) {
    if (!opts_.lossless_queuing) return {s, true};  // silently lost
    r.last_ret[s.cur_partition()] = kRetNotAvailable;
    return {r, false};
  }
  ps.buf[ps.len++] = msg;
  if (opts_.lossless_queuing) r.last_ret[s.cur_partition()] = kRetNoError;
  return {r, true};
}

namespace {

std::uint8_t PopFront(PortState* ps) {
  const std::uint8_t head = ps->buf[0];
  for (int k = 1; k < ps->len; ++k) ps->buf[k - 1] = ps->buf[k];
  ps->buf[--ps->len] = 0;
  return head;
}

}  // namespace

std::pair<StateL1, std::optional<std::uint8_t>> KernelL1::ReceiveQueMsg(
    const State& s, int port_id) const {
  const int i = UsablePort(s, port_id, ChannelMode::kQueuing, PortDir::kDest);
  if (i < 0 || s.ports[i].len == 0) return {s, std::nullopt};
  State r = s;
  const std::uint8_t m = PopFront(&r.ports[i]);
  return {r, m};
}

StateL1 KernelL1::TransfQueMsgLost(const State& s, int channel) const {
  if (conf_.channels[channel].mode != ChannelMode::kQueuing) return s;
  const int src = conf_.channel_source(channel);
  const int dst = conf_.channel_dest(channel);
  if (!s.ports[src].created || s.ports[src].len == 0) return s;
  const int cap = conf_.ports[dst].capacity;
  const bool dest_full = s.ports[dst].created && s.ports[dst].len == cap;
  if (opts_.lossless_queuing && dest_full) return s;  // blocked
  State r = s;
  const std::uint8_t m = PopFront(&r.ports[src]);
  auto& d = r.ports[dst];
  if (d.created && !dest_full) d.buf[d.len++] = m;
  return r;
}

StateL1 KernelL1::WriteSampMsg(const State& s, int port_id,
                               std::uint8_t msg) const {
  const int i =
      UsablePort(s, port_id, ChannelMode::kSampling, PortDir::kSource);
  if (i < 0) return s;
  State r = s;
  r.ports[i].len = 1;
  r.ports[i].buf[0] = msg;
  return r;
}

std::pair<StateL1, std::optional<std::uint8_t>> KernelL1::ReadSampMsg(
    const State& s, int port_id) const {
  const int i = UsablePort(s, port_id, ChannelMode::kSampling, PortDir::kDest);
  if (i < 0 || s.ports[i].len == 0) return {s, std::nullopt};
  return {s, s.ports[i].buf[0]};
}

StateL1 KernelL1::TransfSampMsg(const State& s, int channel) const {
  if (conf_.channels[channel].mode != ChannelMode::kSampling) return s;
  const int src = conf_.channel_source(channel);
  const int dst = conf_.channel_dest(channel);
  if (!s.ports[src].created || s.ports[src].len == 0 ||
      !s.ports[dst].created) {
    return s;
  }
  State r = s;
  r.ports[dst].len = 1;
  r.ports[dst].buf[0] = s.ports[src].buf[0];
  return r;
}

StateL1 KernelL1::Exec(const State& s, const Event& e) const {
  switch (e.kind) {
    case EventKind::kSchedule: return Schedule(s, e.a);
    case EventKind::kTransferQueuingMessage: return TransfQueMsgLost(s, e.a);
    case EventKind::kTransferSamplingMessage: return TransfSampMsg(s, e.a);
    case EventKind::kCreateQueuingPort: return CreateQueuingPort(s, e.a);
    case EventKind::kCreateSamplingPort: return CreateSamplingPort(s, e.a);
    case EventKind::kSendQueuingMessage: return SendQueMsgLost(s, e.a, e.b).first;
    case EventKind::kReceiveQueuingMessage: return ReceiveQueMsg(s, e.a).first;
    case EventKind::kWriteSamplingMessage: return WriteSampMsg(s, e.a, e.b);
    case EventKind::kReadSamplingMessage: return ReadSampMsg(s, e.a).first;
    case EventKind::kSetPartitionMode:
      return SetPartMode(s, static_cast<Mode>(e.a));
    case EventKind::kGetQueuingPortId:
    case EventKind::kGetSamplingPortId:
    case EventKind::kGetPartitionStatus:
      return s;
    default:
      return s;  // second-level events are not part of this universe
  }
}

std::string KernelL1::View(const State& s, DomainId d) const {
  std::string v;
  const auto& ports = conf_.ports;
  auto push_port = [&](const PortState& ps) {
    v.push_back(static_cast<char>(ps.created));
    v.push_back(static_cast<char>(ps.id));
    v.push_back(static_cast<char>(ps.len));
    v.append(reinterpret_cast<const char*>(ps.buf.data()), ps.buf.size());
  };
  if (d == core::kScheduler) {
    v.push_back(static_cast<char>(s.cur));
    return v;
  }
  if (d == core::kTransmitter) {
    for (std::size_t i = 0; i < ports.size(); ++i) {
      if (ports[i].dir == PortDir::kSource) {
        push_port(s.ports[i]);
      } else if (opts_.lossless_queuing &&
                 ports[i].mode == ChannelMode::kQueuing) {
        v.push_back(static_cast<char>(s.ports[i].created));
        v.push_back(static_cast<char>(s.ports[i].len));
      }
    }
    return v;
  }
  const int p = d - 2;
  v.push_back(static_cast<char>(s.modes[p]));
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i].owner != p) continue;
    const auto& ps = s.ports[i];
    v.push_back(static_cast<char>(ps.created));
    v.push_back(static_cast<char>(ps.id));
    if (ports[i].dir == PortDir::kDest) {
      v.push_back(static_cast<char>(ps.len));
    } else if (opts_.lossless_queuing &&
               ports[i].mode == ChannelMode::kQueuing) {
      v.push_back(static_cast<char>(ps.len == ports[i].capacity));
    }
  }
  if (opts_.observation_register()) {
    v.push_back(static_cast<char>(s.last_ret[p]));
  }
  return v;
}

}  // namespace arinc
}  // namespace sklab
