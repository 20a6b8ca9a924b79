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

#include "sklab/arinc/kernel_l2.hh"

#include <algorithm>

namespace sklab {
namespace arinc {

const char* ProcStateName(ProcState st) {
  switch (st) {
    case ProcState::kAbsent: return "ABSENT";
    case ProcState::kDormant: return "DORMANT";
    case ProcState::kReady: return "READY";
    case ProcState::kRunning: return "RUNNING";
    case ProcState::kWaiting: return "WAITING";
  }
  return "?";
}

namespace {

std::uint8_t U8(ProcState st) { return static_cast<std::uint8_t>(st); }

}  // namespace

KernelL2::KernelL2(KernelConfig conf, L2Options opts)
    : l1_(std::move(conf), opts.l1), opts_(opts) {
  events_ = l1_.events();
  num_refined_ = events_.size();
  const auto& c = l1_.config();
  for (int prio = c.priority_lo; prio <= c.priority_hi; ++prio) {
    events_.push_back({EventKind::kCreateProcess, static_cast<std::uint8_t>(prio)});
  }
  const EventKind per_proc[] = {EventKind::kStartProcess, EventKind::kStopProcess,
                                EventKind::kSuspendProcess,
                                EventKind::kResumeProcess};
  for (EventKind k : per_proc) {
    for (std::size_t p = 0; p < c.partitions.size(); ++p) {
      for (int k2 = 0; k2 < slots(static_cast<int>(p)); ++k2) {
        events_.push_back({k, static_cast<std::uint8_t>(p),
                           static_cast<std::uint8_t>(k2)});
      }
    }
  }
  for (std::size_t p = 0; p < c.partitions.size(); ++p) {
    for (int k2 = 0; k2 < slots(static_cast<int>(p)); ++k2) {
      for (int prio = c.priority_lo; prio <= c.priority_hi; ++prio) {
        events_.push_back({EventKind::kSetPriority, static_cast<std::uint8_t>(p),
                           static_cast<std::uint8_t>(k2),
                           static_cast<std::uint8_t>(prio)});
      }
    }
  }
  for (std::size_t p = 0; p < c.partitions.size(); ++p) {
    for (int k2 = 0; k2 < slots(static_cast<int>(p)); ++k2) {
      events_.push_back({EventKind::kGetProcessStatus,
                         static_cast<std::uint8_t>(p),
                         static_cast<std::uint8_t>(k2)});
    }
  }
  events_.push_back({EventKind::kScheduleProcess});
}

int KernelL2::slots(int p) const {
  if (!opts_.global_process_ids) return conf().partitions[p].max_processes;
  // A shared id space, sized for every configured process, lets any
  // partition's process land on any slot.
  int total = 0;
  for (const auto& pc : conf().partitions) total += pc.max_processes;
  return std::min(total, kMaxProcesses);
}

StateL2 KernelL2::initial() const {
  State s;
  s.base = l1_.SystemInit();
  return s;
}

const ProcSlot* KernelL2::Target(const State& s, int part, int slot) const {
  const int p = s.base.cur_partition();
  if (p < 0) return nullptr;
  if (part >= static_cast<int>(conf().partitions.size()) || slot >= slots(part)) {
    return nullptr;
  }
  if (!opts_.no_process_ownership && part != p) return nullptr;
  const ProcSlot& ps = s.procs[part][slot];
  return ps.st() == ProcState::kAbsent ? nullptr : &ps;
}

StateL2 KernelL2::CreateProcess(const State& s, int prio) const {
  const int p = s.base.cur_partition();
  if (p < 0) return s;
  const Mode m = s.base.mode(p);
  if (m != Mode::kColdStart && m != Mode::kWarmStart) return s;
  int count = 0;
  for (int k = 0; k < kMaxProcesses; ++k) {
    count += s.procs[p][k].st() != ProcState::kAbsent;
  }
  if (count >= conf().partitions[p].max_processes) return s;
  for (int k = 0; k < slots(p); ++k) {
    bool used = s.procs[p][k].st() != ProcState::kAbsent;
    if (opts_.global_process_ids) {
      for (std::size_t q = 0; q < conf().partitions.size(); ++q) {
        used = used || s.procs[q][k].st() != ProcState::kAbsent;
      }
    }
    if (!used) {
      State r = s;
      r.procs[p][k] = {U8(ProcState::kDormant), static_cast<std::uint8_t>(prio), 0};
      return r;
    }
  }
  return s;
}

StateL2 KernelL2::StartProcess(const State& s, int part, int slot) const {
  const ProcSlot* t = Target(s, part, slot);
  if (t == nullptr || t->st() != ProcState::kDormant) return s;
  State r = s;
  r.procs[part][slot].state = U8(s.base.mode(part) == Mode::kNormal
                                      ? ProcState::kReady
                                      : ProcState::kWaiting);
  if (opts_.start_touches_port) {
    for (std::size_t i = 0; i < conf().ports.size(); ++i) {
      auto& port = r.base.ports[i];
      if (conf().ports[i].owner == part && port.len > 0) {
        port.len = 0;
        port.buf = {};
        break;
      }
    }
  }
  return r;
}

StateL2 KernelL2::StopProcess(const State& s, int part, int slot) const {
  const ProcSlot* t = Target(s, part, slot);
  if (t == nullptr || t->st() == ProcState::kDormant) return s;
  State r = s;
  r.procs[part][slot].state = U8(ProcState::kDormant);
  r.procs[part][slot].suspended = 0;
  if (r.cur_proc[part] == slot + 1) r.cur_proc[part] = 0;
  return r;
}

StateL2 KernelL2::SuspendProcess(const State& s, int part, int slot) const {
  const ProcSlot* t = Target(s, part, slot);
  if (t == nullptr ||
      (t->st() != ProcState::kReady && t->st() != ProcState::kRunning)) {
    return s;
  }
  State r = s;
  r.procs[part][slot].state = U8(ProcState::kWaiting);
  r.procs[part][slot].suspended = 1;
  if (r.cur_proc[part] == slot + 1) r.cur_proc[part] = 0;
  return r;
}

StateL2 KernelL2::ResumeProcess(const State& s, int part, int slot) const {
  const ProcSlot* t = Target(s, part, slot);
  if (t == nullptr || t->st() != ProcState::kWaiting || !t->suspended) return s;
  State r = s;
  r.procs[part][slot].state = U8(s.base.mode(part) == Mode::kNormal
                                      ? ProcState::kReady
                                      : ProcState::kWaiting);
  r.procs[part][slot].suspended = 0;
  return r;
}

StateL2 KernelL2::SetPriority(const State& s, int part, int slot,
                              int prio) const {
  if (Target(s, part, slot) == nullptr) return s;
  State r = s;
  r.procs[part][slot].prio = static_cast<std::uint8_t>(prio);
  return r;
}

StateL2 KernelL2::ScheduleProcess(const State& s) const {
  const int p = s.base.cur_partition();
  if (p < 0 || s.base.mode(p) != Mode::kNormal) return s;
  State r = s;
  auto& tab = r.procs[p];
  for (auto& ps : tab) {
    if (ps.st() == ProcState::kRunning) ps.state = U8(ProcState::kReady);
  }
  // Highest priority wins; ties go to the least slot.
  int best = -1;
  for (int k = 0; k < kMaxProcesses; ++k) {
    if (tab[k].st() == ProcState::kReady &&
        (best < 0 || tab[k].prio > tab[best].prio)) {
      best = k;
    }
  }
  if (best >= 0) tab[best].state = U8(ProcState::kRunning);
  r.cur_proc[p] = static_cast<std::uint8_t>(best + 1);
  return r;
}

StateL2 KernelL2::SetPartitionModeR(const State& s, Mode m) const {
  const int p = s.base.cur_partition();
  if (p < 0) return s;
  if (s.base.mode(p) == Mode::kColdStart && m == Mode::kWarmStart) return s;
  State r = s;
  if (m == Mode::kNormal) {
    for (auto& ps : r.procs[p]) {
      if (ps.st() == ProcState::kWaiting && !ps.suspended) {
        ps.state = U8(ProcState::kReady);
      }
    }
  } else if (s.base.mode(p) == Mode::kNormal) {
    r.procs[p] = {};
    r.cur_proc[p] = 0;
  }
  r.base.modes[p] = static_cast<std::uint8_t>(m);
  return r;
}

StateL2 KernelL2::Exec(const State& s, const Event& e) const {
  switch (e.kind) {
    case EventKind::kSetPartitionMode:
      return SetPartitionModeR(s, static_cast<Mode>(e.a));
    case EventKind::kCreateProcess: return CreateProcess(s, e.a);
    case EventKind::kStartProcess: return StartProcess(s, e.a, e.b);
    case EventKind::kStopProcess: return StopProcess(s, e.a, e.b);
    case EventKind::kSuspendProcess: return SuspendProcess(s, e.a, e.b);
    case EventKind::kResumeProcess: return ResumeProcess(s, e.a, e.b);
    case EventKind::kSetPriority: return SetPriority(s, e.a, e.b, e.c);
    case EventKind::kGetProcessStatus: return s;
    case EventKind::kScheduleProcess: return ScheduleProcess(s);
    default: {
      State r = s;
      r.base = l1_.Exec(s.base, e);
      return r;
    }
  }
}

std::string KernelL2::DeltaView(const State& s, DomainId d) const {
  std::string v;
  if (d < 2) return v;
  const int p = d - 2;
  for (const auto& ps : s.procs[p]) {
    v.push_back(static_cast<char>(ps.state));
    v.push_back(static_cast<char>(ps.prio));
    v.push_back(static_cast<char>(ps.suspended));
  }
  v.push_back(static_cast<char>(s.cur_proc[p]));
  return v;
}

std::string KernelL2::View(const State& s, DomainId d) const {
  std::string v = l1_.View(s.base, d);
  v.push_back('|');
  v += DeltaView(s, d);
  return v;
}

core::RefinementMap<StateL2, StateL1> BuildRefinementMap(const KernelL2& m) {
  core::RefinementMap<StateL2, StateL1> rm;
  rm.psi = [](const StateL2& s) { return s.base; };
  for (std::size_t e = 0; e < m.events().size(); ++e) {
    if (e < m.num_refined_events()) {
      rm.theta.push_back(static_cast<std::uint32_t>(e));
    } else {
      rm.theta.push_back(std::nullopt);
    }
  }
  rm.delta_view = [&m](const StateL2& s, DomainId d) {
    return m.DeltaView(s, d);
  };
  return rm;
}

}  // namespace arinc
}  // namespace sklab
