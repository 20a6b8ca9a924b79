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

#include "sklab/covert/covert.hh"

#include <algorithm>

#include "sklab/arinc/kernel_l1.hh"
#include "sklab/core/errors.hh"
#include "sklab/core/refinement.hh"
#include "sklab/core/space.hh"

namespace sklab {
namespace covert {

using arinc::Event;
using arinc::EventKind;

const char* VariantName(VariantId v) {
  switch (v) {
    case VariantId::kCC1: return "CC1_LosslessQueuing";
    case VariantId::kCC2: return "CC2_NoPortOwnership";
    case VariantId::kCC3: return "CC3_GlobalPortIdCounter";
    case VariantId::kCC4: return "CC4_ModeAwareScheduler";
    case VariantId::kCC5: return "CC5_GlobalProcIdCounter";
    case VariantId::kCC6: return "CC6_NoProcOwnership";
  }
  return "?";
}

int VariantNumber(VariantId v) { return static_cast<int>(v); }

std::optional<VariantId> ParseVariant(std::string_view s) {
  for (VariantId v : kAllVariants) {
    const std::string num = std::to_string(VariantNumber(v));
    if (s == num || s == "CC" + num || s == "cc" + num || s == VariantName(v)) {
      return v;
    }
  }
  return std::nullopt;
}

int VariantLevel(VariantId v) {
  return v == VariantId::kCC5 || v == VariantId::kCC6 ? 2 : 1;
}

arinc::L2Options VariantOptions(VariantId v) {
  arinc::L2Options o;
  switch (v) {
    case VariantId::kCC1: o.l1.lossless_queuing = true; break;
    case VariantId::kCC2: o.l1.no_port_ownership = true; break;
    case VariantId::kCC3: o.l1.global_port_ids = true; break;
    case VariantId::kCC4: o.l1.mode_aware_scheduler = true; break;
    case VariantId::kCC5: o.global_process_ids = true; break;
    case VariantId::kCC6: o.no_process_ownership = true; break;
  }
  return o;
}

arinc::KernelConfig VariantConfig(VariantId v, const arinc::KernelConfig& conf) {
  if (v != VariantId::kCC5) return conf;
  arinc::KernelConfig c = conf;
  for (auto& p : c.partitions) p.max_processes = std::min(p.max_processes, 1);
  return arinc::Finalize(c);
}

const char* ExistenceName(Existence e) {
  switch (e) {
    case Existence::kExists: return "exists";
    case Existence::kPotential: return "potential";
    case Existence::kVariantOnly: return "variant-only";
  }
  return "?";
}

Existence StandardExistence(VariantId v) {
  switch (v) {
    case VariantId::kCC1:
    case VariantId::kCC2:
    case VariantId::kCC6: return Existence::kExists;
    case VariantId::kCC3:
    case VariantId::kCC5: return Existence::kPotential;
    case VariantId::kCC4: return Existence::kVariantOnly;
  }
  return Existence::kVariantOnly;
}

namespace {

int FirstQueuingChannel(const arinc::KernelConfig& conf) {
  for (std::size_t c = 0; c < conf.channels.size(); ++c) {
    if (conf.channels[c].mode == arinc::ChannelMode::kQueuing) {
      return static_cast<int>(c);
    }
  }
  return -1;
}

}  // namespace

std::vector<ChannelClaim> ExpectedClaims(VariantId v,
                                         const arinc::KernelConfig& conf) {
  using core::Condition;
  switch (v) {
    case VariantId::kCC1: {
      std::optional<core::DomainId> sender;
      const int c = FirstQueuingChannel(conf);
      if (c >= 0) {
        sender = static_cast<core::DomainId>(
            conf.ports[conf.channel_source(c)].owner + 2);
      }
      return {{Condition::kLR, {EventKind::kTransferQueuingMessage}, sender,
               "transfer changes the sender's view"},
              {Condition::kLR, {EventKind::kReceiveQueuingMessage},
               core::kTransmitter, "receive changes the transmitter's view"}};
    }
    case VariantId::kCC2:
      return {{Condition::kLR,
               {EventKind::kSendQueuingMessage, EventKind::kReceiveQueuingMessage,
                EventKind::kGetQueuingPortId, EventKind::kWriteSamplingMessage,
                EventKind::kReadSamplingMessage, EventKind::kGetSamplingPortId},
               std::nullopt,
               "a port hypercall on a foreign port"}};
    case VariantId::kCC3:
      return {{Condition::kSC,
               {EventKind::kCreateQueuingPort, EventKind::kCreateSamplingPort},
               std::nullopt,
               "port creation reveals the shared counter"}};
    case VariantId::kCC4:
      return {{Condition::kSC, {EventKind::kSchedule}, core::kScheduler,
               "scheduling depends on partition modes"}};
    case VariantId::kCC5:
      return {{Condition::kSCDelta, {EventKind::kCreateProcess}, std::nullopt,
               "process creation reveals the shared id space"}};
    case VariantId::kCC6:
      return {{Condition::kLR,
               {EventKind::kStartProcess, EventKind::kStopProcess,
                EventKind::kSuspendProcess, EventKind::kResumeProcess,
                EventKind::kSetPriority},
               std::nullopt,
               "a process service on a foreign process"}};
  }
  return {};
}

bool VariantFinding::matches() const {
  if (claims.empty()) return false;
  for (const auto& c : claims) {
    if (!c.matched) return false;
  }
  return true;
}

namespace {

template <class M, class ConclEq>
void Match(VariantFinding* f, const M& m, const std::vector<ChannelClaim>& claims,
           ConclEq concl_eq) {
  for (const auto& claim : claims) {
    ClaimResult r{claim};
    for (const auto& v : f->failures) {
      if (v.condition != claim.condition) continue;
      const EventKind k = m.events()[v.event].kind;
      if (std::find(claim.kinds.begin(), claim.kinds.end(), k) ==
          claim.kinds.end()) {
        continue;
      }
      if (claim.d && v.witness->d != *claim.d) continue;
      r.matched = true;
      r.verdict = v;
      r.replayed = core::ReplayOnModel(m, v, concl_eq);
      break;
    }
    f->claims.push_back(std::move(r));
  }
}

template <class M>
VariantFinding Prepare(VariantId v, const M& m,
                       const core::ReachableSpace<typename M::State>& sp) {
  VariantFinding f;
  f.variant = v;
  f.level = VariantLevel(v);
  f.states = sp.graph.num_states();
  f.event_names = sp.graph.event_names();
  for (const auto& d : m.domains()) f.domain_names.push_back(d.name);
  return f;
}

void Crosscheck(VariantFinding* f, const core::TransitionGraph& g,
                const std::vector<core::UnwindingVerdict>& direct,
                const CovertOptions& opts) {
  if (!opts.crosscheck) return;
  core::PropertyOptions po;
  po.max_len = f->level == 1 ? opts.crosscheck_len_l1 : opts.crosscheck_len_l2;
  f->properties = core::CheckProperties(g, po);
  f->crosscheck = core::CrosscheckUnwinding(direct, f->properties);
}

template <class M>
VariantFinding CheckDirect(VariantId v, const M& m,
                           const arinc::KernelConfig& conf,
                           const CovertOptions& opts) {
  auto sp = core::Explore(m, {opts.state_budget});
  VariantFinding f = Prepare(v, m, sp);
  core::UnwindingChecker uc(sp.graph, opts.unwinding);
  const auto all = uc.CheckAll();
  for (const auto& verdict : all) {
    if (!verdict.holds) f.failures.push_back(verdict);
  }
  if (f.failures.empty()) {
    throw NoViolationFound(std::string(VariantName(v)) + ": all conditions hold");
  }
  Crosscheck(&f, sp.graph, all, opts);
  Match(&f, m, ExpectedClaims(v, conf),
        [&](const auto& a, core::DomainId d, const auto& b) {
          return m.vpeq(a, d, b);
        });
  return f;
}

}  // namespace

VariantFinding FindViolation(VariantId v, const arinc::KernelConfig& base,
                             const CovertOptions& opts) {
  const arinc::KernelConfig conf = VariantConfig(v, base);
  const arinc::L2Options o = VariantOptions(v);
  if (VariantLevel(v) == 1) {
    return CheckDirect(v, arinc::KernelL1(conf, o.l1), conf, opts);
  }
  if (v == VariantId::kCC6) {
    return CheckDirect(v, arinc::KernelL2(conf, o), conf, opts);
  }
  // The shared id space lives in the new variables: check the refinement's
  // new-variable conditions against the secure first level.
  arinc::KernelL1 abs(conf);
  arinc::KernelL2 m(conf, o);
  auto sa = core::Explore(abs, {opts.state_budget});
  auto sc = core::Explore(m, {opts.state_budget});
  auto rm = arinc::BuildRefinementMap(m);
  auto rep = core::CheckRefinement(abs, sa, m, sc, rm, opts.unwinding);
  VariantFinding f = Prepare(v, m, sc);
  for (auto& verdict : rep.delta) {
    if (!verdict.holds) f.failures.push_back(verdict);
  }
  if (f.failures.empty()) {
    throw NoViolationFound(std::string(VariantName(v)) +
                           ": new-variable conditions hold");
  }
  if (opts.crosscheck) {
    core::UnwindingChecker uc(sc.graph, opts.unwinding);
    Crosscheck(&f, sc.graph, uc.CheckAll(), opts);
  }
  Match(&f, m, ExpectedClaims(v, conf),
        [&](const auto& a, core::DomainId d, const auto& b) {
          return m.DeltaView(a, d) == m.DeltaView(b, d);
        });
  return f;
}

AttackTrace AttackTraceCC1(const arinc::KernelConfig& conf) {
  const int c = FirstQueuingChannel(conf);
  if (c < 0) throw NoViolationFound("no queuing channel in the configuration");
  const int src = conf.channel_source(c);
  const int dst = conf.channel_dest(c);
  const int a = conf.ports[src].owner;
  const int b = conf.ports[dst].owner;
  const int cap = conf.channels[c].capacity;
  auto u8 = [](int x) { return static_cast<std::uint8_t>(x); };
  const Event sched_a{EventKind::kSchedule, u8(a + 2)};
  const Event sched_b{EventKind::kSchedule, u8(b + 2)};
  const Event sched_t{EventKind::kSchedule, core::kTransmitter};
  const Event send{EventKind::kSendQueuingMessage, conf.ports[src].id,
                   u8(conf.alphabet.front())};
  const Event transfer{EventKind::kTransferQueuingMessage, u8(c)};
  const Event receive{EventKind::kReceiveQueuingMessage, conf.ports[dst].id};

  // Fill the destination, then the source.
  std::vector<Event> prefix = {sched_a,
                               {EventKind::kCreateQueuingPort, u8(src)},
                               sched_b,
                               {EventKind::kCreateQueuingPort, u8(dst)}};
  for (int i = 0; i < cap; ++i) {
    prefix.insert(prefix.end(), {sched_a, send, sched_t, transfer});
  }
  for (int i = 0; i < cap; ++i) prefix.insert(prefix.end(), {sched_a, send});
  const std::vector<Event> probe = {sched_t, transfer, sched_a, send};

  std::vector<Event> run1 = prefix, run0 = prefix;
  run1.insert(run1.end(), {sched_b, receive});
  run0.push_back(sched_b);
  run1.insert(run1.end(), probe.begin(), probe.end());
  run0.insert(run0.end(), probe.begin(), probe.end());

  auto final_state = [](const arinc::KernelL1& m, const std::vector<Event>& es) {
    arinc::StateL1 s = m.SystemInit();
    for (const auto& e : es) s = m.Exec(s, e);
    return s;
  };
  const core::DomainId da = static_cast<core::DomainId>(a + 2);

  AttackTrace t;
  const arinc::KernelL1 variant(conf, VariantOptions(VariantId::kCC1).l1);
  const arinc::KernelL1 baseline(conf);
  for (const auto& e : run1) t.bit1.push_back(variant.event_name(e));
  for (const auto& e : run0) t.bit0.push_back(variant.event_name(e));
  t.sender = conf.partitions[a].name;

  const auto v1 = final_state(variant, run1);
  const auto v0 = final_state(variant, run0);
  t.variant_distinguishes = !variant.vpeq(v1, da, v0);
  t.decoded_bit1 = v1.last_ret[a] == arinc::kRetNoError ? 1 : 0;
  t.decoded_bit0 = v0.last_ret[a] == arinc::kRetNoError ? 1 : 0;
  t.baseline_distinguishes =
      !baseline.vpeq(final_state(baseline, run1), da, final_state(baseline, run0));
  return t;
}

}  // namespace covert
}  // namespace sklab
