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

#include "sklab/core/battery.hh"

#include <random>

#include "sklab/core/crosscheck.hh"
#include "sklab/core/micro.hh"
#include "sklab/core/space.hh"
#include "sklab/core/validate.hh"

namespace sklab {
namespace core {

namespace {

// Memoized evaluation on the graph against the plain recursion on the model.
int OracleMismatches(const MicroModel& m, const ReachableSpace<MicroModel::State>& sp,
                     std::uint64_t seed, const BatteryOptions& opts) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto below = [&](std::uint64_t k) { return rng() % k; };
  const auto& g = sp.graph;
  int bad = 0;
  for (int i = 0; i < opts.oracle_samples; ++i) {
    const auto s = static_cast<StateIndex>(below(g.num_states()));
    const auto d = static_cast<DomainId>(below(g.num_domains()));
    EventSeq es(below(static_cast<std::uint64_t>(opts.oracle_max_len) + 1));
    for (auto& e : es) e = static_cast<std::uint32_t>(below(g.num_events()));
    std::vector<MicroModel::Event> mes;
    for (auto e : es) mes.push_back(m.events()[e]);

    const DomainSet fast = Sources(g, es, s, d);
    const DomainSet slow = naive::Sources(m, std::span<const MicroModel::Event>(mes),
                                          sp.states[s], d);
    const EventSeq pf = Ipurge(g, es, d, {s});
    const auto ps = naive::Ipurge(m, std::span<const MicroModel::Event>(mes), d,
                                  {sp.states[s]});
    EventSeq ps_idx;
    for (auto e : ps) ps_idx.push_back(e);  // micro events are their own indices
    if (!(fast == slow) || pf != ps_idx) ++bad;
  }
  return bad;
}

}  // namespace

BatteryReport RunMicroBattery(const BatteryOptions& opts) {
  BatteryReport r;
  for (int i = 0; i < opts.models; ++i) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(i);
    MicroOptions mo;
    mo.deterministic = i % 2 == 0;
    const MicroModel m = GenerateMicroModel(seed, mo);
    const auto sp = Explore(m);
    const auto& g = sp.graph;
    bool failed = false;
    ++r.models;

    if (!ValidateModel(m, sp).ok()) {
      ++r.invalid;
      failed = true;
    }
    PropertyOptions po;
    po.max_len = opts.max_len;
    po.engine = PropertyEngine::kReference;
    const auto ref = CheckProperties(g, po);
    if (g.deterministic()) {
      ++r.deterministic;
      const auto fast = detail::CheckQuotient(g, po);
      // nullopt means the engine declined; the dispatcher would then fall back.
      if (fast) {
        for (std::size_t p = 0; p < ref.size(); ++p) {
          if ((*fast)[p].holds != ref[p].holds ||
              (*fast)[p].counterexample != ref[p].counterexample) {
            ++r.engine_disagreements;
            failed = true;
            break;
          }
        }
      }
    }
    bool all = true;
    for (const auto& v : ref) {
      all = all && v.holds;
      if (!v.holds && !ReplayCounterexample(g, v.property, *v.counterexample)) {
        ++r.replay_failures;
        failed = true;
      }
    }
    r.all_properties_hold += all;
    if (!CheckImplications(ref).consistent()) {
      ++r.implication_violations;
      failed = true;
    }
    const auto cr = CrosscheckUnwinding(UnwindingChecker(g).CheckAll(), ref);
    if (!cr.consistent()) {
      ++r.crosscheck_inconsistent;
      failed = true;
    }
    if (!cr.sc_implies_nonleakage()) ++r.sc_without_nonleakage;

    const int bad = OracleMismatches(m, sp, seed, opts);
    r.oracle_samples += opts.oracle_samples;
    if (bad > 0) {
      r.oracle_mismatches += bad;
      failed = true;
    }
    if (failed) r.failing_seeds.push_back(seed);
  }
  return r;
}

}  // namespace core
}  // namespace sklab
