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

#include <map>
#include <memory>

#include "sklab/arinc/kernel_l1.hh"
#include "sklab/arinc/kernel_l2.hh"
#include "sklab/cli/config_io.hh"
#include "sklab/cli/runner.hh"
#include "sklab/core/errors.hh"
#include "sklab/core/space.hh"

namespace sklab {
namespace cli {

namespace {

using core::Condition;
using core::EventSeq;
using core::UnwindingVerdict;

Condition ParseCondition(const std::string& s) {
  for (Condition c : {Condition::kSC, Condition::kLR, Condition::kSCDelta,
                      Condition::kLRDelta}) {
    if (s == core::ConditionName(c)) return c;
  }
  throw ParseError("unknown condition '" + s + "' in report");
}

// Event and domain names of one model, resolved back to indices.
template <class M>
struct Names {
  explicit Names(const M& m) {
    for (std::uint32_t i = 0; i < m.events().size(); ++i) {
      events[m.event_name(m.events()[i])] = i;
    }
    for (std::size_t d = 0; d < m.domains().size(); ++d) {
      domains[m.domains()[d].name] = static_cast<core::DomainId>(d);
    }
  }
  std::uint32_t Event(const Json& j) const {
    auto it = events.find(j.get<std::string>());
    if (it == events.end()) throw ParseError("unknown event " + j.dump() + " in report");
    return it->second;
  }
  core::DomainId Domain(const Json& j) const {
    auto it = domains.find(j.get<std::string>());
    if (it == domains.end()) throw ParseError("unknown domain " + j.dump() + " in report");
    return it->second;
  }
  EventSeq Seq(const Json& a) const {
    EventSeq out;
    for (const auto& e : a) out.push_back(Event(e));
    return out;
  }
  std::map<std::string, std::uint32_t> events;
  std::map<std::string, core::DomainId> domains;
};

template <class M>
UnwindingVerdict ToVerdict(const Names<M>& n, const Json& j) {
  UnwindingVerdict v;
  v.event = n.Event(j.at("event"));
  v.condition = ParseCondition(j.at("condition").get<std::string>());
  v.holds = j.at("holds").get<bool>();
  if (j.contains("witness")) {
    const Json& w = j["witness"];
    core::Witness x;
    x.d = n.Domain(w.at("d"));
    x.event = v.event;
    x.s = w.at("s").get<core::StateIndex>();
    x.s_path = n.Seq(w.at("s_path"));
    if (w.contains("t")) {
      x.t = w["t"].get<core::StateIndex>();
      x.t_path = n.Seq(w.at("t_path"));
    }
    v.witness = std::move(x);
  }
  return v;
}

class Replayer {
 public:
  explicit Replayer(ReplaySummary* out) : out_(out) {}

  void Record(const std::string& where, bool ok) {
    ++out_->witnesses;
    if (ok) {
      ++out_->reproduced;
    } else {
      out_->failures.push_back(where);
    }
  }

  // Every failing verdict in `arr` must replay on m; the new-variable
  // conditions compare `delta_eq` instead of the full equivalence.
  template <class M, class DeltaEq>
  void Verdicts(const M& m, const Json& arr, const std::string& where,
                DeltaEq delta_eq) {
    const Names<M> n(m);
    auto full_eq = [&](const auto& a, core::DomainId d, const auto& b) {
      return m.vpeq(a, d, b);
    };
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (arr[i].at("holds").get<bool>()) continue;
      const auto v = ToVerdict(n, arr[i]);
      const bool delta = v.condition == Condition::kSCDelta ||
                         v.condition == Condition::kLRDelta;
      const bool ok = delta ? core::ReplayOnModel(m, v, delta_eq)
                            : core::ReplayOnModel(m, v, full_eq);
      Record(where + "[" + std::to_string(i) + "]", ok);
    }
  }

  template <class M>
  void Verdicts(const M& m, const Json& arr, const std::string& where) {
    Verdicts(m, arr, where, [&](const auto& a, core::DomainId d, const auto& b) {
      return m.vpeq(a, d, b);
    });
  }

  // Property counterexamples are re-evaluated on a freshly explored graph.
  template <class M>
  void Properties(const M& m, const Json& arr, const std::string& where,
                  std::size_t state_budget) {
    std::unique_ptr<core::ReachableSpace<typename M::State>> sp;
    const Names<M> n(m);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].contains("counterexample")) continue;
      if (!sp) {
        sp = std::make_unique<core::ReachableSpace<typename M::State>>(
            core::Explore(m, {state_budget}));
      }
      const Json& c = arr[i]["counterexample"];
      const auto p = core::ParsePropertyName(arr[i].at("property").get<std::string>());
      if (!p) throw ParseError("unknown property in report");
      core::Counterexample x;
      x.d = n.Domain(c.at("d"));
      x.es1 = n.Seq(c.at("es1"));
      x.es2 = n.Seq(c.at("es2"));
      x.s_path = n.Seq(c.at("s_path"));
      x.t_path = n.Seq(c.at("t_path"));
      x.s = c.at("s").get<core::StateIndex>();
      x.t = c.at("t").get<core::StateIndex>();
      const bool ok = x.s < sp->graph.num_states() && x.t < sp->graph.num_states() &&
                      core::ReplayCounterexample(sp->graph, *p, x);
      Record(where + "[" + std::to_string(i) + "]", ok);
    }
  }

 private:
  ReplaySummary* out_;
};

}  // namespace

ReplaySummary ReplayReport(const Json& report) {
  if (!report.is_object() || !report.contains("schema") ||
      report["schema"] != kReportSchema || !report.contains("config")) {
    throw ParseError("not a schema 1 report");
  }
  const arinc::KernelConfig conf = ParseConfig(report["config"].dump());
  const std::size_t budget = conf.bounds.state_budget;
  ReplaySummary out;
  Replayer rp(&out);
  const arinc::KernelL1 l1(conf);
  const arinc::KernelL2 l2(conf);

  if (report.contains("unwinding")) {
    const Json& u = report["unwinding"];
    if (u.contains("L1") && u["L1"].contains("verdicts")) {
      rp.Verdicts(l1, u["L1"]["verdicts"], "unwinding.L1");
    }
    if (u.contains("L2") && u["L2"].contains("verdicts")) {
      rp.Verdicts(l2, u["L2"]["verdicts"], "unwinding.L2");
    }
  }
  if (report.contains("properties")) {
    const Json& p = report["properties"];
    if (p.contains("L1") && p["L1"].contains("verdicts")) {
      rp.Properties(l1, p["L1"]["verdicts"], "properties.L1", budget);
    }
    if (p.contains("L2") && p["L2"].contains("verdicts")) {
      rp.Properties(l2, p["L2"]["verdicts"], "properties.L2", budget);
    }
  }
  if (report.contains("refinement")) {
    for (const auto& [name, r] : report["refinement"].items()) {
      if (!r.contains("delta")) continue;
      rp.Verdicts(l2, r["delta"]["verdicts"], "refinement." + name + ".delta",
                  [&](const arinc::StateL2& a, core::DomainId d,
                      const arinc::StateL2& b) {
                    return l2.DeltaView(a, d) == l2.DeltaView(b, d);
                  });
    }
  }
  if (report.contains("covert")) {
    for (const auto& [name, v] : report["covert"].items()) {
      if (!v.contains("variant")) continue;
      const auto id = covert::ParseVariant(v["variant"].get<std::string>());
      if (!id) throw ParseError("unknown variant in report");
      const auto vc = covert::VariantConfig(*id, conf);
      const auto o = covert::VariantOptions(*id);
      const std::string where = "covert." + name;
      if (covert::VariantLevel(*id) == 1) {
        const arinc::KernelL1 m(vc, o.l1);
        rp.Verdicts(m, v["failures"], where + ".failures");
        if (v.contains("properties")) {
          rp.Properties(m, v["properties"], where + ".properties", budget);
        }
        continue;
      }
      const arinc::KernelL2 m(vc, o);
      rp.Verdicts(m, v["failures"], where + ".failures",
                  [&](const arinc::StateL2& a, core::DomainId d,
                      const arinc::StateL2& b) {
                    return m.DeltaView(a, d) == m.DeltaView(b, d);
                  });
      if (v.contains("properties")) {
        rp.Properties(m, v["properties"], where + ".properties", budget);
      }
    }
  }
  return out;
}

}  // namespace cli
}  // namespace sklab
