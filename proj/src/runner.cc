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

#include "sklab/cli/runner.hh"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "sklab/arinc/kernel_l1.hh"
#include "sklab/arinc/kernel_l2.hh"
#include "sklab/cli/config_io.hh"
#include "sklab/core/battery.hh"
#include "sklab/core/crosscheck.hh"
#include "sklab/core/refinement.hh"
#include "sklab/core/space.hh"
#include "sklab/core/validate.hh"

namespace sklab {
namespace cli {

using arinc::KernelL1;
using arinc::KernelL2;
using arinc::StateL1;
using arinc::StateL2;
using core::UnwindingVerdict;

const char* SuiteName(Suite s) {
  switch (s) {
    case Suite::kValidate: return "validate";
    case Suite::kUnwinding: return "unwinding";
    case Suite::kProperties: return "properties";
    case Suite::kRefinement: return "refinement";
    case Suite::kCovert: return "covert";
  }
  return "?";
}

std::optional<Suite> ParseSuite(std::string_view s) {
  for (Suite x : kAllSuites) {
    if (s == SuiteName(x)) return x;
  }
  return std::nullopt;
}

bool RunResult::passed() const { return first_failure().empty(); }

std::string RunResult::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return c.name;
  }
  return {};
}

int WorkersFromEnv() {
  const char* v = std::getenv("SKLAB_WORKERS");
  if (v == nullptr) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 1;
  return static_cast<int>(std::min(n, 64L));
}

namespace {

// ---- serialization helpers ------------------------------------------------

Json Names(const std::vector<std::string>& names, const core::EventSeq& es) {
  Json a = Json::array();
  for (auto e : es) a.push_back(names[e]);
  return a;
}

Json VerdictJson(const UnwindingVerdict& v, const core::TransitionGraph& g,
                 std::optional<bool> replayed = std::nullopt) {
  Json j = {{"event", g.event_names()[v.event]},
            {"condition", core::ConditionName(v.condition)},
            {"holds", v.holds}};
  if (v.witness) {
    const auto& w = *v.witness;
    Json wj = {{"d", g.domains()[w.d].name},
               {"s", w.s},
               {"s_path", Names(g.event_names(), w.s_path)},
               {"s_next", w.s_next}};
    if (w.t) {
      wj["t"] = *w.t;
      wj["t_path"] = Names(g.event_names(), *w.t_path);
      wj["t_next"] = w.t_next;
    }
    if (replayed) wj["replayed"] = *replayed;
    j["witness"] = std::move(wj);
  }
  return j;
}

Json CounterexampleJson(const core::Counterexample& c,
                        const core::TransitionGraph& g) {
  const auto& n = g.event_names();
  return {{"d", g.domains()[c.d].name}, {"es1", Names(n, c.es1)},
          {"es2", Names(n, c.es2)},     {"s", c.s},
          {"s_path", Names(n, c.s_path)}, {"t", c.t},
          {"t_path", Names(n, c.t_path)}};
}

Json PropertiesJson(const std::vector<core::PropertyVerdict>& vs,
                    const core::TransitionGraph& g) {
  Json a = Json::array();
  for (const auto& v : vs) {
    Json j = {{"property", core::PropertyName(v.property)},
              {"bound", v.bound},
              {"holds", v.holds}};
    if (v.counterexample) {
      j["counterexample"] = CounterexampleJson(*v.counterexample, g);
      j["counterexample"]["replayed"] =
          core::ReplayCounterexample(g, v.property, *v.counterexample);
    }
    a.push_back(std::move(j));
  }
  return a;
}

Json CrosscheckJson(const core::ConsistencyReport& c) {
  return {{"bound", c.bound},
          {"sc", c.sc_holds},
          {"lr", c.lr_holds},
          {"noninfluence", c.noninfluence_holds},
          {"nonleakage", c.nonleakage_holds},
          {"soundness", c.soundness()},
          {"completeness", c.completeness()},
          {"sc_implies_nonleakage", c.sc_implies_nonleakage()},
          {"nonleakage_implies_sc", c.nonleakage_implies_sc()},
          {"consistent", c.consistent()}};
}

Json ObligationJson(const core::ObligationResult& r,
                    const core::TransitionGraph& gc) {
  Json j = {{"id", r.id}, {"name", r.name}, {"holds", r.holds}};
  if (!r.holds) j["detail"] = r.detail;
  if (r.s_path) j["s_path"] = Names(gc.event_names(), *r.s_path);
  if (r.t_path) j["t_path"] = Names(gc.event_names(), *r.t_path);
  return j;
}

// ---- run context ------------------------------------------------------------

class Context {
 public:
  Context(const arinc::KernelConfig& conf, const RunManifest& man, RunResult* out)
      : conf_(conf), man_(man), out_(out) {
    uopts_.pair_budget = conf.bounds.pair_budget;
    uopts_.workers = man.workers;
  }

  const arinc::KernelConfig& conf() const { return conf_; }
  const RunManifest& manifest() const { return man_; }
  const core::UnwindingOptions& uopts() const { return uopts_; }
  Json& report() { return out_->report; }

  const KernelL1& L1() {
    if (!l1_) l1_.emplace(conf_);
    return *l1_;
  }
  const KernelL2& L2() {
    if (!l2_) l2_.emplace(conf_);
    return *l2_;
  }
  const core::ReachableSpace<StateL1>& S1() {
    if (!s1_) s1_.emplace(core::Explore(L1(), {conf_.bounds.state_budget}));
    return *s1_;
  }
  const core::ReachableSpace<StateL2>& S2() {
    if (!s2_) s2_.emplace(core::Explore(L2(), {conf_.bounds.state_budget}));
    return *s2_;
  }
  const std::vector<UnwindingVerdict>& U1() {
    if (!u1_) u1_ = core::UnwindingChecker(S1().graph, uopts_).CheckAll();
    return *u1_;
  }
  const std::vector<UnwindingVerdict>& U2() {
    if (!u2_) u2_ = core::UnwindingChecker(S2().graph, uopts_).CheckAll();
    return *u2_;
  }
  void ReleaseL2() { s2_.reset(); }

  void Check(std::string name, bool passed) {
    out_->checks.push_back({std::move(name), passed});
  }

  // Runs one section; any exception becomes a failing check of that name.
  template <class F>
  void Section(const std::string& suite, const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Json& slot = out_->report[suite][name];
    try {
      f(slot);
    } catch (const std::exception& e) {
      slot = Json{{"error", e.what()}};
      Check(suite + "." + name, false);
    }
    out_->timings.emplace_back(
        suite + "." + name,
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count());
  }

 private:
  const arinc::KernelConfig& conf_;
  const RunManifest& man_;
  RunResult* out_;
  core::UnwindingOptions uopts_;
  std::optional<KernelL1> l1_;
  std::optional<KernelL2> l2_;
  std::optional<core::ReachableSpace<StateL1>> s1_;
  std::optional<core::ReachableSpace<StateL2>> s2_;
  std::optional<std::vector<UnwindingVerdict>> u1_, u2_;
};

// ---- suites -------------------------------------------------------------------

template <class M>
void ValidateLevel(Context& cx, const std::string& level, const M& m,
                   const core::ReachableSpace<typename M::State>& sp, Json& j) {
  core::ValidateOptions vo;
  vo.pair_budget = cx.conf().bounds.pair_budget;
  const auto rep = core::ValidateModel(m, sp, vo);
  j["states"] = sp.graph.num_states();
  j["events"] = sp.graph.num_events();
  j["assumptions"] = Json::array();
  for (const auto& a : rep.assumptions) {
    j["assumptions"].push_back({{"id", a.id},
                                {"name", a.name},
                                {"holds", a.holds},
                                {"exhaustive", a.exhaustive},
                                {"detail", a.detail}});
    cx.Check("validate." + level + ".A" + std::to_string(a.id), a.holds);
  }
}

void RunValidate(Context& cx) {
  cx.Section("validate", "L1", [&](Json& j) {
    ValidateLevel(cx, "L1", cx.L1(), cx.S1(), j);
  });
  cx.Section("validate", "L2", [&](Json& j) {
    ValidateLevel(cx, "L2", cx.L2(), cx.S2(), j);
  });
}

template <class M>
void UnwindingLevel(Context& cx, const std::string& level, const M& m,
                    const core::TransitionGraph& g,
                    const std::vector<UnwindingVerdict>& vs, Json& j) {
  j["states"] = g.num_states();
  j["events"] = g.num_events();
  j["sc_holds"] = core::AllHold(vs, core::Condition::kSC);
  j["lr_holds"] = core::AllHold(vs, core::Condition::kLR);
  j["verdicts"] = Json::array();
  for (const auto& v : vs) {
    std::optional<bool> rp;
    if (!v.holds) rp = core::ReplayOnModel(m, v);
    j["verdicts"].push_back(VerdictJson(v, g, rp));
  }
  cx.Check("unwinding." + level, core::AllHold(vs));
}

void RunUnwinding(Context& cx) {
  cx.Section("unwinding", "L1", [&](Json& j) {
    UnwindingLevel(cx, "L1", cx.L1(), cx.S1().graph, cx.U1(), j);
  });
  cx.Section("unwinding", "L2", [&](Json& j) {
    UnwindingLevel(cx, "L2", cx.L2(), cx.S2().graph, cx.U2(), j);
  });
}

void PropertiesLevel(Context& cx, const std::string& level,
                     const core::TransitionGraph& g,
                     const std::vector<UnwindingVerdict>& uw, int bound,
                     Json& j) {
  core::PropertyOptions po;
  po.max_len = bound;
  po.work_budget = static_cast<double>(cx.conf().bounds.work_budget);
  const auto vs = core::CheckProperties(g, po);
  j["bound"] = bound;
  j["verdicts"] = PropertiesJson(vs, g);
  for (const auto& v : vs) {
    cx.Check("properties." + level + "." + core::PropertyName(v.property),
             v.holds);
  }
  const auto imp = core::CheckImplications(vs);
  j["implications"] = Json::array();
  for (const auto& c : imp.checks) {
    j["implications"].push_back({{"rule", c.rule},
                                 {"antecedent", c.antecedent},
                                 {"consequent", c.consequent},
                                 {"ok", !c.contradiction()}});
  }
  cx.Check("properties." + level + ".implications", imp.consistent());
  const auto cr = core::CrosscheckUnwinding(uw, vs);
  j["crosscheck"] = CrosscheckJson(cr);
  cx.Check("properties." + level + ".crosscheck", cr.consistent());
}

void RunProperties(Context& cx) {
  cx.Section("properties", "L1", [&](Json& j) {
    PropertiesLevel(cx, "L1", cx.S1().graph, cx.U1(),
                    cx.conf().bounds.max_seq_len, j);
  });
  // The second level is only feasible at short bounds.
  cx.Section("properties", "L2", [&](Json& j) {
    PropertiesLevel(cx, "L2", cx.S2().graph, cx.U2(),
                    std::min(cx.conf().bounds.max_seq_len,
                             cx.manifest().variant_len_l2),
                    j);
  });
  cx.Section("properties", "battery", [&](Json& j) {
    core::BatteryOptions bo;
    bo.seed = cx.manifest().seed;
    bo.models = cx.manifest().battery_models;
    bo.max_len = cx.conf().bounds.max_seq_len;
    const auto r = core::RunMicroBattery(bo);
    j = {{"seed", bo.seed},
         {"models", r.models},
         {"deterministic", r.deterministic},
         {"bound", bo.max_len},
         {"invalid", r.invalid},
         {"engine_disagreements", r.engine_disagreements},
         {"replay_failures", r.replay_failures},
         {"implication_violations", r.implication_violations},
         {"crosscheck_inconsistent", r.crosscheck_inconsistent},
         {"oracle_samples", r.oracle_samples},
         {"oracle_mismatches", r.oracle_mismatches},
         {"sc_without_nonleakage", r.sc_without_nonleakage},
         {"all_properties_hold", r.all_properties_hold},
         {"failing_seeds", r.failing_seeds}};
    cx.Check("properties.battery", r.ok());
  });
}

void RunRefinement(Context& cx) {
  cx.Section("refinement", "L2_over_L1", [&](Json& j) {
    const auto& m2 = cx.L2();
    const auto& g2 = cx.S2().graph;
    const auto rm = arinc::BuildRefinementMap(m2);
    const auto rep =
        core::CheckRefinement(cx.L1(), cx.S1(), m2, cx.S2(), rm, cx.uopts());
    j["conditions"] = Json::array();
    for (const auto& c : rep.conditions) {
      j["conditions"].push_back(ObligationJson(c, g2));
      cx.Check("refinement.condition" + std::to_string(c.id), c.holds);
    }
    j["images"] = ObligationJson(rep.images, g2);
    cx.Check("refinement.images", rep.images.holds);

    Json dj = {{"skipped", rep.delta_skipped},
               {"sc_holds", core::AllHold(rep.delta, core::Condition::kSCDelta)},
               {"lr_holds", core::AllHold(rep.delta, core::Condition::kLRDelta)},
               {"verdicts", Json::array()}};
    auto delta_eq = [&](const StateL2& a, core::DomainId d, const StateL2& b) {
      return m2.DeltaView(a, d) == m2.DeltaView(b, d);
    };
    for (const auto& v : rep.delta) {
      std::optional<bool> rp;
      if (!v.holds) rp = core::ReplayOnModel(m2, v, delta_eq);
      dj["verdicts"].push_back(VerdictJson(v, g2, rp));
    }
    j["delta"] = std::move(dj);
    cx.Check("refinement.delta", rep.delta_hold());

    const bool abstract_secure = core::AllHold(cx.U1());
    const bool secure = core::ConcludeSecurity(abstract_secure, rep);
    j["abstract_secure"] = abstract_secure;
    j["conclude_security"] = secure;
    cx.Check("refinement.conclude_security", secure);

    bool routes_ok = true;
    for (const auto& r : core::CompareRoutes(rm.theta, cx.U1(), rep.delta, cx.U2())) {
      routes_ok = routes_ok && r.consistent();
    }
    j["routes_consistent"] = routes_ok;
    cx.Check("refinement.routes", routes_ok);

    const auto ti = core::CheckTraceInclusion(cx.L1(), m2, rm, cx.manifest().trace_len,
                                              cx.conf().bounds.work_budget);
    j["trace_inclusion"] = {{"bound", cx.manifest().trace_len},
                            {"sequences", ti.sequences},
                            {"holds", ti.holds}};
    if (ti.counterexample) {
      j["trace_inclusion"]["counterexample"] = Names(g2.event_names(), *ti.counterexample);
    }
    cx.Check("refinement.trace_inclusion", ti.holds);
  });
}

Json FindingJson(const covert::VariantFinding& f) {
  auto domain = [&](core::DomainId d) { return f.domain_names[d]; };
  auto verdict = [&](const UnwindingVerdict& v, std::optional<bool> rp) {
    Json j = {{"event", f.event_names[v.event]},
              {"condition", core::ConditionName(v.condition)},
              {"holds", v.holds}};
    if (v.witness) {
      const auto& w = *v.witness;
      Json wj = {{"d", domain(w.d)},
                 {"s", w.s},
                 {"s_path", Names(f.event_names, w.s_path)},
                 {"s_next", w.s_next}};
      if (w.t) {
        wj["t"] = *w.t;
        wj["t_path"] = Names(f.event_names, *w.t_path);
        wj["t_next"] = w.t_next;
      }
      if (rp) wj["replayed"] = *rp;
      j["witness"] = std::move(wj);
    }
    return j;
  };
  Json j = {{"variant", covert::VariantName(f.variant)},
            {"number", covert::VariantNumber(f.variant)},
            {"level", f.level},
            {"existence", covert::ExistenceName(covert::StandardExistence(f.variant))},
            {"states", f.states},
            {"failures", Json::array()},
            {"claims", Json::array()}};
  for (const auto& v : f.failures) j["failures"].push_back(verdict(v, std::nullopt));
  for (const auto& c : f.claims) {
    Json kinds = Json::array();
    for (auto k : c.claim.kinds) kinds.push_back(arinc::KindName(k));
    Json cj = {{"condition", core::ConditionName(c.claim.condition)},
               {"kinds", kinds},
               {"observer", c.claim.d ? Json(domain(*c.claim.d)) : Json(nullptr)},
               {"text", c.claim.text},
               {"matched", c.matched},
               {"replayed", c.replayed}};
    if (c.verdict) cj["verdict"] = verdict(*c.verdict, c.replayed);
    j["claims"].push_back(std::move(cj));
  }
  j["matches"] = f.matches();
  return j;
}

void RunCovert(Context& cx) {
  cx.ReleaseL2();
  covert::CovertOptions co;
  co.state_budget = cx.conf().bounds.state_budget;
  co.unwinding = cx.uopts();
  co.crosscheck_len_l1 = cx.manifest().variant_len_l1;
  co.crosscheck_len_l2 = cx.manifest().variant_len_l2;
  for (covert::VariantId v : covert::kAllVariants) {
    if (cx.manifest().channel && *cx.manifest().channel != v) continue;
    const std::string name = std::string("CC") + std::to_string(covert::VariantNumber(v));
    cx.Section("covert", name, [&](Json& j) {
      const auto f = covert::FindViolation(v, cx.conf(), co);
      j = FindingJson(f);
      if (f.crosscheck) {
        // The variant graph is gone by now; replay happens from the report.
        Json props = Json::array();
        for (const auto& p : f.properties) {
          Json pj = {{"property", core::PropertyName(p.property)},
                     {"bound", p.bound},
                     {"holds", p.holds}};
          if (p.counterexample) {
            const auto& c = *p.counterexample;
            pj["counterexample"] = {{"d", f.domain_names[c.d]},
                                    {"es1", Names(f.event_names, c.es1)},
                                    {"es2", Names(f.event_names, c.es2)},
                                    {"s", c.s},
                                    {"s_path", Names(f.event_names, c.s_path)},
                                    {"t", c.t},
                                    {"t_path", Names(f.event_names, c.t_path)}};
          }
          props.push_back(std::move(pj));
        }
        j["properties"] = std::move(props);
        j["crosscheck"] = CrosscheckJson(*f.crosscheck);
        cx.Check("covert." + name + ".crosscheck", f.crosscheck->consistent());
      }
      bool replayed = true;
      for (const auto& c : f.claims) replayed = replayed && c.replayed;
      cx.Check("covert." + name, f.matches() && replayed);
    });
  }
  if (!cx.manifest().channel || *cx.manifest().channel == covert::VariantId::kCC1) {
    cx.Section("covert", "attack", [&](Json& j) {
      const auto t = covert::AttackTraceCC1(cx.conf());
      j = {{"sender", t.sender},
           {"bit1", t.bit1},
           {"bit0", t.bit0},
           {"variant_distinguishes", t.variant_distinguishes},
           {"baseline_distinguishes", t.baseline_distinguishes},
           {"decoded_bit1", t.decoded_bit1},
           {"decoded_bit0", t.decoded_bit0},
           {"bits", t.bits()},
           {"baseline_bits", t.baseline_distinguishes ? 1 : 0}};
      cx.Check("covert.attack", t.bits() == 1 && !t.baseline_distinguishes &&
                                    t.decoded_bit1 == 1 && t.decoded_bit0 == 0);
    });
  }
}

}  // namespace

RunResult Run(const arinc::KernelConfig& conf, const RunManifest& manifest) {
  RunResult out;
  Context cx(conf, manifest, &out);
  Json& r = out.report;
  r["schema"] = kReportSchema;
  r["config"] = Json::parse(DumpConfig(conf));
  r["bounds"] = {{"max_seq_len", conf.bounds.max_seq_len},
                 {"state_budget", conf.bounds.state_budget},
                 {"pair_budget", conf.bounds.pair_budget},
                 {"work_budget", conf.bounds.work_budget},
                 {"trace_len", manifest.trace_len},
                 {"variant_len_l1", manifest.variant_len_l1},
                 {"variant_len_l2", manifest.variant_len_l2},
                 {"battery_models", manifest.battery_models}};
  r["seed"] = manifest.seed;
  Json suites = Json::array();
  for (Suite s : kAllSuites) {
    if (std::find(manifest.suites.begin(), manifest.suites.end(), s) ==
        manifest.suites.end()) {
      continue;
    }
    suites.push_back(SuiteName(s));
  }
  r["suites"] = suites;
  if (manifest.channel) {
    r["channel"] = covert::VariantName(*manifest.channel);
  }

  for (Suite s : kAllSuites) {
    if (std::find(manifest.suites.begin(), manifest.suites.end(), s) ==
        manifest.suites.end()) {
      continue;
    }
    switch (s) {
      case Suite::kValidate: RunValidate(cx); break;
      case Suite::kUnwinding: RunUnwinding(cx); break;
      case Suite::kProperties: RunProperties(cx); break;
      case Suite::kRefinement: RunRefinement(cx); break;
      case Suite::kCovert: RunCovert(cx); break;
    }
  }

  Json checks = Json::array();
  for (const auto& c : out.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}});
  }
  r["checks"] = std::move(checks);
  const std::string first = out.first_failure();
  r["summary"] = {{"passed", first.empty()},
                  {"checks", out.checks.size()},
                  {"first_failure", first.empty() ? Json(nullptr) : Json(first)}};
  return out;
}

std::string RenderMachine(const RunResult& r) { return r.report.dump(2) + "\n"; }

namespace {

const char* Mark(bool b) { return b ? "PASS" : "FAIL"; }

void TextWitness(std::ostringstream& os, const Json& v, const char* indent) {
  os << indent << v["condition"].get<std::string>() << " fails on "
     << v["event"].get<std::string>();
  if (v.contains("witness")) {
    const Json& w = v["witness"];
    os << " for " << w["d"].get<std::string>() << " at state " << w["s"];
    if (w.contains("t")) os << " vs " << w["t"];
    if (w.contains("replayed")) {
      os << (w["replayed"].get<bool>() ? " (replayed)" : " (NOT replayed)");
    }
  }
  os << "\n";
}

}  // namespace

std::string RenderText(const RunResult& r) {
  const Json& j = r.report;
  std::ostringstream os;
  os << "sklab report (schema " << j["schema"] << ")\n";
  os << "partitions:";
  for (const auto& p : j["config"]["partitions"]) os << ' ' << p["name"].get<std::string>();
  os << "; channels:";
  for (const auto& c : j["config"]["channels"]) {
    os << ' ' << c["name"].get<std::string>() << '(' << c["mode"].get<std::string>() << ')';
  }
  os << "\nbounds:";
  for (const auto& [k, v] : j["bounds"].items()) os << ' ' << k << '=' << v;
  os << " seed=" << j["seed"] << "\n";

  if (j.contains("validate")) {
    os << "\n[validate]\n";
    for (const auto& [level, v] : j["validate"].items()) {
      if (v.contains("error")) {
        os << "  " << level << ": error: " << v["error"].get<std::string>() << "\n";
        continue;
      }
      os << "  " << level << ": " << v["states"] << " states, " << v["events"] << " events\n";
      for (const auto& a : v["assumptions"]) {
        os << "    A" << a["id"] << ' ' << Mark(a["holds"].get<bool>()) << "  "
           << a["name"].get<std::string>();
        if (!a["exhaustive"].get<bool>()) os << " [" << a["detail"].get<std::string>() << "]";
        else if (!a["holds"].get<bool>()) os << ": " << a["detail"].get<std::string>();
        os << "\n";
      }
    }
  }
  if (j.contains("unwinding")) {
    os << "\n[unwinding]\n";
    for (const auto& [level, v] : j["unwinding"].items()) {
      if (v.contains("error")) {
        os << "  " << level << ": error: " << v["error"].get<std::string>() << "\n";
        continue;
      }
      os << "  " << level << ": " << v["verdicts"].size() << " checks over " << v["events"]
         << " events; SC " << Mark(v["sc_holds"].get<bool>()) << ", LR "
         << Mark(v["lr_holds"].get<bool>()) << "\n";
      for (const auto& x : v["verdicts"]) {
        if (!x["holds"].get<bool>()) TextWitness(os, x, "    ");
      }
    }
  }
  if (j.contains("properties")) {
    os << "\n[properties]\n";
    for (const auto& [level, v] : j["properties"].items()) {
      if (v.contains("error")) {
        os << "  " << level << ": error: " << v["error"].get<std::string>() << "\n";
        continue;
      }
      if (level == "battery") {
        os << "  battery: " << v["models"] << " micro-models (seed " << v["seed"]
           << ", bound " << v["bound"] << "): engine disagreements "
           << v["engine_disagreements"] << ", implication violations "
           << v["implication_violations"] << ", crosscheck inconsistencies "
           << v["crosscheck_inconsistent"] << ", oracle mismatches "
           << v["oracle_mismatches"] << "/" << v["oracle_samples"] << "\n";
        continue;
      }
      os << "  " << level << " at bound " << v["bound"] << ":\n";
      for (const auto& p : v["verdicts"]) {
        os << "    " << Mark(p["holds"].get<bool>()) << "  " << p["property"].get<std::string>()
           << "\n";
      }
      const Json& c = v["crosscheck"];
      os << "    crosscheck: SC=" << c["sc"] << " LR=" << c["lr"]
         << " noninfluence=" << c["noninfluence"] << " -> "
         << (c["consistent"].get<bool>() ? "consistent" : "INCONSISTENT") << "\n";
    }
  }
  if (j.contains("refinement")) {
    os << "\n[refinement]\n";
    for (const auto& [name, v] : j["refinement"].items()) {
      if (v.contains("error")) {
        os << "  " << name << ": error: " << v["error"].get<std::string>() << "\n";
        continue;
      }
      for (const auto& c : v["conditions"]) {
        os << "  " << Mark(c["holds"].get<bool>()) << "  condition " << c["id"] << ": "
           << c["name"].get<std::string>() << "\n";
      }
      os << "  " << Mark(v["images"]["holds"].get<bool>()) << "  reachable images\n";
      os << "  " << Mark(v["delta"]["sc_holds"].get<bool>() && v["delta"]["lr_holds"].get<bool>())
         << "  new-variable conditions\n";
      for (const auto& x : v["delta"]["verdicts"]) {
        if (!x["holds"].get<bool>()) TextWitness(os, x, "    ");
      }
      os << "  " << Mark(v["conclude_security"].get<bool>()) << "  security concluded\n";
      os << "  " << Mark(v["trace_inclusion"]["holds"].get<bool>()) << "  trace inclusion up to "
         << v["trace_inclusion"]["bound"] << " (" << v["trace_inclusion"]["sequences"]
         << " sequences)\n";
    }
  }
  if (j.contains("covert")) {
    os << "\n[covert]\n";
    for (const auto& [name, v] : j["covert"].items()) {
      if (v.contains("error")) {
        os << "  " << name << ": error: " << v["error"].get<std::string>() << "\n";
        continue;
      }
      if (name == "attack") {
        os << "  attack (" << v["sender"].get<std::string>() << " decodes): variant bits "
           << v["bits"] << ", baseline bits " << v["baseline_bits"] << "\n";
        continue;
      }
      os << "  " << v["variant"].get<std::string>() << " (level " << v["level"] << ", "
         << v["existence"].get<std::string>() << ", " << v["states"] << " states): "
         << v["failures"].size() << " failing checks, claims "
         << (v["matches"].get<bool>() ? "matched" : "NOT matched") << "\n";
      for (const auto& c : v["claims"]) {
        if (c.contains("verdict")) TextWitness(os, c["verdict"], "    ");
      }
      if (v.contains("crosscheck")) {
        os << "    crosscheck at bound " << v["crosscheck"]["bound"] << ": "
           << (v["crosscheck"]["consistent"].get<bool>() ? "consistent" : "INCONSISTENT")
           << "\n";
      }
    }
  }

  os << "\ntimings:\n";
  for (const auto& [name, sec] : r.timings) {
    os << "  " << std::left << std::setw(28) << name << std::right << std::fixed
       << std::setprecision(2) << std::setw(8) << sec << " s\n";
  }
  const std::string first = r.first_failure();
  os << "\nresult: " << (first.empty() ? "PASS" : "FAIL") << " (" << r.checks.size()
     << " checks";
  if (!first.empty()) os << "; first failing: " << first;
  os << ")\n";
  return os.str();
}

}  // namespace cli
}  // namespace sklab
