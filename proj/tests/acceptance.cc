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

// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any fails. Runs every suite twice (1 and 3 workers) on the baseline.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sklab/arinc/kernel_l1.hh"
#include "sklab/cli/runner.hh"
#include "sklab/core/sources.hh"
#include "sklab/core/space.hh"

namespace {

using sklab::cli::Json;

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void Require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

class Checks {
 public:
  explicit Checks(const sklab::cli::RunResult& r) {
    for (const auto& c : r.checks) passed_[c.name] = c.passed;
    for (const auto& [n, t] : r.timings) timings_[n] = t;
  }
  // Missing checks count as failures.
  bool Passed(const std::string& name) const {
    auto it = passed_.find(name);
    return it != passed_.end() && it->second;
  }
  double Seconds(const std::string& name) const {
    auto it = timings_.find(name);
    return it == timings_.end() ? 1e9 : it->second;
  }

 private:
  std::map<std::string, bool> passed_;
  std::map<std::string, double> timings_;
};

void Report(int id, const std::string& what, const Criterion& c) {
  std::printf("%s criterion %d: %s\n", c.ok ? "PASS" : "FAIL", id, what.c_str());
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

// Expected attributions, written out independently of the variant module:
// (condition, event-name prefix) pairs that must appear among the failures
// with a reproduced witness.
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>
    kAttributions = {
        {"CC1", {{"LR", "TransferQueuingMessage"}, {"LR", "ReceiveQueuingMessage"}}},
        {"CC2", {{"LR", ""}}},
        {"CC3", {{"SC", ""}}},
        {"CC4", {{"SC", "Schedule("}}},
        {"CC5", {{"SC_delta", "CreateProcess"}}},
        {"CC6", {{"LR", ""}}},
};

bool Attributed(const Json& v, const std::string& cond, const std::string& prefix) {
  for (const auto& c : v["claims"]) {
    if (!c.contains("verdict")) continue;
    const auto& vd = c["verdict"];
    if (vd["condition"] == cond && !vd["holds"].get<bool>() &&
        vd["event"].get<std::string>().rfind(prefix, 0) == 0 &&
        vd["witness"].value("replayed", false)) {
      return true;
    }
  }
  return false;
}

bool AnyFailure(const Json& v, const std::string& cond, const std::string& prefix) {
  for (const auto& f : v["failures"]) {
    if (f["condition"] == cond && f["event"].get<std::string>().rfind(prefix, 0) == 0) {
      return true;
    }
  }
  return false;
}

// Memoized vs recursive sources/ipurge on every baseline sequence up to
// length 5 from the initial state, for every observer.
std::pair<std::size_t, std::size_t> ExhaustiveOracle(int max_len) {
  const sklab::arinc::KernelL1 m(sklab::arinc::BaselineConfig());
  const auto sp = sklab::core::Explore(m);
  const auto& g = sp.graph;
  const auto ne = g.num_events();
  const auto nd = static_cast<sklab::core::DomainId>(g.num_domains());
  std::size_t seqs = 0, mismatches = 0;
  sklab::core::EventSeq es;
  std::function<void()> rec = [&] {
    ++seqs;
    for (sklab::core::DomainId d = 0; d < nd; ++d) {
      if (sklab::core::Sources(g, es, 0, d) != sklab::core::naive::Sources(g, es, 0, d) ||
          sklab::core::Ipurge(g, es, d, {0}) != sklab::core::naive::Ipurge(g, es, d, {0})) {
        ++mismatches;
      }
    }
    if (static_cast<int>(es.size()) == max_len) return;
    for (std::uint32_t e = 0; e < ne; ++e) {
      es.push_back(e);
      rec();
      es.pop_back();
    }
  };
  rec();
  return {seqs, mismatches};
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const auto conf = sklab::arinc::BaselineConfig();
  sklab::cli::RunManifest man;
  man.suites.assign(std::begin(sklab::cli::kAllSuites), std::end(sklab::cli::kAllSuites));
  man.workers = 1;
  const auto t0 = Clock::now();
  const auto run1 = sklab::cli::Run(conf, man);
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("full run: %.1f s, %zu checks\n", elapsed, run1.checks.size());
  const Checks ck(run1);
  const Json& rep = run1.report;
  bool all_ok = true;
  auto done = [&](int id, const std::string& what, const Criterion& c) {
    Report(id, what, c);
    all_ok = all_ok && c.ok;
  };

  {
    Criterion c;
    for (const std::string lvl : {"L1", "L2"}) {
      for (int a = 1; a <= 6; ++a) {
        const auto name = "validate." + lvl + ".A" + std::to_string(a);
        c.Require(ck.Passed(name), name + " failed");
      }
      const double s = ck.Seconds("validate." + lvl);
      c.Require(s < 60.0, lvl + " validation took " + std::to_string(s) + " s");
      c.notes.push_back(lvl + " validation " + std::to_string(s) + " s");
    }
    c.Require(conf.bounds.state_budget == 2'000'000, "state budget is not 2e6");
    if (c.ok) c.notes.clear();
    done(1, "L1 and L2 satisfy all six assumptions within 60 s per level (budget 2e6)", c);
  }
  {
    Criterion c;
    for (const std::string lvl : {"L1", "L2"}) {
      c.Require(ck.Passed("unwinding." + lvl), "unwinding." + lvl + " failed");
      const auto& vs = rep["unwinding"][lvl]["verdicts"];
      std::set<std::string> sc, lr;
      for (const auto& v : vs) {
        c.Require(v["holds"].get<bool>(), lvl + " " + v["event"].get<std::string>() + " " +
                                              v["condition"].get<std::string>());
        (v["condition"] == "SC" ? sc : lr).insert(v["event"].get<std::string>());
      }
      const std::size_t n = lvl == "L1" ? 24 : 48;
      c.Require(sc.size() == n && lr.size() == n,
                lvl + " does not cover " + std::to_string(n) + " events under both conditions");
    }
    done(2, "every L1 and L2 event satisfies SC and LR", c);
  }
  {
    Criterion c;
    const auto& cov = rep["covert"];
    for (const auto& [name, expected] : kAttributions) {
      c.Require(cov.contains(name), name + " missing");
      if (!cov.contains(name)) continue;
      c.Require(ck.Passed("covert." + name), "covert." + name + " failed");
      for (const auto& [cond, prefix] : expected) {
        c.Require(AnyFailure(cov[name], cond, prefix),
                  name + ": no " + cond + " failure on " + prefix);
        c.Require(Attributed(cov[name], cond, prefix),
                  name + ": no replayed " + cond + " witness on " + prefix);
      }
    }
    const auto& at = cov["attack"];
    c.Require(at.value("bits", -1) == 1, "attack does not transmit 1 bit");
    c.Require(at.value("baseline_bits", -1) == 0, "baseline transmits a bit");
    done(3, "covert channels 1-6 attributed as expected; attack 1 bit, baseline 0", c);
  }
  {
    Criterion c;
    for (int i = 1; i <= 6; ++i) {
      const auto n = "refinement.condition" + std::to_string(i);
      c.Require(ck.Passed(n), n + " failed");
    }
    for (const char* n : {"refinement.images", "refinement.delta",
                          "refinement.conclude_security", "refinement.trace_inclusion"}) {
      c.Require(ck.Passed(n), std::string(n) + " failed");
    }
    const auto& r = rep["refinement"]["L2_over_L1"];
    c.Require(r["delta"].value("sc_holds", false), "SC_delta fails");
    c.Require(r["delta"].value("lr_holds", false), "LR_delta fails");
    c.Require(r.value("conclude_security", false), "conclude_security is false");
    c.Require(r["trace_inclusion"].value("bound", 0) == 3, "trace inclusion bound is not 3");
    done(4, "refinement obligations, reachable images, delta conditions, conclusion, trace inclusion", c);
  }
  {
    Criterion c;
    const auto& l1 = rep["properties"]["L1"]["verdicts"];
    c.Require(l1.size() == 7, "L1 does not report 7 properties");
    for (const auto& v : l1) {
      c.Require(v["holds"].get<bool>() && v["bound"] == 4,
                v["property"].get<std::string>() + " does not hold at L=4");
    }
    const auto& b = rep["properties"]["battery"];
    c.Require(b.value("models", 0) >= 100 && b.value("bound", 0) == 4,
              "battery has fewer than 100 models at L=4");
    c.Require(b.value("implication_violations", 1) == 0, "implication violations");
    c.Require(b.value("crosscheck_inconsistent", 1) == 0, "battery crosscheck inconsistent");
    c.Require(ck.Passed("properties.battery"), "battery failed");
    for (const char* n : {"properties.L1.implications", "properties.L1.crosscheck",
                          "properties.L2.crosscheck"}) {
      c.Require(ck.Passed(n), std::string(n) + " failed");
    }
    for (int i = 1; i <= 6; ++i) {
      const auto n = "covert.CC" + std::to_string(i) + ".crosscheck";
      c.Require(ck.Passed(n), n + " failed");
    }
    done(5, "properties at L=4, 100-model battery, crosscheck on baseline and variants", c);
  }
  {
    Criterion c;
    const auto [seqs, bad] = ExhaustiveOracle(5);
    c.Require(bad == 0, std::to_string(bad) + " baseline mismatches");
    const auto& b = rep["properties"]["battery"];
    c.Require(b.value("oracle_samples", 0) >= 10'000, "fewer than 1e4 micro samples");
    c.Require(b.value("oracle_mismatches", 1) == 0, "micro oracle mismatches");
    std::printf("oracle: %zu baseline sequences x 4 observers, %d micro samples\n", seqs,
                b.value("oracle_samples", 0));
    done(6, "memoized sources/ipurge equal the recursive oracle", c);
  }
  {
    Criterion c;
    auto man3 = man;
    man3.workers = 3;
    const auto run3 = sklab::cli::Run(conf, man3);
    const auto a = sklab::cli::RenderMachine(run1);
    c.Require(a == sklab::cli::RenderMachine(run3), "reports differ between 1 and 3 workers");
    const auto rp = sklab::cli::ReplayReport(Json::parse(a));
    c.Require(rp.ok() && rp.witnesses > 0, "report witnesses do not replay");
    done(7, "machine reports are byte-identical across runs and worker counts", c);
  }
  std::printf("%s\n", all_ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
  return all_ok ? 0 : 1;
}
