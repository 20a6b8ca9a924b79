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

#include "sklab/core/unwinding.hh"

#include <algorithm>
#include <thread>

#include "sklab/core/errors.hh"

namespace sklab {
namespace core {

const char* ConditionName(Condition c) {
  switch (c) {
    case Condition::kSC: return "SC";
    case Condition::kLR: return "LR";
    case Condition::kSCDelta: return "SC_delta";
    case Condition::kLRDelta: return "LR_delta";
  }
  return "?";
}

UnwindingChecker::UnwindingChecker(const TransitionGraph& g,
                                   UnwindingOptions opts)
    : g_(g), opts_(opts) {
  const StateIndex n = g.num_states();
  const std::size_t nd = g.num_domains();
  // Scheduler-equivalent states must agree on every event's domain.
  {
    std::vector<StateIndex> rep(g.num_classes(kScheduler), kNoState);
    for (StateIndex s = 0; s < n && a5_; ++s) {
      StateIndex& r = rep[g.view_class(kScheduler, s)];
      if (r == kNoState) {
        r = s;
        continue;
      }
      for (std::uint32_t e = 0; e < g.num_events() && a5_; ++e) {
        a5_ = g.dom(s, e) == g.dom(r, e);
      }
    }
  }
  if (!a5_) return;
  combined_.resize(nd);
  ncombined_.assign(nd, std::vector<StateIndex>(nd, 0));
  for (std::size_t d = 0; d < nd; ++d) {
    combined_[d].resize(nd);
    for (std::size_t w = 0; w < nd; ++w) {
      if (!g.interferes(static_cast<DomainId>(w), static_cast<DomainId>(d))) {
        continue;
      }
      std::vector<std::uint64_t> keys(n);
      const auto& cd = g.classes(static_cast<DomainId>(d));
      const auto& cs = g.classes(kScheduler);
      const auto& cw = g.classes(static_cast<DomainId>(w));
      const std::uint64_t ns = g.num_classes(kScheduler);
      const std::uint64_t nw = g.num_classes(static_cast<DomainId>(w));
      for (StateIndex s = 0; s < n; ++s) {
        keys[s] = (static_cast<std::uint64_t>(cd[s]) * ns + cs[s]) * nw + cw[s];
      }
      combined_[d][w] = NumberByFirstOccurrence(keys, &ncombined_[d][w]);
    }
  }
}

void UnwindingChecker::Finish(UnwindingVerdict* v) const {
  if (!v->witness) return;
  v->holds = false;
  auto& w = *v->witness;
  w.s_path = g_.PathTo(w.s);
  if (w.t) w.t_path = g_.PathTo(*w.t);
}

UnwindingVerdict UnwindingChecker::CheckLR(std::uint32_t e) const {
  UnwindingVerdict v{e, concl_ ? Condition::kLRDelta : Condition::kLR};
  const StateIndex n = g_.num_states();
  const auto nd = static_cast<DomainId>(g_.num_domains());
  for (StateIndex s = 0; s < n && !v.witness; ++s) {
    const DomainId w = g_.dom(s, e);
    for (DomainId d = 0; d < nd && !v.witness; ++d) {
      if (g_.interferes(w, d)) continue;
      for (StateIndex s1 : g_.successors(s, e)) {
        if (Concl(d, s1) != Concl(d, s)) {
          Witness wt;
          wt.d = d;
          wt.event = e;
          wt.s = s;
          wt.s_next = s1;
          v.witness = wt;
          break;
        }
      }
    }
  }
  Finish(&v);
  return v;
}

UnwindingVerdict UnwindingChecker::CheckSC(std::uint32_t e) const {
  return a5_ ? CheckSCGrouped(e) : CheckSCPairs(e);
}

// The witness is the least (t, s, d) with s <= t: scanning states in order,
// the first state that disagrees with its group's first member (or whose own
// successors disagree) fixes t, and the group's first member is the least s.
UnwindingVerdict UnwindingChecker::CheckSCGrouped(std::uint32_t e) const {
  UnwindingVerdict v{e, concl_ ? Condition::kSCDelta : Condition::kSC};
  const StateIndex n = g_.num_states();
  const std::size_t nd = g_.num_domains();
  std::optional<Witness> best;
  auto better = [&](const Witness& a) {
    if (!best) return true;
    if (*a.t != *best->t) return *a.t < *best->t;
    if (a.s != best->s) return a.s < best->s;
    return a.d < best->d;
  };
  for (std::size_t dd = 0; dd < nd; ++dd) {
    const auto d = static_cast<DomainId>(dd);
    // One table of group representatives per possible w.
    std::vector<std::vector<StateIndex>> reps(nd);
    for (std::size_t w = 0; w < nd; ++w) {
      if (g_.interferes(static_cast<DomainId>(w), d)) {
        reps[w].assign(ncombined_[d][w], kNoState);
      }
    }
    for (StateIndex t = 0; t < n; ++t) {
      if (best && t > *best->t) break;
      const DomainId w = g_.dom(t, e);
      if (!g_.interferes(w, d)) continue;
      auto succ_t = g_.successors(t, e);
      std::optional<Witness> found;
      StateIndex& r = reps[w][combined_[d][w][t]];
      if (r != kNoState) {
        const StateIndex r1 = g_.successors(r, e)[0];
        for (StateIndex x : succ_t) {
          if (Concl(d, x) != Concl(d, r1)) {
            found = Witness{d, e, {}, EventSeq{}, r, t, r1, x};
            break;
          }
        }
      } else {
        for (StateIndex x : succ_t) {
          if (Concl(d, x) != Concl(d, succ_t[0])) {
            found = Witness{d, e, {}, EventSeq{}, t, t, succ_t[0], x};
            break;
          }
        }
      }
      if (!found) {
        if (r == kNoState) r = t;
        continue;
      }
      if (better(*found)) best = found;
      break;
    }
  }
  v.witness = best;
  Finish(&v);
  return v;
}

UnwindingVerdict UnwindingChecker::CheckSCPairs(std::uint32_t e) const {
  UnwindingVerdict v{e, concl_ ? Condition::kSCDelta : Condition::kSC};
  const StateIndex n = g_.num_states();
  if (static_cast<double>(n) * n > static_cast<double>(opts_.pair_budget)) {
    throw PairBudgetExceeded("SC pair iteration over " + std::to_string(n) +
                             " states exceeds the pair budget");
  }
  const auto nd = static_cast<DomainId>(g_.num_domains());
  for (StateIndex t = 0; t < n && !v.witness; ++t) {
    for (StateIndex s = 0; s <= t && !v.witness; ++s) {
      const DomainId w = g_.dom(s, e);
      if (!g_.vpeq(s, kScheduler, t) || !g_.vpeq(s, w, t)) continue;
      for (DomainId d = 0; d < nd && !v.witness; ++d) {
        if (!g_.interferes(w, d) || !g_.vpeq(s, d, t)) continue;
        for (StateIndex s1 : g_.successors(s, e)) {
          for (StateIndex t1 : g_.successors(t, e)) {
            if (!v.witness && Concl(d, s1) != Concl(d, t1)) {
              v.witness = Witness{d, e, {}, EventSeq{}, s, t, s1, t1};
            }
          }
        }
      }
    }
  }
  Finish(&v);
  return v;
}

std::vector<UnwindingVerdict> UnwindingChecker::CheckAll() const {
  const std::uint32_t ne = g_.num_events();
  std::vector<UnwindingVerdict> out(2 * ne);
  const int workers = std::max(1, opts_.workers);
  auto job = [&](int k) {
    for (std::uint32_t e = k; e < ne; e += workers) {
      out[e] = CheckSC(e);
      out[ne + e] = CheckLR(e);
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < workers; ++k) pool.emplace_back(job, k);
    for (auto& th : pool) th.join();
  }
  return out;
}

bool AllHold(const std::vector<UnwindingVerdict>& vs) {
  return std::all_of(vs.begin(), vs.end(),
                     [](const UnwindingVerdict& v) { return v.holds; });
}

bool AllHold(const std::vector<UnwindingVerdict>& vs, Condition c) {
  return std::all_of(vs.begin(), vs.end(), [&](const UnwindingVerdict& v) {
    return v.condition != c || v.holds;
  });
}

bool ReplayWitness(const TransitionGraph& g, const UnwindingVerdict& v,
                   const ClassTables* concl) {
  if (v.holds || !v.witness) return false;
  const auto& w = *v.witness;
  auto cls = [&](StateIndex s) {
    return concl ? (*concl)[w.d][s] : g.view_class(w.d, s);
  };
  const auto ss = Execution(g, 0, w.s_path);
  if (!std::binary_search(ss.begin(), ss.end(), w.s)) return false;
  const DomainId dom = g.dom(w.s, w.event);
  auto succ_s = g.successors(w.s, w.event);
  if (std::find(succ_s.begin(), succ_s.end(), w.s_next) == succ_s.end()) {
    return false;
  }
  if (v.condition == Condition::kLR || v.condition == Condition::kLRDelta) {
    return !g.interferes(dom, w.d) && cls(w.s) != cls(w.s_next);
  }
  if (!w.t || !w.t_path) return false;
  const auto ts = Execution(g, 0, *w.t_path);
  if (!std::binary_search(ts.begin(), ts.end(), *w.t)) return false;
  auto succ_t = g.successors(*w.t, w.event);
  if (std::find(succ_t.begin(), succ_t.end(), w.t_next) == succ_t.end()) {
    return false;
  }
  return g.interferes(dom, w.d) && g.vpeq(w.s, w.d, *w.t) &&
         g.vpeq(w.s, kScheduler, *w.t) && g.vpeq(w.s, dom, *w.t) &&
         cls(w.s_next) != cls(w.t_next);
}

}  // namespace core
}  // namespace sklab
