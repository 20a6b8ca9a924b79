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

#ifndef SKLAB_CORE_VALIDATE_HH_
#define SKLAB_CORE_VALIDATE_HH_

#include <random>
#include <string>
#include <vector>

#include "sklab/core/space.hh"

namespace sklab {
namespace core {

struct AssumptionResult {
  int id = 0;
  std::string name;
  bool holds = true;
  bool exhaustive = true;
  std::string detail;  // counterexample description when !holds
};

struct ValidationReport {
  std::vector<AssumptionResult> assumptions;

  bool ok() const {
    for (const auto& a : assumptions) {
      if (!a.holds) return false;
    }
    return true;
  }
};

struct ValidateOptions {
  std::size_t pair_budget = 300'000'000;   // |S|^2 * |D| for pairwise checking
  std::size_t sample_pairs = 20'000'000;   // used beyond the pair budget
  std::uint64_t sample_seed = 0x5eedULL;
};

namespace detail {

inline std::string Name(const std::vector<Domain>& ds, std::size_t d) {
  return ds[d].name;
}

}  // namespace detail

/**
 * Checks the six model assumptions over a reachable space. Policy laws are
 * checked on the full domain set. Equivalence laws compare vpeq against the
 * computed class partition: on every pair when |S|²·|D| fits the pair budget,
 * otherwise on every state against its class representative, on
 * representative pairs and on a deterministic random sample.
 */
template <KernelModel M>
ValidationReport ValidateModel(const M& m,
                               const ReachableSpace<typename M::State>& space,
                               const ValidateOptions& opts = {}) {
  ValidationReport rep;
  const auto& doms = m.domains();
  const std::size_t nd = doms.size();
  const auto& g = space.graph;
  const StateIndex n = g.num_states();

  AssumptionResult a1{1, "transmitter mediates partition flows"};
  for (std::size_t p = 2; p < nd && a1.holds; ++p) {
    for (std::size_t q = 2; q < nd && a1.holds; ++q) {
      if (p == q) continue;
      auto dp = static_cast<DomainId>(p), dq = static_cast<DomainId>(q);
      if (m.interferes(dp, dq) &&
          !(m.interferes(dp, kTransmitter) && m.interferes(kTransmitter, dq))) {
        a1.holds = false;
        a1.detail = detail::Name(doms, p) + " ~> " + detail::Name(doms, q);
      }
    }
  }
  rep.assumptions.push_back(a1);

  AssumptionResult a2{2, "scheduler interferes with every domain"};
  for (std::size_t d = 0; d < nd && a2.holds; ++d) {
    if (!m.interferes(kScheduler, static_cast<DomainId>(d))) {
      a2.holds = false;
      a2.detail = detail::Name(doms, d);
    }
  }
  rep.assumptions.push_back(a2);

  AssumptionResult a3{3, "only the scheduler interferes with the scheduler"};
  for (std::size_t d = 1; d < nd && a3.holds; ++d) {
    if (m.interferes(static_cast<DomainId>(d), kScheduler)) {
      a3.holds = false;
      a3.detail = detail::Name(doms, d);
    }
  }
  rep.assumptions.push_back(a3);

  AssumptionResult a4{4, "vpeq is an equivalence relation"};
  auto fail4 = [&](StateIndex s, std::size_t d, StateIndex t,
                   const char* what) {
    a4.holds = false;
    a4.detail = std::string(what) + " at (" + std::to_string(s) + ", " +
                detail::Name(doms, d) + ", " + std::to_string(t) + ")";
  };
  for (StateIndex s = 0; s < n && a4.holds; ++s) {
    for (std::size_t d = 0; d < nd && a4.holds; ++d) {
      if (!m.vpeq(space.states[s], static_cast<DomainId>(d), space.states[s])) {
        fail4(s, d, s, "reflexivity");
      }
    }
  }
  auto check_pair = [&](StateIndex s, StateIndex t, std::size_t d) {
    const auto dd = static_cast<DomainId>(d);
    const bool rel = m.vpeq(space.states[s], dd, space.states[t]);
    if (rel != g.vpeq(s, dd, t)) {
      fail4(s, d, t, rel ? "transitivity/symmetry (related across classes)"
                         : "symmetry/transitivity (unrelated within a class)");
    }
  };
  const double full = static_cast<double>(n) * n * nd;
  if (full <= static_cast<double>(opts.pair_budget)) {
    for (StateIndex s = 0; s < n && a4.holds; ++s) {
      for (StateIndex t = 0; t < n && a4.holds; ++t) {
        for (std::size_t d = 0; d < nd && a4.holds; ++d) check_pair(s, t, d);
      }
    }
  } else {
    a4.exhaustive = false;
    std::mt19937_64 rng(opts.sample_seed);
    std::uniform_int_distribution<StateIndex> pick(0, n - 1);
    std::vector<std::vector<StateIndex>> first(nd);
    for (std::size_t d = 0; d < nd; ++d) {
      first[d].assign(g.num_classes(static_cast<DomainId>(d)), kNoState);
      for (StateIndex s = 0; s < n; ++s) {
        auto& f = first[d][g.view_class(static_cast<DomainId>(d), s)];
        if (f == kNoState) f = s;
      }
    }
    // Every state against its class representative, in both directions.
    for (StateIndex s = 0; s < n && a4.holds; ++s) {
      for (std::size_t d = 0; d < nd && a4.holds; ++d) {
        const StateIndex r =
            first[d][g.view_class(static_cast<DomainId>(d), s)];
        check_pair(r, s, d);
        if (a4.holds) check_pair(s, r, d);
      }
    }
    // Every pair of representatives, while it fits the budget.
    for (std::size_t d = 0; d < nd && a4.holds; ++d) {
      const auto& reps = first[d];
      if (static_cast<double>(reps.size()) * reps.size() >
          static_cast<double>(opts.sample_pairs)) {
        continue;
      }
      for (StateIndex a : reps) {
        for (StateIndex b : reps) {
          if (a4.holds) check_pair(a, b, d);
        }
      }
    }
    const std::size_t samples = opts.sample_pairs / (2 * nd) + 1;
    for (std::size_t i = 0; i < samples && a4.holds; ++i) {
      const StateIndex s = pick(rng), t = pick(rng);
      for (std::size_t d = 0; d < nd && a4.holds; ++d) check_pair(s, t, d);
    }
    if (a4.holds) {
      a4.detail = "pairwise over budget: all states vs class representatives, "
                  "representative pairs and " + std::to_string(samples) +
                  " sampled pairs";
    }
  }
  rep.assumptions.push_back(a4);

  AssumptionResult a5{5, "scheduler-equivalent states agree on event domains"};
  {
    const auto& cls = g.classes(kScheduler);
    std::vector<StateIndex> rep_of(g.num_classes(kScheduler), kNoState);
    for (StateIndex s = 0; s < n && a5.holds; ++s) {
      StateIndex& r = rep_of[cls[s]];
      if (r == kNoState) {
        r = s;
        continue;
      }
      for (std::uint32_t e = 0; e < g.num_events(); ++e) {
        if (g.dom(s, e) != g.dom(r, e)) {
          a5.holds = false;
          a5.detail = "states " + std::to_string(r) + " and " +
                      std::to_string(s) + " on " + g.event_names()[e];
          break;
        }
      }
    }
  }
  rep.assumptions.push_back(a5);

  AssumptionResult a6{6, "events are enabled in every reachable state"};
  for (StateIndex s = 0; s < n && a6.holds; ++s) {
    for (std::uint32_t e = 0; e < g.num_events(); ++e) {
      if (g.successors(s, e).empty()) {
        a6.holds = false;
        a6.detail = "state " + std::to_string(s) + ", " + g.event_names()[e];
        break;
      }
    }
  }
  rep.assumptions.push_back(a6);
  return rep;
}

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_VALIDATE_HH_ */
