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

#ifndef SKLAB_CORE_REFINEMENT_HH_
#define SKLAB_CORE_REFINEMENT_HH_

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sklab/core/errors.hh"
#include "sklab/core/space.hh"
#include "sklab/core/unwinding.hh"

namespace sklab {
namespace core {

/**
 * Simulation Ψ, event relation Θ (nullopt stands for τ) and the equivalence
 * on new variables, given as a per-domain view. An empty delta_view means the
 * relation is universally true.
 */
template <class StateC, class StateA>
struct RefinementMap {
  std::function<StateA(const StateC&)> psi;
  std::vector<std::optional<std::uint32_t>> theta;
  std::function<std::string(const StateC&, DomainId)> delta_view;

  bool delta_trivial() const { return !delta_view; }
  bool has_tau() const {
    return std::any_of(theta.begin(), theta.end(),
                       [](const auto& x) { return !x.has_value(); });
  }
};

struct ObligationResult {
  int id = 0;
  std::string name;
  bool holds = true;
  std::string detail;
  std::optional<EventSeq> s_path;  // path to the offending concrete state
  std::optional<EventSeq> t_path;
};

struct ObligationReport {
  std::vector<ObligationResult> conditions;  // 1..6
  ObligationResult images{0, "reachable images"};
  bool delta_skipped = false;
  std::vector<UnwindingVerdict> delta;  // SC_delta then LR_delta per event
  ClassTables delta_classes;

  bool conditions_hold() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const ObligationResult& r) { return r.holds; });
  }
  bool delta_hold() const { return delta_skipped || AllHold(delta); }
  const ObligationResult* first_failure() const {
    for (const auto& r : conditions) {
      if (!r.holds) return &r;
    }
    return nullptr;
  }
};

/// Security of the concrete model from the abstract verdicts and the report.
inline bool ConcludeSecurity(bool abstract_sc_lr, const ObligationReport& rep) {
  return abstract_sc_lr && rep.conditions_hold() && rep.delta_hold();
}

/// Per-event agreement of the compositional route with direct checking.
struct RouteAgreement {
  std::uint32_t event = 0;
  bool route_sc = false;  // (τ or SC_A(Θ e)) and SC_delta(e)
  bool route_lr = false;
  bool direct_sc = false;
  bool direct_lr = false;
  bool consistent() const {
    return (!route_sc || direct_sc) && (!route_lr || direct_lr);
  }
};

std::vector<RouteAgreement> CompareRoutes(
    const std::vector<std::optional<std::uint32_t>>& theta,
    const std::vector<UnwindingVerdict>& abstract_verdicts,
    const std::vector<UnwindingVerdict>& delta_verdicts,
    const std::vector<UnwindingVerdict>& concrete_verdicts);

namespace detail {

// Ψ-images of concrete states as indices into the abstract space; images
// outside it are appended after the reachable ones.
template <class StateA>
struct ImageTable {
  std::vector<StateIndex> index;  // per concrete state
  std::vector<StateA> extra;
  StateIndex num_reachable = 0;
  const StateA* State(const std::vector<StateA>& reach, StateIndex i) const {
    return i < num_reachable ? &reach[i] : &extra[i - num_reachable];
  }
};

}  // namespace detail

template <KernelModel MA, KernelModel MC>
ObligationReport CheckRefinement(
    const MA& ma, const ReachableSpace<typename MA::State>& sa, const MC& mc,
    const ReachableSpace<typename MC::State>& sc,
    const RefinementMap<typename MC::State, typename MA::State>& rm,
    UnwindingOptions uopts = {}) {
  using StateA = typename MA::State;
  ObligationReport rep;
  const auto& ga = sa.graph;
  const auto& gc = sc.graph;
  const StateIndex nc = gc.num_states();
  const auto& evc = mc.events();
  const auto& eva = ma.events();

  auto fail = [](ObligationResult* r, std::string detail,
                 std::optional<EventSeq> sp = std::nullopt,
                 std::optional<EventSeq> tp = std::nullopt) {
    if (!r->holds) return;
    r->holds = false;
    r->detail = std::move(detail);
    r->s_path = std::move(sp);
    r->t_path = std::move(tp);
  };

  // Images of the concrete states.
  detail::ImageTable<StateA> img;
  img.num_reachable = ga.num_states();
  img.index.resize(nc);
  {
    std::unordered_map<StateA, StateIndex> extra_idx;
    for (StateIndex s = 0; s < nc; ++s) {
      StateA a = rm.psi(sc.states[s]);
      if (auto i = sa.Find(a)) {
        img.index[s] = *i;
        continue;
      }
      auto [it, fresh] = extra_idx.emplace(
          a, img.num_reachable + static_cast<StateIndex>(img.extra.size()));
      if (fresh) img.extra.push_back(a);
      img.index[s] = it->second;
      if (rep.images.holds) fail(&rep.images,
           "image of concrete state " + std::to_string(s) +
               " is not reachable in the abstract model",
           gc.PathTo(s));
    }
  }
  auto image = [&](StateIndex s) -> const StateA& {
    return *img.State(sa.states, img.index[s]);
  };
  auto abstract_successor_ok = [&](StateIndex s, std::uint32_t ea,
                                   StateIndex target) {
    const StateIndex ia = img.index[s];
    if (ia < img.num_reachable && target < img.num_reachable) {
      auto succ = ga.successors(ia, ea);
      return std::find(succ.begin(), succ.end(), target) != succ.end();
    }
    const auto succ = Successors(ma, image(s), eva[ea]);
    return std::binary_search(succ.begin(), succ.end(),
                              *img.State(sa.states, target));
  };

  ObligationResult c1{1, "initial states correspond"};
  if (!(rm.psi(sc.states[0]) == sa.states[0])) {
    fail(&c1, "psi(initial concrete) differs from the abstract initial state",
         EventSeq{});
  }

  ObligationResult c2{2, "observable events simulate abstract events"};
  ObligationResult c3{3, "new events leave the abstract state unchanged"};
  ObligationResult c4{4, "same domains and event domains"};
  if (rm.theta.size() != evc.size()) {
    fail(&c2, "theta does not cover the concrete event universe");
  }
  {
    std::vector<bool> hit(eva.size(), false);
    for (const auto& t : rm.theta) {
      if (t && *t < eva.size()) hit[*t] = true;
    }
    for (std::size_t i = 0; i < eva.size(); ++i) {
      if (!hit[i]) {
        fail(&c2, "theta is not onto: abstract event " + ma.event_name(eva[i]) +
                      " has no concrete counterpart");
        break;
      }
    }
  }
  if (!(mc.domains() == ma.domains())) {
    fail(&c4, "concrete and abstract domain sets differ");
  }
  for (StateIndex s = 0; s < nc; ++s) {
    for (std::uint32_t e = 0; e < evc.size() && e < rm.theta.size(); ++e) {
      const auto& th = rm.theta[e];
      for (StateIndex s1 : gc.successors(s, e)) {
        if (!th) {
          if (c3.holds && img.index[s1] != img.index[s]) {
            fail(&c3, "event " + mc.event_name(evc[e]) +
                          " changes the abstract state at concrete state " +
                          std::to_string(s),
                 gc.PathTo(s));
          }
          continue;
        }
        if (c2.holds && !abstract_successor_ok(s, *th, img.index[s1])) {
          fail(&c2, "event " + mc.event_name(evc[e]) + " at concrete state " +
                        std::to_string(s) + " has no abstract counterpart",
               gc.PathTo(s));
        }
      }
      if (th && c4.holds) {
        const DomainId da =
            img.index[s] < img.num_reachable
                ? ga.dom(img.index[s], *th)
                : ma.dom(image(s), eva[*th]);
        if (da != gc.dom(s, e)) {
          fail(&c4, "domain of " + mc.event_name(evc[e]) + " differs at state " +
                        std::to_string(s),
               gc.PathTo(s));
        }
      }
    }
  }

  ObligationResult c5{5, "same interference relation"};
  const auto nd = static_cast<DomainId>(std::min(mc.domains().size(),
                                                 ma.domains().size()));
  for (DomainId a = 0; a < nd && c5.holds; ++a) {
    for (DomainId b = 0; b < nd && c5.holds; ++b) {
      if (ma.interferes(a, b) != mc.interferes(a, b)) {
        fail(&c5, mc.domains()[a].name + " ~> " + mc.domains()[b].name);
      }
    }
  }

  // Condition 6 as a class bijection: concrete classes must correspond
  // one-to-one to pairs (abstract class of the image, delta class).
  ObligationResult c6{6, "equivalence splits into abstract and new parts"};
  rep.delta_classes.assign(mc.domains().size(), {});
  for (DomainId d = 0; d < mc.domains().size(); ++d) {
    if (rm.delta_trivial()) {
      rep.delta_classes[d].assign(nc, 0);
    } else {
      std::vector<std::string> keys(nc);
      for (StateIndex s = 0; s < nc; ++s) keys[s] = rm.delta_view(sc.states[s], d);
      rep.delta_classes[d] = NumberByFirstOccurrence(keys, nullptr);
    }
  }
  for (DomainId d = 0; d < nd && c6.holds; ++d) {
    // Abstract class of every image; extras are matched against
    // representatives with the abstract vpeq.
    std::vector<StateIndex> reps(ga.num_classes(d), kNoState);
    for (StateIndex a = 0; a < ga.num_states(); ++a) {
      auto& r = reps[ga.view_class(d, a)];
      if (r == kNoState) r = a;
    }
    std::vector<StateIndex> extra_cls(img.extra.size(), kNoState);
    StateIndex next_cls = ga.num_classes(d);
    std::vector<StateIndex> extra_reps;
    for (std::size_t x = 0; x < img.extra.size(); ++x) {
      for (StateIndex c = 0; c < reps.size() && extra_cls[x] == kNoState; ++c) {
        if (ma.vpeq(img.extra[x], d, sa.states[reps[c]])) extra_cls[x] = c;
      }
      for (std::size_t y = 0; y < x && extra_cls[x] == kNoState; ++y) {
        if (extra_cls[y] >= ga.num_classes(d) &&
            ma.vpeq(img.extra[x], d, img.extra[y])) {
          extra_cls[x] = extra_cls[y];
        }
      }
      if (extra_cls[x] == kNoState) extra_cls[x] = next_cls++;
    }
    auto abs_cls = [&](StateIndex s) {
      const StateIndex i = img.index[s];
      return i < img.num_reachable ? ga.view_class(d, i)
                                   : extra_cls[i - img.num_reachable];
    };
    std::unordered_map<StateIndex, std::pair<std::uint64_t, StateIndex>> fwd;
    std::unordered_map<std::uint64_t, std::pair<StateIndex, StateIndex>> bwd;
    for (StateIndex s = 0; s < nc && c6.holds; ++s) {
      const std::uint64_t pair =
          (static_cast<std::uint64_t>(abs_cls(s)) << 32) |
          rep.delta_classes[d][s];
      const StateIndex cc = gc.view_class(d, s);
      auto [f, fnew] = fwd.emplace(cc, std::make_pair(pair, s));
      if (!fnew && f->second.first != pair) {
        fail(&c6,
             "states " + std::to_string(f->second.second) + " and " +
                 std::to_string(s) + " are " + mc.domains()[d].name +
                 "-equivalent but their abstract or new parts differ",
             gc.PathTo(f->second.second), gc.PathTo(s));
      }
      auto [b, bnew] = bwd.emplace(pair, std::make_pair(cc, s));
      if (!bnew && b->second.first != cc) {
        fail(&c6,
             "states " + std::to_string(b->second.second) + " and " +
                 std::to_string(s) + " agree on abstract and new parts for " +
                 mc.domains()[d].name + " but are not equivalent",
             gc.PathTo(b->second.second), gc.PathTo(s));
      }
    }
  }
  rep.conditions = {c1, c2, c3, c4, c5, c6};

  if (!rm.has_tau() && rm.delta_trivial()) {
    rep.delta_skipped = true;
  } else {
    UnwindingChecker uc(gc, uopts);
    uc.SetConclusion(&rep.delta_classes);
    rep.delta = uc.CheckAll();
  }
  return rep;
}

/**
 * Trace inclusion up to length L: the image of every concrete execution is
 * contained in the abstract execution of the Θ-image of the sequence.
 */
struct TraceInclusionReport {
  bool holds = true;
  std::size_t sequences = 0;
  std::optional<EventSeq> counterexample;
};

template <KernelModel MA, KernelModel MC>
TraceInclusionReport CheckTraceInclusion(
    const MA& ma, const MC& mc,
    const RefinementMap<typename MC::State, typename MA::State>& rm, int max_len,
    std::uint64_t work_budget = 10'000'000) {
  using SA = typename MA::State;
  using SCs = typename MC::State;
  const auto& evc = mc.events();
  const auto& eva = ma.events();
  double work = 1;
  for (int i = 0; i < max_len; ++i) work *= static_cast<double>(evc.size());
  if (work > static_cast<double>(work_budget)) {
    throw BoundTooLarge("trace inclusion: |events|^L exceeds the work budget");
  }
  TraceInclusionReport rep;
  EventSeq es;
  std::function<void(const std::vector<SCs>&, const std::vector<SA>&)> rec =
      [&](const std::vector<SCs>& cs, const std::vector<SA>& as) {
        ++rep.sequences;
        for (const auto& c : cs) {
          if (!std::binary_search(as.begin(), as.end(), rm.psi(c))) {
            if (rep.holds) rep.counterexample = es;
            rep.holds = false;
            return;
          }
        }
        if (static_cast<int>(es.size()) == max_len || !rep.holds) return;
        for (std::uint32_t e = 0; e < evc.size(); ++e) {
          std::vector<SCs> nc;
          for (const auto& c : cs) mc.step(c, evc[e], nc);
          SortUnique(&nc);
          std::vector<SA> na;
          if (rm.theta[e]) {
            for (const auto& a : as) ma.step(a, eva[*rm.theta[e]], na);
            SortUnique(&na);
          } else {
            na = as;
          }
          es.push_back(e);
          rec(nc, na);
          es.pop_back();
          if (!rep.holds) return;
        }
      };
  rec({mc.initial()}, {ma.initial()});
  return rep;
}

/// Identity refinement of a model onto itself.
template <KernelModel M>
RefinementMap<typename M::State, typename M::State> IdentityMap(const M& m) {
  RefinementMap<typename M::State, typename M::State> rm;
  rm.psi = [](const typename M::State& s) { return s; };
  for (std::uint32_t e = 0; e < m.events().size(); ++e) rm.theta.push_back(e);
  return rm;
}

/// Composition: first refine A by B, then B by C.
template <class SA, class SB, class SCs>
RefinementMap<SCs, SA> Compose(const RefinementMap<SB, SA>& ab,
                               const RefinementMap<SCs, SB>& bc) {
  RefinementMap<SCs, SA> rm;
  rm.psi = [ab, bc](const SCs& s) { return ab.psi(bc.psi(s)); };
  for (const auto& t : bc.theta) {
    rm.theta.push_back(t ? ab.theta[*t] : std::nullopt);
  }
  if (!ab.delta_trivial() || !bc.delta_trivial()) {
    rm.delta_view = [ab, bc](const SCs& s, DomainId d) {
      std::string v = bc.delta_trivial() ? std::string() : bc.delta_view(s, d);
      v.push_back('|');
      if (!ab.delta_trivial()) v += ab.delta_view(bc.psi(s), d);
      return v;
    };
  }
  return rm;
}

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_REFINEMENT_HH_ */
