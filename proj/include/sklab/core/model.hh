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

#ifndef SKLAB_CORE_MODEL_HH_
#define SKLAB_CORE_MODEL_HH_

#include <algorithm>
#include <concepts>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sklab/core/domain.hh"

namespace sklab {
namespace core {

/**
 * A state machine security model instance.
 *
 * step() appends the successors of a state under an event to `out`; callers
 * sort and deduplicate. dom() must be total over the generated event universe.
 * vpeq() is the per-domain observational equivalence.
 */
template <class M>
concept KernelModel = requires(const M& m, const typename M::State& s,
                               const typename M::Event& e, DomainId d,
                               std::vector<typename M::State>& out) {
  typename std::hash<typename M::State>;
  { s == s } -> std::convertible_to<bool>;
  { s < s } -> std::convertible_to<bool>;
  { m.initial() } -> std::convertible_to<typename M::State>;
  { m.events() } -> std::convertible_to<const std::vector<typename M::Event>&>;
  m.step(s, e, out);
  { m.dom(s, e) } -> std::convertible_to<DomainId>;
  { m.domains() } -> std::convertible_to<const std::vector<Domain>&>;
  { m.interferes(d, d) } -> std::convertible_to<bool>;
  { m.vpeq(s, d, s) } -> std::convertible_to<bool>;
  { m.event_name(e) } -> std::convertible_to<std::string>;
};

// Models exposing a canonical per-domain view get linear-time class
// computation; vpeq must then coincide with view equality.
template <class M>
concept HasView = KernelModel<M> && requires(const M& m,
                                             const typename M::State& s,
                                             DomainId d) {
  { m.view(s, d) } -> std::convertible_to<std::string>;
};

template <class State>
void SortUnique(std::vector<State>* v) {
  std::sort(v->begin(), v->end());
  v->erase(std::unique(v->begin(), v->end()), v->end());
}

template <KernelModel M>
std::vector<typename M::State> Successors(const M& m,
                                          const typename M::State& s,
                                          const typename M::Event& e) {
  std::vector<typename M::State> out;
  m.step(s, e, out);
  SortUnique(&out);
  return out;
}

/// The set of final states of running `es` from `s`.
template <KernelModel M>
std::vector<typename M::State> Execution(
    const M& m, const typename M::State& s,
    std::span<const typename M::Event> es) {
  std::vector<typename M::State> cur{s};
  std::vector<typename M::State> next;
  for (const auto& e : es) {
    next.clear();
    for (const auto& x : cur) m.step(x, e, next);
    SortUnique(&next);
    cur.swap(next);
  }
  return cur;
}

template <KernelModel M>
DomainSet InfluenceOf(const M& m, DomainId w) {
  DomainSet out;
  for (std::size_t v = 0; v < m.domains().size(); ++v) {
    if (m.interferes(w, static_cast<DomainId>(v))) {
      out.insert(static_cast<DomainId>(v));
    }
  }
  return out;
}

/// ⟦s⟧es1 ≈d≈ ⟦t⟧es2: every pair of final states is d-equivalent.
template <KernelModel M>
bool ObsEquivalent(const M& m, const typename M::State& s,
                   std::span<const typename M::Event> es1, DomainId d,
                   const typename M::State& t,
                   std::span<const typename M::Event> es2) {
  auto xs = Execution(m, s, es1);
  auto ys = Execution(m, t, es2);
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if (!m.vpeq(x, d, y)) return false;
    }
  }
  return true;
}

// Plain recursive definitions, kept deliberately unoptimised as oracles.
namespace naive {

template <KernelModel M>
DomainSet Sources(const M& m, std::span<const typename M::Event> es,
                  const typename M::State& s, DomainId d) {
  if (es.empty()) return DomainSet::Of(d);
  DomainSet acc;
  bool add = false;
  const DomainId w = m.dom(s, es[0]);
  for (const auto& s1 : Successors(m, s, es[0])) {
    DomainSet sub = naive::Sources(m, es.subspan(1), s1, d);
    acc |= sub;
    for (DomainId v : sub.members()) {
      if (m.interferes(w, v)) add = true;
    }
  }
  if (add) acc.insert(w);
  return acc;
}

template <KernelModel M>
std::vector<typename M::Event> Ipurge(const M& m,
                                      std::span<const typename M::Event> es,
                                      DomainId d,
                                      std::vector<typename M::State> ss) {
  if (es.empty()) return {};
  const auto& e = es[0];
  bool keep = false;
  for (const auto& s : ss) {
    if (naive::Sources(m, es, s, d).contains(m.dom(s, e))) keep = true;
  }
  if (!keep) return naive::Ipurge(m, es.subspan(1), d, std::move(ss));
  std::vector<typename M::State> next;
  for (const auto& s : ss) m.step(s, e, next);
  SortUnique(&next);
  auto rest = naive::Ipurge(m, es.subspan(1), d, std::move(next));
  rest.insert(rest.begin(), e);
  return rest;
}

}  // namespace naive

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_MODEL_HH_ */
