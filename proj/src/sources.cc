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

#include "sklab/core/sources.hh"

#include <algorithm>

namespace sklab {
namespace core {

namespace {

void Image(const TransitionGraph& g, std::span<const StateIndex> ss,
           std::uint32_t e, std::vector<StateIndex>* out) {
  out->clear();
  for (StateIndex s : ss) {
    for (StateIndex t : g.successors(s, e)) out->push_back(t);
  }
  std::sort(out->begin(), out->end());
  out->erase(std::unique(out->begin(), out->end()), out->end());
}

}  // namespace

std::vector<StateIndex> Execution(const TransitionGraph& g,
                                  std::span<const StateIndex> ss,
                                  std::span<const std::uint32_t> es) {
  std::vector<StateIndex> cur(ss.begin(), ss.end());
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  std::vector<StateIndex> next;
  for (std::uint32_t e : es) {
    Image(g, cur, e, &next);
    cur.swap(next);
  }
  return cur;
}

std::vector<StateIndex> Execution(const TransitionGraph& g, StateIndex s,
                                  std::span<const std::uint32_t> es) {
  return Execution(g, std::span<const StateIndex>(&s, 1), es);
}

bool ObsEquivalent(const TransitionGraph& g, StateIndex s,
                   std::span<const std::uint32_t> es1, DomainId d,
                   StateIndex t, std::span<const std::uint32_t> es2) {
  const auto xs = Execution(g, s, es1);
  const auto ys = Execution(g, t, es2);
  for (StateIndex x : xs) {
    for (StateIndex y : ys) {
      if (!g.vpeq(x, d, y)) return false;
    }
  }
  return true;
}

DomainSet PurgeEvaluator::Sources(std::size_t pos, StateIndex s) {
  if (pos == es_.size()) return DomainSet::Of(d_);
  const std::uint64_t key = (static_cast<std::uint64_t>(pos) << 32) | s;
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const std::uint32_t e = es_[pos];
  DomainSet acc;
  for (StateIndex s1 : g_.successors(s, e)) acc |= Sources(pos + 1, s1);
  const DomainId w = g_.dom(s, e);
  if (g_.influence(w).intersects(acc)) acc.insert(w);
  memo_.emplace(key, acc);
  return acc;
}

EventSeq PurgeEvaluator::Ipurge(std::vector<StateIndex> ss) {
  EventSeq out;
  std::vector<StateIndex> next;
  for (std::size_t pos = 0; pos < es_.size(); ++pos) {
    const std::uint32_t e = es_[pos];
    bool keep = false;
    for (StateIndex s : ss) {
      if (Sources(pos, s).contains(g_.dom(s, e))) {
        keep = true;
        break;
      }
    }
    if (keep) {
      out.push_back(e);
      Image(g_, ss, e, &next);
      ss.swap(next);
    }
  }
  return out;
}

DomainSet Sources(const TransitionGraph& g, std::span<const std::uint32_t> es,
                  StateIndex s, DomainId d) {
  return PurgeEvaluator(g, es, d).Sources(0, s);
}

EventSeq Ipurge(const TransitionGraph& g, std::span<const std::uint32_t> es,
                DomainId d, std::vector<StateIndex> ss) {
  return PurgeEvaluator(g, es, d).Ipurge(std::move(ss));
}

namespace naive {

DomainSet Sources(const TransitionGraph& g, std::span<const std::uint32_t> es,
                  StateIndex s, DomainId d) {
  if (es.empty()) return DomainSet::Of(d);
  const std::uint32_t e = es[0];
  const DomainId w = g.dom(s, e);
  DomainSet result;
  bool add_w = false;
  for (StateIndex s1 : g.successors(s, e)) {
    const DomainSet sub = naive::Sources(g, es.subspan(1), s1, d);
    result |= sub;
    for (DomainId v : sub.members()) {
      if (g.interferes(w, v)) add_w = true;
    }
  }
  if (add_w) result.insert(w);
  return result;
}

EventSeq Ipurge(const TransitionGraph& g, std::span<const std::uint32_t> es,
                DomainId d, std::vector<StateIndex> ss) {
  if (es.empty()) return {};
  const std::uint32_t e = es[0];
  bool keep = false;
  for (StateIndex s : ss) {
    if (naive::Sources(g, es, s, d).contains(g.dom(s, e))) keep = true;
  }
  if (!keep) return naive::Ipurge(g, es.subspan(1), d, std::move(ss));
  std::vector<StateIndex> next;
  for (StateIndex s : ss) {
    for (StateIndex t : g.successors(s, e)) next.push_back(t);
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  EventSeq rest = naive::Ipurge(g, es.subspan(1), d, std::move(next));
  rest.insert(rest.begin(), e);
  return rest;
}

}  // namespace naive

}  // namespace core
}  // namespace sklab
