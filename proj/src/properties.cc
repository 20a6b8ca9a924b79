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

#include "sklab/core/properties.hh"

#include <cmath>
#include <stdexcept>

#include "sklab/core/errors.hh"

namespace sklab {
namespace core {

const char* PropertyName(PropertyId p) {
  switch (p) {
    case PropertyId::kNoninterference: return "noninterference";
    case PropertyId::kWeakNoninterference: return "weak_noninterference";
    case PropertyId::kNoninterferenceR: return "noninterference_r";
    case PropertyId::kWeakNoninterferenceR: return "weak_noninterference_r";
    case PropertyId::kNonleakage: return "nonleakage";
    case PropertyId::kWeakNoninfluence: return "weak_noninfluence";
    case PropertyId::kNoninfluence: return "noninfluence";
  }
  return "?";
}

std::optional<PropertyId> ParsePropertyName(std::string_view name) {
  for (PropertyId p : kAllProperties) {
    if (name == PropertyName(p)) return p;
  }
  return std::nullopt;
}

namespace {

bool AllEquivalent(const TransitionGraph& g, DomainId d,
                   const std::vector<StateIndex>& xs,
                   const std::vector<StateIndex>& ys) {
  for (StateIndex x : xs) {
    for (StateIndex y : ys) {
      if (!g.vpeq(x, d, y)) return false;
    }
  }
  return true;
}

bool SourcesPremise(const TransitionGraph& g, StateIndex s, StateIndex t,
                    DomainSet src) {
  if (!g.vpeq(s, kScheduler, t)) return false;
  for (DomainId v : src.members()) {
    if (!g.vpeq(s, v, t)) return false;
  }
  return true;
}

}  // namespace

bool ReplayCounterexample(const TransitionGraph& g, PropertyId p,
                          const Counterexample& c) {
  const auto reach_s = Execution(g, StateIndex{0}, c.s_path);
  const auto reach_t = Execution(g, StateIndex{0}, c.t_path);
  auto has = [](const std::vector<StateIndex>& v, StateIndex x) {
    for (StateIndex y : v) {
      if (y == x) return true;
    }
    return false;
  };
  if (!has(reach_s, c.s) || !has(reach_t, c.t)) return false;
  const StateIndex s = c.s;
  const StateIndex t = c.t;
  const DomainId d = c.d;
  auto purge = [&](const EventSeq& es, StateIndex x) {
    return naive::Ipurge(g, es, d, {x});
  };
  auto obs = [&](StateIndex x, const EventSeq& a, StateIndex y,
                 const EventSeq& b) {
    return AllEquivalent(g, d, Execution(g, x, a), Execution(g, y, b));
  };
  switch (p) {
    case PropertyId::kNoninterference:
      if (s != 0) return false;
      [[fallthrough]];
    case PropertyId::kNoninterferenceR:
      return s == t && c.es2 == purge(c.es1, s) && !obs(s, c.es1, s, c.es2);
    case PropertyId::kWeakNoninterference:
      if (s != 0) return false;
      [[fallthrough]];
    case PropertyId::kWeakNoninterferenceR:
      return s == t && purge(c.es1, s) == purge(c.es2, s) &&
             !obs(s, c.es1, s, c.es2);
    case PropertyId::kNonleakage:
      return c.es1 == c.es2 &&
             SourcesPremise(g, s, t, naive::Sources(g, c.es1, s, d)) &&
             !obs(s, c.es1, t, c.es1);
    case PropertyId::kWeakNoninfluence:
      return SourcesPremise(g, s, t, naive::Sources(g, c.es1, s, d)) &&
             purge(c.es1, s) == purge(c.es2, t) && !obs(s, c.es1, t, c.es2);
    case PropertyId::kNoninfluence:
      return SourcesPremise(g, s, t, naive::Sources(g, c.es1, s, d)) &&
             c.es2 == purge(c.es1, t) && !obs(s, c.es1, t, c.es2);
  }
  return false;
}

bool ImplicationReport::consistent() const {
  for (const auto& c : checks) {
    if (c.contradiction()) return false;
  }
  return true;
}

ImplicationReport CheckImplications(const std::vector<PropertyVerdict>& v) {
  bool h[7] = {};
  bool seen[7] = {};
  for (const auto& x : v) {
    h[static_cast<int>(x.property)] = x.holds;
    seen[static_cast<int>(x.property)] = true;
  }
  for (bool b : seen) {
    if (!b) throw std::invalid_argument("implications need all seven verdicts");
  }
  auto at = [&](PropertyId p) { return h[static_cast<int>(p)]; };
  using P = PropertyId;
  ImplicationReport r;
  auto edge = [&](P a, P b) {
    r.checks.push_back({std::string(PropertyName(a)) + " -> " + PropertyName(b),
                        at(a), at(b)});
  };
  edge(P::kNoninfluence, P::kNoninterferenceR);
  edge(P::kNoninfluence, P::kWeakNoninfluence);
  edge(P::kNoninfluence, P::kNonleakage);
  edge(P::kNoninterferenceR, P::kNoninterference);
  edge(P::kWeakNoninfluence, P::kWeakNoninterferenceR);
  edge(P::kWeakNoninfluence, P::kNonleakage);
  edge(P::kWeakNoninterferenceR, P::kWeakNoninterference);
  auto equality = [&](P lhs, P a, P b) {
    const std::string conj =
        std::string(PropertyName(a)) + " & " + PropertyName(b);
    const bool both = at(a) && at(b);
    r.checks.push_back({std::string(PropertyName(lhs)) + " -> " + conj,
                        at(lhs), both});
    r.checks.push_back({conj + " -> " + PropertyName(lhs), both, at(lhs)});
  };
  equality(P::kNoninfluence, P::kNoninterferenceR, P::kNonleakage);
  equality(P::kWeakNoninfluence, P::kWeakNoninterferenceR, P::kNonleakage);
  return r;
}

namespace detail {

namespace {

// Shortlex enumeration of all sequences up to a bound, first event most
// significant, with dense ids.
struct SeqIndex {
  std::uint32_t E = 0;
  int L = 0;
  std::vector<std::uint64_t> off;  // off[k] = number of sequences shorter than k
  std::vector<EventSeq> seqs;

  SeqIndex(std::uint32_t events, int bound) : E(events), L(bound) {
    off.assign(L + 2, 0);
    std::uint64_t pw = 1;
    for (int k = 0; k <= L; ++k) {
      off[k + 1] = off[k] + pw;
      pw *= E;
    }
    seqs.reserve(off[L + 1]);
    for (int k = 0; k <= L; ++k) {
      EventSeq cur(k, 0);
      for (;;) {
        seqs.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] + 1 == E) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
      }
      if (E == 0) break;
    }
  }

  std::size_t size() const { return seqs.size(); }

  std::size_t Id(const EventSeq& es) const {
    std::uint64_t code = 0;
    for (std::uint32_t e : es) code = code * E + e;
    return off[es.size()] + code;
  }
};

}  // namespace

std::vector<PropertyVerdict> CheckReference(const TransitionGraph& g,
                                            const PropertyOptions& opts) {
  const int L = opts.max_len;
  const StateIndex n = g.num_states();
  SeqIndex sx(g.num_events(), L);
  const std::size_t N = sx.size();
  const double work = static_cast<double>(n) * n * N * N * g.num_domains();
  if (work > opts.reference_budget) {
    throw BoundTooLarge("reference property check needs " +
                        std::to_string(work) + " steps");
  }

  // exec[x * n + s]: final states of seqs[x] from s.
  std::vector<std::vector<StateIndex>> exec(N * n);
  for (std::size_t x = 0; x < N; ++x) {
    for (StateIndex s = 0; s < n; ++s) exec[x * n + s] = Execution(g, s, sx.seqs[x]);
  }

  std::vector<PropertyVerdict> out;
  for (PropertyId p : kAllProperties) out.push_back({p, L, true, std::nullopt});
  auto found = [&](PropertyId p) {
    return out[static_cast<int>(p)].counterexample.has_value();
  };
  auto record = [&](PropertyId p, DomainId d, std::size_t x1, std::size_t x2,
                    StateIndex s, StateIndex t) {
    auto& v = out[static_cast<int>(p)];
    v.holds = false;
    v.counterexample = Counterexample{d, sx.seqs[x1], sx.seqs[x2], s, t,
                                      g.PathTo(s), g.PathTo(t)};
  };

  std::vector<DomainSet> src(N * n);
  std::vector<std::size_t> pur(N * n);
  for (DomainId d = 0; d < g.num_domains(); ++d) {
    for (std::size_t x = 0; x < N; ++x) {
      for (StateIndex s = 0; s < n; ++s) {
        src[x * n + s] = naive::Sources(g, sx.seqs[x], s, d);
        pur[x * n + s] = sx.Id(naive::Ipurge(g, sx.seqs[x], d, {s}));
      }
    }
    auto obs = [&](std::size_t x1, StateIndex s, std::size_t x2, StateIndex t) {
      return AllEquivalent(g, d, exec[x1 * n + s], exec[x2 * n + t]);
    };
    auto premise = [&](std::size_t x, StateIndex s, StateIndex t) {
      return SourcesPremise(g, s, t, src[x * n + s]);
    };

    for (std::size_t x = 0; x < N && !found(PropertyId::kNoninterference); ++x) {
      if (!obs(x, 0, pur[x * n], 0)) {
        record(PropertyId::kNoninterference, d, x, pur[x * n], 0, 0);
      }
    }
    for (std::size_t x1 = 0; x1 < N && !found(PropertyId::kWeakNoninterference);
         ++x1) {
      for (std::size_t x2 = 0; x2 < N; ++x2) {
        if (pur[x1 * n] == pur[x2 * n] && !obs(x1, 0, x2, 0)) {
          record(PropertyId::kWeakNoninterference, d, x1, x2, 0, 0);
          break;
        }
      }
    }
    for (std::size_t x = 0; x < N && !found(PropertyId::kNoninterferenceR); ++x) {
      for (StateIndex s = 0; s < n; ++s) {
        if (!obs(x, s, pur[x * n + s], s)) {
          record(PropertyId::kNoninterferenceR, d, x, pur[x * n + s], s, s);
          break;
        }
      }
    }
    for (std::size_t x1 = 0;
         x1 < N && !found(PropertyId::kWeakNoninterferenceR); ++x1) {
      for (StateIndex s = 0; s < n && !found(PropertyId::kWeakNoninterferenceR);
           ++s) {
        for (std::size_t x2 = 0; x2 < N; ++x2) {
          if (pur[x1 * n + s] == pur[x2 * n + s] && !obs(x1, s, x2, s)) {
            record(PropertyId::kWeakNoninterferenceR, d, x1, x2, s, s);
            break;
          }
        }
      }
    }
    for (std::size_t x = 0; x < N && !found(PropertyId::kNonleakage); ++x) {
      for (StateIndex s = 0; s < n && !found(PropertyId::kNonleakage); ++s) {
        for (StateIndex t = 0; t < n; ++t) {
          if (premise(x, s, t) && !obs(x, s, x, t)) {
            record(PropertyId::kNonleakage, d, x, x, s, t);
            break;
          }
        }
      }
    }
    for (std::size_t x1 = 0; x1 < N && !found(PropertyId::kWeakNoninfluence);
         ++x1) {
      for (StateIndex s = 0; s < n && !found(PropertyId::kWeakNoninfluence);
           ++s) {
        for (StateIndex t = 0; t < n && !found(PropertyId::kWeakNoninfluence);
             ++t) {
          if (!premise(x1, s, t)) continue;
          for (std::size_t x2 = 0; x2 < N; ++x2) {
            if (pur[x1 * n + s] == pur[x2 * n + t] && !obs(x1, s, x2, t)) {
              record(PropertyId::kWeakNoninfluence, d, x1, x2, s, t);
              break;
            }
          }
        }
      }
    }
    for (std::size_t x = 0; x < N && !found(PropertyId::kNoninfluence); ++x) {
      for (StateIndex s = 0; s < n && !found(PropertyId::kNoninfluence); ++s) {
        for (StateIndex t = 0; t < n; ++t) {
          if (premise(x, s, t) && !obs(x, s, pur[x * n + t], t)) {
            record(PropertyId::kNoninfluence, d, x, pur[x * n + t], s, t);
            break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace detail

std::vector<PropertyVerdict> CheckProperties(const TransitionGraph& g,
                                             const PropertyOptions& opts) {
  if (opts.max_len < 0) throw std::invalid_argument("negative bound");
  const double work =
      std::pow(static_cast<double>(g.num_events()), opts.max_len);
  if (work > opts.work_budget) {
    throw BoundTooLarge("|events|^L = " + std::to_string(work) +
                        " exceeds the work budget");
  }
  switch (opts.engine) {
    case PropertyEngine::kReference:
      return detail::CheckReference(g, opts);
    case PropertyEngine::kQuotient: {
      if (!g.deterministic()) {
        throw std::invalid_argument("quotient engine needs a deterministic graph");
      }
      auto r = detail::CheckQuotient(g, opts);
      if (!r) throw BoundTooLarge("ipurge is not idempotent on this graph");
      return *r;
    }
    case PropertyEngine::kAuto:
      if (g.deterministic()) {
        if (auto r = detail::CheckQuotient(g, opts)) return *r;
      }
      return detail::CheckReference(g, opts);
  }
  return {};
}

PropertyVerdict CheckProperty(const TransitionGraph& g, PropertyId p,
                              const PropertyOptions& opts) {
  return CheckProperties(g, opts)[static_cast<int>(p)];
}

}  // namespace core
}  // namespace sklab
