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

// Bounded property checking by dynamic programming over sequence suffixes on
// the bisimulation quotient of a deterministic graph.
//
// For X = e#Y, with s' the e-successor of s and w = dom(s, e):
//   fin(s, X) = fin(s', Y)
//   src(s, X) = src(s', Y) + {w} if w interferes with some member
//   ipurge(X, {s}) = e # ipurge(Y, {s'}) if w in src(s, X) else ipurge(Y, {s})
// Sequences are numbered shortlex (first event most significant) so prepending
// is arithmetic on ids. Tables for lengths < L are kept; length L is streamed.

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "sklab/core/errors.hh"
#include "sklab/core/properties.hh"
#include "sklab/core/quotient.hh"

namespace sklab {
namespace core {
namespace detail {

namespace {

constexpr std::uint32_t kUnset = 0xffffffffu;
constexpr std::uint32_t kConflict = 0xfffffffeu;
constexpr std::uint64_t kNone = ~std::uint64_t{0};

inline void Merge(std::uint32_t& slot, std::uint32_t v) {
  if (slot == kUnset) {
    slot = v;
  } else if (slot != v) {
    slot = kConflict;
  }
}

struct Combined {
  std::vector<std::uint32_t> id;
  std::uint32_t count = 0;
};

class Engine {
 public:
  Engine(const TransitionGraph& g, const Quotient& q, int L, DomainId d,
         std::vector<PropertyVerdict>& out)
      : g_(g), q_(q), L_(L), n_(q.num_blocks), E_(q.num_event_classes),
        d_(d), out_(out) {
    off_.assign(L_ + 2, 0);
    pw_.assign(L_ + 1, 1);
    for (int k = 0; k <= L_; ++k) {
      if (k > 0) pw_[k] = pw_[k - 1] * E_;
      off_[k + 1] = off_[k] + pw_[k];
    }
  }

  static std::size_t TableBytes(const Quotient& q, int L) {
    std::uint64_t stored = 0, pw = 1;
    for (int k = 0; k < L; ++k) {
      stored += pw;
      pw *= q.num_event_classes;
    }
    return static_cast<std::size_t>(stored * q.num_blocks * 12 + stored * q.num_blocks / 8);
  }

  bool Run() {
    BuildFin();
    if (!PassOne()) return false;
    if (!Found(PropertyId::kWeakNoninfluence)) PassTwo();
    return true;
  }



 private:
  std::size_t At(std::uint64_t id, StateIndex b) const {
    return static_cast<std::size_t>(id) * n_ + b;
  }
  int Len(std::uint64_t id) const {
    int k = 0;
    while (off_[k + 1] <= id) ++k;
    return k;
  }
  std::uint64_t Prepend(std::uint32_t e, std::uint64_t id) const {
    const int k = Len(id);
    return off_[k + 1] + e * pw_[k] + (id - off_[k]);
  }
  EventSeq Decode(std::uint64_t id) const {
    const int k = Len(id);
    std::uint64_t code = id - off_[k];
    EventSeq es(k);
    for (int i = k - 1; i >= 0; --i) {
      es[i] = q_.event_rep[code % E_];
      code /= E_;
    }
    return es;
  }
  bool Found(PropertyId p) const {
    return out_[static_cast<int>(p)].counterexample.has_value();
  }
  void Record(PropertyId p, std::uint64_t x1, std::uint64_t x2, StateIndex b,
              StateIndex tb) {
    auto& v = out_[static_cast<int>(p)];
    const StateIndex s = q_.rep[b];
    const StateIndex t = q_.rep[tb];
    v.holds = false;
    v.counterexample =
        Counterexample{d_, Decode(x1), Decode(x2), s, t, g_.PathTo(s), g_.PathTo(t)};
  }
  bool Bad(std::uint64_t Q, StateIndex b) const {
    const std::size_t i = At(Q, b);
    return (bad_[i >> 6] >> (i & 63)) & 1;
  }

  void BuildFin() {
    fin_.resize(At(off_[L_], 0));
    for (StateIndex b = 0; b < n_; ++b) fin_[b] = b;
    for (int k = 1; k < L_; ++k) {
      for (std::uint64_t code = 0; code < pw_[k]; ++code) {
        const std::uint64_t id = off_[k] + code;
        const std::uint32_t e = static_cast<std::uint32_t>(code / pw_[k - 1]);
        const std::uint64_t y = off_[k - 1] + code % pw_[k - 1];
        for (StateIndex b = 0; b < n_; ++b) {
          fin_[At(id, b)] = fin_[At(y, q_.Next(b, e))];
        }
      }
    }
  }

  // Computes fin/src/ipurge of X = e#Y for every block.
  void Step(std::uint32_t e, std::uint64_t y, std::uint32_t* fin,
            std::uint32_t* src, std::uint32_t* pq) const {
    for (StateIndex b = 0; b < n_; ++b) {
      const StateIndex s1 = q_.Next(b, e);
      const DomainId w = q_.Dom(b, e);
      const std::uint32_t sy = src_[At(y, s1)];
      std::uint32_t sx = sy;
      if (g_.influence(w).bits() & sy) sx |= 1u << w;
      src[b] = sx;
      fin[b] = fin_[At(y, s1)];
      pq[b] = static_cast<std::uint32_t>(
          ((sx >> w) & 1) ? Prepend(e, qq_[At(y, s1)]) : qq_[At(y, b)]);
    }
  }

  // Visits every sequence in shortlex order with its per-block tables,
  // filling the stored layers as it goes. Stops early when visit returns
  // false.
  template <class Visit>
  bool Sweep(bool fill, Visit&& visit) {
    if (fill) {
      src_.assign(At(off_[L_], 0), 0);
      qq_.assign(At(off_[L_], 0), 0);
      for (StateIndex b = 0; b < n_; ++b) src_[b] = 1u << d_;
    }
    if (!visit(std::uint64_t{0}, &fin_[0], &src_[0], &qq_[0])) return false;
    for (int k = 1; k <= L_; ++k) {
      for (std::uint64_t code = 0; code < pw_[k]; ++code) {
        const std::uint64_t id = off_[k] + code;
        const std::uint32_t e = static_cast<std::uint32_t>(code / pw_[k - 1]);
        const std::uint64_t y = off_[k - 1] + code % pw_[k - 1];
        std::uint32_t *fin, *src, *pq;
        if (k < L_) {
          fin = &fin_[At(id, 0)];
          src = &src_[At(id, 0)];
          pq = &qq_[At(id, 0)];
          if (fill) {
            std::vector<std::uint32_t>& tmp = tmp_fin_;
            tmp.resize(n_);
            Step(e, y, tmp.data(), src, pq);
          }
        } else {
          sfin_.resize(n_);
          ssrc_.resize(n_);
          sq_.resize(n_);
          fin = sfin_.data();
          src = ssrc_.data();
          pq = sq_.data();
          Step(e, y, fin, src, pq);
        }
        if (!visit(id, fin, src, pq)) return false;
      }
    }
    return true;
  }

  const Combined& CM(std::uint32_t mask) {
    auto it = cm_.find(mask);
    if (it != cm_.end()) return it->second;
    Combined c;
    c.id.assign(n_, 0);
    c.count = 1;
    for (DomainId v = 0; v < g_.num_domains(); ++v) {
      if (!((mask >> v) & 1)) continue;
      std::unordered_map<std::uint64_t, std::uint32_t> ids;
      for (StateIndex b = 0; b < n_; ++b) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(c.id[b]) << 32) | q_.cls[v][b];
        auto [pos, fresh] =
            ids.emplace(key, static_cast<std::uint32_t>(ids.size()));
        c.id[b] = pos->second;
      }
      c.count = static_cast<std::uint32_t>(ids.size());
    }
    return cm_.emplace(mask, std::move(c)).first->second;
  }

  // Least member of the ipurge group Q at block t whose d-class differs from
  // cls, or kNone.
  std::uint64_t SearchGroup(std::uint64_t Q, StateIndex t, std::uint32_t cls) {
    const auto& cd = q_.cls[d_];
    for (std::uint64_t id = 0; id < off_[L_ + 1]; ++id) {
      std::uint32_t fin, pq;
      if (id < off_[L_]) {
        fin = fin_[At(id, t)];
        pq = qq_[At(id, t)];
      } else {
        const std::uint64_t code = id - off_[L_];
        const std::uint32_t e = static_cast<std::uint32_t>(code / pw_[L_ - 1]);
        const std::uint64_t y = off_[L_ - 1] + code % pw_[L_ - 1];
        const StateIndex s1 = q_.Next(t, e);
        const DomainId w = q_.Dom(t, e);
        const std::uint32_t sy = src_[At(y, s1)];
        std::uint32_t sx = sy;
        if (g_.influence(w).bits() & sy) sx |= 1u << w;
        fin = fin_[At(y, s1)];
        pq = static_cast<std::uint32_t>(
            ((sx >> w) & 1) ? Prepend(e, qq_[At(y, s1)]) : qq_[At(y, t)]);
      }
      if (pq == Q && cd[fin] != cls) return id;
    }
    return kNone;
  }

  bool PassOne() {
    const auto& cd = q_.cls[d_];
    bad_.assign((At(off_[L_], 0) + 63) / 64, 0);
    std::pair<std::uint64_t, StateIndex> best4{kNone, 0};
    std::uint64_t best2 = kNone;
    bool idempotent = true;
    std::vector<std::uint32_t> masks;
    std::vector<std::uint32_t> ag5, ag7;

    Sweep(true, [&](std::uint64_t id, const std::uint32_t* fin,
                    const std::uint32_t* src, const std::uint32_t* pq) {
      auto fin_at = [&](std::uint64_t Q, StateIndex b) {
        return Q == id ? fin[b] : fin_[At(Q, b)];
      };
      for (StateIndex b = 0; b < n_; ++b) {
        const std::uint64_t Q = pq[b];
        if (Q == id) continue;
        if (qq_[At(Q, b)] != Q) {
          idempotent = false;
          return false;
        }
        if (cd[fin_[At(Q, b)]] == cd[fin[b]]) continue;
        if (!Found(PropertyId::kNoninterferenceR)) {
          Record(PropertyId::kNoninterferenceR, id, Q, b, b);
        }
        if (b == 0 && !Found(PropertyId::kNoninterference)) {
          Record(PropertyId::kNoninterference, id, Q, 0, 0);
        }
        const std::size_t i = At(Q, b);
        bad_[i >> 6] |= std::uint64_t{1} << (i & 63);
        if (std::make_pair(Q, b) < best4) best4 = {Q, b};
        if (b == 0 && Q < best2) best2 = Q;
      }

      const bool want5 = !Found(PropertyId::kNonleakage);
      const bool want7 = !Found(PropertyId::kNoninfluence);
      if (!want5 && !want7) return true;
      masks.clear();
      for (StateIndex b = 0; b < n_; ++b) {
        const std::uint32_t m = src[b] | 1u;
        if (std::find(masks.begin(), masks.end(), m) == masks.end()) {
          masks.push_back(m);
        }
      }
      StateIndex v5 = kNoState, v7 = kNoState;
      for (std::uint32_t m : masks) {
        const Combined& cm = CM(m);
        ag5.assign(cm.count, kUnset);
        ag7.assign(cm.count, kUnset);
        for (StateIndex t = 0; t < n_; ++t) {
          Merge(ag5[cm.id[t]], cd[fin[t]]);
          Merge(ag7[cm.id[t]], cd[fin_at(pq[t], t)]);
        }
        for (StateIndex b = 0; b < n_; ++b) {
          if ((src[b] | 1u) != m) continue;
          const std::uint32_t c = cm.id[b];
          if (want5 && b < v5 && ag5[c] == kConflict) v5 = b;
          if (want7 && b < v7 && ag7[c] != cd[fin[b]]) v7 = b;
        }
      }
      if (v5 != kNoState) {
        const auto& cm = CM(src[v5] | 1u);
        for (StateIndex t = 0; t < n_; ++t) {
          if (cm.id[t] == cm.id[v5] && cd[fin[t]] != cd[fin[v5]]) {
            Record(PropertyId::kNonleakage, id, id, v5, t);
            break;
          }
        }
      }
      if (v7 != kNoState) {
        const auto& cm = CM(src[v7] | 1u);
        for (StateIndex t = 0; t < n_; ++t) {
          if (cm.id[t] == cm.id[v7] && cd[fin_at(pq[t], t)] != cd[fin[v7]]) {
            Record(PropertyId::kNoninfluence, id, pq[t], v7, t);
            break;
          }
        }
      }
      return true;
    });
    if (!idempotent) return false;

    if (best4.first != kNone && !Found(PropertyId::kWeakNoninterferenceR)) {
      const auto [Q, b] = best4;
      const std::uint64_t es2 = SearchGroup(Q, b, cd[fin_[At(Q, b)]]);
      Record(PropertyId::kWeakNoninterferenceR, Q, es2, b, b);
    }
    if (best2 != kNone && !Found(PropertyId::kWeakNoninterference)) {
      const std::uint64_t es2 = SearchGroup(best2, 0, cd[fin_[At(best2, 0)]]);
      Record(PropertyId::kWeakNoninterference, best2, es2, 0, 0);
    }
    return true;
  }

  // Bit b set iff no block in b's class under mask m holds a purge-group
  // member for Q that disagrees with another.
  const std::vector<std::uint64_t>& Ok(std::uint64_t Q, std::uint32_t m) {
    std::int32_t& slot = mask_slot_[m];
    if (slot < 0) {
      if (num_slots_ == kMaxSlots) {
        throw BoundTooLarge("too many distinct sources sets for one observer");
      }
      slot = num_slots_++;
    }
    const std::size_t key = static_cast<std::size_t>(Q) * kMaxSlots + slot;
    if (key >= ok_.size()) ok_.resize(key + 1);
    auto& bits = ok_[key];
    if (!bits.empty()) return bits;
    const auto& cd = q_.cls[d_];
    const Combined& cm = CM(m);
    std::vector<std::uint32_t> ag(cm.count, kUnset);
    for (StateIndex t = 0; t < n_; ++t) {
      if (qq_[At(Q, t)] != Q) continue;
      Merge(ag[cm.id[t]], Bad(Q, t) ? kConflict : cd[fin_[At(Q, t)]]);
    }
    bits.assign((n_ + 63) / 64, 0);
    for (StateIndex b = 0; b < n_; ++b) {
      if (ag[cm.id[b]] != kConflict) bits[b >> 6] |= std::uint64_t{1} << (b & 63);
    }
    return bits;
  }

  void PassTwo() {
    const auto& cd = q_.cls[d_];
    ok_.clear();
    mask_slot_.assign(std::size_t{1} << g_.num_domains(), -1);
    num_slots_ = 0;
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> local;
    Sweep(false, [&](std::uint64_t id, const std::uint32_t* fin,
                     const std::uint32_t* src, const std::uint32_t* pq) {
      const bool last = id >= off_[L_];
      local.clear();
      auto ok = [&](std::uint64_t Q, StateIndex b) -> bool {
        const std::uint32_t m = src[b] | 1u;
        if (!(last && Q == id)) {
          return (Ok(Q, m)[b >> 6] >> (b & 63)) & 1;
        }
        // Longest sequences form singleton groups among stored layers.
        const Combined& cm = CM(m);
        auto [it, fresh] = local.try_emplace(m);
        if (fresh) {
          it->second.assign(cm.count, kUnset);
          for (StateIndex t = 0; t < n_; ++t) {
            if (pq[t] == id) Merge(it->second[cm.id[t]], cd[fin[t]]);
          }
        }
        return it->second[cm.id[b]] != kConflict;
      };
      for (StateIndex b = 0; b < n_; ++b) {
        const std::uint64_t Q = pq[b];
        if (ok(Q, b)) continue;
        // Least partner block and its least disagreeing group member.
        const Combined& cm = CM(src[b] | 1u);
        const std::uint32_t want = cd[fin[b]];
        for (StateIndex t = 0; t < n_; ++t) {
          if (cm.id[t] != cm.id[b]) continue;
          const bool stored = !(last && Q == id);
          const std::uint64_t qt = stored ? qq_[At(Q, t)] : pq[t];
          if (qt != Q) continue;
          const std::uint32_t ft = stored ? fin_[At(Q, t)] : fin[t];
          if (cd[ft] != want) {
            Record(PropertyId::kWeakNoninfluence, id, Q, b, t);
            return false;
          }
          if (stored && Bad(Q, t)) {
            Record(PropertyId::kWeakNoninfluence, id, SearchGroup(Q, t, want),
                   b, t);
            return false;
          }
        }
      }
      return true;
    });
  }

  const TransitionGraph& g_;
  const Quotient& q_;
  const int L_;
  const StateIndex n_;
  const std::uint32_t E_;
  const DomainId d_;
  std::vector<PropertyVerdict>& out_;
  std::vector<std::uint64_t> off_, pw_;
  std::vector<std::uint32_t> fin_, src_, qq_;
  std::vector<std::uint32_t> sfin_, ssrc_, sq_, tmp_fin_;
  std::vector<std::uint64_t> bad_;
  std::unordered_map<std::uint32_t, Combined> cm_;
  // Ok bitsets indexed by Q * kMaxSlots + slot of the premise mask.
  static constexpr std::int32_t kMaxSlots = 64;
  std::vector<std::vector<std::uint64_t>> ok_;
  std::vector<std::int32_t> mask_slot_;
  std::int32_t num_slots_ = 0;
};

}  // namespace

std::optional<std::vector<PropertyVerdict>> CheckQuotient(
    const TransitionGraph& g, const PropertyOptions& opts) {
  if (g.num_domains() > 16) {
    throw BoundTooLarge("quotient engine supports at most 16 domains");
  }
  std::vector<PropertyVerdict> out;
  for (PropertyId p : kAllProperties) {
    out.push_back({p, opts.max_len, true, std::nullopt});
  }
  for (DomainId d = 0; d < g.num_domains(); ++d) {
    bool pending = false;
    for (const auto& v : out) pending = pending || v.holds;
    if (!pending) break;
    // Only views of domains that can reach d through the policy (and S) enter
    // the d-instances of the properties.
    DomainSet labels = DomainSet::Of(d) | DomainSet::Of(kScheduler);
    for (bool grew = true; grew;) {
      grew = false;
      for (DomainId v = 0; v < g.num_domains(); ++v) {
        if (!labels.contains(v) && g.influence(v).intersects(labels)) {
          labels.insert(v);
          grew = true;
        }
      }
    }
    const Quotient q = BuildQuotient(g, labels);
    std::uint64_t total = 0, pw = 1;
    for (int k = 0; k <= opts.max_len; ++k) {
      total += pw;
      pw *= q.num_event_classes;
    }
    if (total >= (std::uint64_t{1} << 31)) {
      throw BoundTooLarge("sequence space too large for the quotient engine");
    }
    const std::size_t bytes = Engine::TableBytes(q, opts.max_len);
    if (bytes > opts.memory_budget) {
      throw BoundTooLarge("quotient engine needs " + std::to_string(bytes) +
                          " bytes of tables");
    }
    Engine engine(g, q, opts.max_len, d, out);
    if (!engine.Run()) return std::nullopt;
  }
  return out;
}

}  // namespace detail
}  // namespace core
}  // namespace sklab
