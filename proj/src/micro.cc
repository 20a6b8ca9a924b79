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

#include "sklab/core/micro.hh"

#include <algorithm>
#include <random>
#include <sstream>

namespace sklab {
namespace core {

namespace {

// Modulo draws keep the stream portable across standard libraries.
struct Draw {
  std::mt19937_64 rng;
  int Below(int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); }
  bool Chance(double p) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
  }
};

}  // namespace

MicroModel GenerateMicroModel(std::uint64_t seed, const MicroOptions& opts) {
  Draw r{std::mt19937_64(seed)};
  MicroModel m;
  const int parts = 1 + r.Below(opts.max_partitions);
  std::vector<std::string> names;
  std::vector<int> ids;
  for (int p = 0; p < parts; ++p) {
    names.push_back("P" + std::to_string(p + 1));
    ids.push_back(p + 1);
  }
  m.domains_ = MakeDomains(names, ids);
  const int nd = static_cast<int>(m.domains_.size());

  m.policy_.assign(nd, std::vector<bool>(nd, false));
  for (int a = 0; a < nd; ++a) {
    for (int b = 0; b < nd; ++b) {
      if (a == b || a == kScheduler) {
        m.policy_[a][b] = true;
      } else if (b != kScheduler) {
        m.policy_[a][b] = r.Chance(0.4);
      }
    }
  }
  // Partition-to-partition flows must be mediated by the transmitter.
  for (int p = 2; p < nd; ++p) {
    for (int q = 2; q < nd; ++q) {
      if (p != q && m.policy_[p][q] &&
          !(m.policy_[p][kTransmitter] && m.policy_[kTransmitter][q])) {
        m.policy_[p][q] = false;
      }
    }
  }

  const int ns = 2 + r.Below(opts.max_states - 1);
  const int ne = 1 + r.Below(opts.max_events);
  for (int e = 0; e < ne; ++e) m.events_.push_back(static_cast<std::uint8_t>(e));

  m.cls_.assign(nd, std::vector<std::uint8_t>(ns, 0));
  for (int d = 0; d < nd; ++d) {
    const int k = 1 + r.Below(ns);
    for (int s = 0; s < ns; ++s) m.cls_[d][s] = static_cast<std::uint8_t>(r.Below(k));
  }
  int sched_classes = 0;
  for (int s = 0; s < ns; ++s) {
    sched_classes = std::max(sched_classes, m.cls_[kScheduler][s] + 1);
  }
  m.dom_.assign(sched_classes, std::vector<DomainId>(ne, 0));
  for (auto& row : m.dom_) {
    for (auto& w : row) w = static_cast<DomainId>(r.Below(nd));
  }

  const bool respect = r.Chance(opts.respect_prob);
  m.succ_.assign(ns, std::vector<std::vector<std::uint8_t>>(ne));
  for (int s = 0; s < ns; ++s) {
    for (int e = 0; e < ne; ++e) {
      const DomainId w = m.dom_[m.cls_[kScheduler][s]][e];
      auto allowed = [&](int t) {
        for (int d = 0; d < nd; ++d) {
          if (!m.policy_[w][d] && m.cls_[d][t] != m.cls_[d][s]) return false;
        }
        return true;
      };
      auto pick = [&]() {
        int t = r.Below(ns);
        if (respect && !allowed(t)) t = s;
        return static_cast<std::uint8_t>(t);
      };
      auto& out = m.succ_[s][e];
      out.push_back(pick());
      if (!opts.deterministic && r.Chance(0.25)) out.push_back(pick());
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }
  return m;
}

std::string MicroModel::Describe() const {
  std::ostringstream os;
  const int nd = static_cast<int>(domains_.size());
  os << "domains=" << nd << " states=" << num_states()
     << " events=" << events_.size() << "\npolicy:";
  for (int a = 0; a < nd; ++a) {
    for (int b = 0; b < nd; ++b) {
      if (a != b && policy_[a][b]) {
        os << ' ' << domains_[a].name << "~>" << domains_[b].name;
      }
    }
  }
  os << "\nclasses:";
  for (int d = 0; d < nd; ++d) {
    os << ' ' << domains_[d].name << '=';
    for (auto c : cls_[d]) os << int(c);
  }
  os << "\nsteps:";
  for (int s = 0; s < num_states(); ++s) {
    for (std::size_t e = 0; e < events_.size(); ++e) {
      os << " " << s << "-e" << e << "[" << domains_[dom(s, e)].name << "]->";
      for (auto t : succ_[s][e]) os << int(t);
    }
  }
  return os.str();
}

}  // namespace core
}  // namespace sklab
