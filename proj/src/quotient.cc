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

#include "sklab/core/quotient.hh"

#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace sklab {
namespace core {

namespace {

// Numbers fixed-width integer rows by first occurrence.
std::vector<StateIndex> NumberRows(const std::vector<std::uint32_t>& flat,
                                   std::size_t width, std::size_t rows,
                                   std::uint32_t* count) {
  std::unordered_map<std::string_view, StateIndex> ids;
  ids.reserve(rows);
  std::vector<StateIndex> out(rows);
  const auto* base = reinterpret_cast<const char*>(flat.data());
  const std::size_t bytes = width * sizeof(std::uint32_t);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string_view key(base + r * bytes, bytes);
    auto [it, fresh] = ids.emplace(key, static_cast<StateIndex>(ids.size()));
    out[r] = it->second;
  }
  *count = static_cast<std::uint32_t>(ids.size());
  return out;
}

}  // namespace

Quotient BuildQuotient(const TransitionGraph& g) {
  return BuildQuotient(
      g, DomainSet((g.num_domains() >= 32 ? 0u : 1u << g.num_domains()) - 1u));
}

Quotient BuildQuotient(const TransitionGraph& g, DomainSet labels) {
  if (!g.deterministic()) {
    throw std::logic_error("quotient requires a deterministic graph");
  }
  const StateIndex n = g.num_states();
  const std::uint32_t ne = g.num_events();
  const std::size_t nd = g.num_domains();

  // Initial labelling: view classes of the labelled domains and event domains.
  std::vector<std::uint32_t> flat(static_cast<std::size_t>(n) * (nd + ne));
  for (StateIndex s = 0; s < n; ++s) {
    std::uint32_t* row = &flat[static_cast<std::size_t>(s) * (nd + ne)];
    for (std::size_t d = 0; d < nd; ++d) {
      row[d] = labels.contains(static_cast<DomainId>(d))
                   ? g.view_class(static_cast<DomainId>(d), s)
                   : 0;
    }
    for (std::uint32_t e = 0; e < ne; ++e) row[nd + e] = g.dom(s, e);
  }
  std::uint32_t count = 0;
  std::vector<StateIndex> block = NumberRows(flat, nd + ne, n, &count);

  // Refine by successor blocks until stable.
  flat.assign(static_cast<std::size_t>(n) * (1 + ne), 0);
  for (;;) {
    for (StateIndex s = 0; s < n; ++s) {
      std::uint32_t* row = &flat[static_cast<std::size_t>(s) * (1 + ne)];
      row[0] = block[s];
      for (std::uint32_t e = 0; e < ne; ++e) row[1 + e] = block[g.next(s, e)];
    }
    std::uint32_t next_count = 0;
    auto refined = NumberRows(flat, 1 + ne, n, &next_count);
    block.swap(refined);
    if (next_count == count) break;
    count = next_count;
  }

  Quotient q;
  q.labels = labels;
  q.num_blocks = count;
  q.block_of = block;
  q.rep.assign(count, kNoState);
  for (StateIndex s = 0; s < n; ++s) {
    if (q.rep[block[s]] == kNoState) q.rep[block[s]] = s;
  }

  // Event classes: identical (successor block, domain) columns.
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(ne) * 2 * count);
  for (std::uint32_t e = 0; e < ne; ++e) {
    for (StateIndex b = 0; b < count; ++b) {
      const StateIndex s = q.rep[b];
      cols[(static_cast<std::size_t>(e) * count + b) * 2] = block[g.next(s, e)];
      cols[(static_cast<std::size_t>(e) * count + b) * 2 + 1] = g.dom(s, e);
    }
  }
  q.event_class = NumberRows(cols, 2 * static_cast<std::size_t>(count), ne,
                             &q.num_event_classes);
  q.event_rep.assign(q.num_event_classes, 0);
  for (std::uint32_t e = ne; e-- > 0;) q.event_rep[q.event_class[e]] = e;

  const std::uint32_t E = q.num_event_classes;
  q.next.resize(static_cast<std::size_t>(count) * E);
  q.dom.resize(static_cast<std::size_t>(count) * E);
  for (StateIndex b = 0; b < count; ++b) {
    for (std::uint32_t c = 0; c < E; ++c) {
      const std::uint32_t e = q.event_rep[c];
      q.next[static_cast<std::size_t>(b) * E + c] = block[g.next(q.rep[b], e)];
      q.dom[static_cast<std::size_t>(b) * E + c] = g.dom(q.rep[b], e);
    }
  }
  q.cls.resize(nd);
  q.ncls.resize(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    if (!labels.contains(static_cast<DomainId>(d))) continue;
    q.cls[d].resize(count);
    for (StateIndex b = 0; b < count; ++b) {
      q.cls[d][b] = g.view_class(static_cast<DomainId>(d), q.rep[b]);
    }
    q.ncls[d] = g.num_classes(static_cast<DomainId>(d));
  }
  return q;
}

}  // namespace core
}  // namespace sklab
