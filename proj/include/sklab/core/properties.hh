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

#ifndef SKLAB_CORE_PROPERTIES_HH_
#define SKLAB_CORE_PROPERTIES_HH_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sklab/core/graph.hh"
#include "sklab/core/sources.hh"

namespace sklab {
namespace core {

enum class PropertyId : std::uint8_t {
  kNoninterference = 0,
  kWeakNoninterference,
  kNoninterferenceR,
  kWeakNoninterferenceR,
  kNonleakage,
  kWeakNoninfluence,
  kNoninfluence,
};

inline constexpr std::array<PropertyId, 7> kAllProperties = {
    PropertyId::kNoninterference,      PropertyId::kWeakNoninterference,
    PropertyId::kNoninterferenceR,     PropertyId::kWeakNoninterferenceR,
    PropertyId::kNonleakage,           PropertyId::kWeakNoninfluence,
    PropertyId::kNoninfluence,
};

/// Snake-case name, e.g. "weak_noninterference_r".
const char* PropertyName(PropertyId p);
std::optional<PropertyId> ParsePropertyName(std::string_view name);

/**
 * A falsifying instance. s and t are graph state indices reached by s_path
 * and t_path; for the single-state rows t == s. es2 is the second sequence of
 * the instance (the purged sequence for rows that compare against ipurge).
 */
struct Counterexample {
  DomainId d = 0;
  EventSeq es1;
  EventSeq es2;
  StateIndex s = 0;
  StateIndex t = 0;
  EventSeq s_path;
  EventSeq t_path;

  bool operator==(const Counterexample&) const = default;
};

struct PropertyVerdict {
  PropertyId property = PropertyId::kNoninterference;
  int bound = 0;
  bool holds = true;
  std::optional<Counterexample> counterexample;
};

enum class PropertyEngine { kAuto, kQuotient, kReference };

struct PropertyOptions {
  int max_len = 4;
  double work_budget = 1e7;  // cap on |events|^max_len
  std::size_t memory_budget = std::size_t{3} << 30;  // quotient engine tables
  double reference_budget = 2e9;  // cap on the brute-force pair work
  PropertyEngine engine = PropertyEngine::kAuto;
};

/**
 * Checks all seven properties with sequences of length <= max_len and
 * returns verdicts in kAllProperties order. Counterexamples are minimal in
 * the order (d, es1 shortlex, s, t, es2 shortlex).
 *
 * kAuto picks the quotient engine for deterministic graphs and the reference
 * engine otherwise. Throws BoundTooLarge when a budget is exceeded.
 */
std::vector<PropertyVerdict> CheckProperties(const TransitionGraph& g,
                                             const PropertyOptions& opts);

PropertyVerdict CheckProperty(const TransitionGraph& g, PropertyId p,
                              const PropertyOptions& opts);

/**
 * Re-evaluates the formula instance named by a counterexample from scratch:
 * replays both paths, checks every premise, and returns true iff the
 * conclusion fails.
 */
bool ReplayCounterexample(const TransitionGraph& g, PropertyId p,
                          const Counterexample& c);

struct ImplicationCheck {
  std::string rule;  // e.g. "noninfluence -> nonleakage"
  bool antecedent = false;
  bool consequent = false;
  bool contradiction() const { return antecedent && !consequent; }
};

struct ImplicationReport {
  std::vector<ImplicationCheck> checks;
  bool consistent() const;
};

/// Edges of the implication graph plus both directions of the two
/// decomposition equalities. Requires one verdict per property.
ImplicationReport CheckImplications(const std::vector<PropertyVerdict>& v);

namespace detail {
std::vector<PropertyVerdict> CheckReference(const TransitionGraph& g,
                                            const PropertyOptions& opts);
// Returns nullopt when ipurge is not idempotent on g (engine precondition).
std::optional<std::vector<PropertyVerdict>> CheckQuotient(
    const TransitionGraph& g, const PropertyOptions& opts);
}  // namespace detail

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_PROPERTIES_HH_ */
