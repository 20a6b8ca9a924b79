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

#include "sklab/core/refinement.hh"

namespace sklab {
namespace core {

namespace {

const UnwindingVerdict* Find(const std::vector<UnwindingVerdict>& vs,
                             std::uint32_t e, Condition c) {
  for (const auto& v : vs) {
    if (v.event == e && v.condition == c) return &v;
  }
  return nullptr;
}

bool Holds(const std::vector<UnwindingVerdict>& vs, std::uint32_t e,
           Condition c) {
  const auto* v = Find(vs, e, c);
  return v != nullptr && v->holds;
}

}  // namespace

std::vector<RouteAgreement> CompareRoutes(
    const std::vector<std::optional<std::uint32_t>>& theta,
    const std::vector<UnwindingVerdict>& abstract_verdicts,
    const std::vector<UnwindingVerdict>& delta_verdicts,
    const std::vector<UnwindingVerdict>& concrete_verdicts) {
  std::vector<RouteAgreement> out;
  for (std::uint32_t e = 0; e < theta.size(); ++e) {
    RouteAgreement r;
    r.event = e;
    const bool a_sc = !theta[e] || Holds(abstract_verdicts, *theta[e], Condition::kSC);
    const bool a_lr = !theta[e] || Holds(abstract_verdicts, *theta[e], Condition::kLR);
    r.route_sc = a_sc && Holds(delta_verdicts, e, Condition::kSCDelta);
    r.route_lr = a_lr && Holds(delta_verdicts, e, Condition::kLRDelta);
    r.direct_sc = Holds(concrete_verdicts, e, Condition::kSC);
    r.direct_lr = Holds(concrete_verdicts, e, Condition::kLR);
    out.push_back(r);
  }
  return out;
}

}  // namespace core
}  // namespace sklab
