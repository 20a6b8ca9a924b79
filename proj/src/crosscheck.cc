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

#include "sklab/core/crosscheck.hh"

#include <stdexcept>

namespace sklab {
namespace core {

ConsistencyReport CrosscheckUnwinding(
    const std::vector<UnwindingVerdict>& unwinding,
    const std::vector<PropertyVerdict>& props) {
  ConsistencyReport r;
  for (const auto& v : unwinding) {
    if (v.condition == Condition::kSC) r.sc_holds = r.sc_holds && v.holds;
    if (v.condition == Condition::kLR) r.lr_holds = r.lr_holds && v.holds;
  }
  bool have_ni = false, have_nl = false;
  for (const auto& p : props) {
    if (p.property == PropertyId::kNoninfluence) {
      r.noninfluence_holds = p.holds;
      r.bound = p.bound;
      have_ni = true;
    } else if (p.property == PropertyId::kNonleakage) {
      r.nonleakage_holds = p.holds;
      have_nl = true;
    }
  }
  if (!have_ni || !have_nl) {
    throw std::invalid_argument("crosscheck needs noninfluence and nonleakage");
  }
  return r;
}

}  // namespace core
}  // namespace sklab
