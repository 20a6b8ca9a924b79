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

#ifndef SKLAB_CORE_CROSSCHECK_HH_
#define SKLAB_CORE_CROSSCHECK_HH_

#include <vector>

#include "sklab/core/properties.hh"
#include "sklab/core/unwinding.hh"

namespace sklab {
namespace core {

/**
 * Agreement between the exact unwinding verdicts and bounded property
 * verdicts on one model.
 *
 * The unwinding theorem is checked both ways: SC and LR together must imply
 * noninfluence at the bound, and (for bounds of at least one, where any
 * single-step failure already yields a counterexample) a noninfluence
 * refutation must come with an SC or LR refutation. The companion claim
 * relating SC alone to nonleakage is reported per direction but is not part
 * of consistent(): a model that breaks LR while keeping SC can refute
 * nonleakage with a single event.
 */
struct ConsistencyReport {
  int bound = 0;
  bool sc_holds = true;
  bool lr_holds = true;
  bool noninfluence_holds = true;
  bool nonleakage_holds = true;

  bool unwinding_holds() const { return sc_holds && lr_holds; }
  /// SC and LR imply noninfluence.
  bool soundness() const { return !unwinding_holds() || noninfluence_holds; }
  /// Noninfluence implies SC and LR (vacuous at bound 0).
  bool completeness() const {
    return bound < 1 || !noninfluence_holds || unwinding_holds();
  }
  bool sc_implies_nonleakage() const { return !sc_holds || nonleakage_holds; }
  bool nonleakage_implies_sc() const {
    return bound < 1 || !nonleakage_holds || sc_holds;
  }
  bool consistent() const { return soundness() && completeness(); }
};

/// `unwinding` holds SC and LR verdicts; `props` one verdict per property.
ConsistencyReport CrosscheckUnwinding(
    const std::vector<UnwindingVerdict>& unwinding,
    const std::vector<PropertyVerdict>& props);

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_CROSSCHECK_HH_ */
