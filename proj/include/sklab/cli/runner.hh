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

#ifndef SKLAB_CLI_RUNNER_HH_
#define SKLAB_CLI_RUNNER_HH_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sklab/arinc/config.hh"
#include "sklab/covert/covert.hh"

namespace sklab {
namespace cli {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

enum class Suite { kValidate, kUnwinding, kProperties, kRefinement, kCovert };

inline constexpr Suite kAllSuites[] = {Suite::kValidate, Suite::kUnwinding,
                                       Suite::kProperties, Suite::kRefinement,
                                       Suite::kCovert};

const char* SuiteName(Suite s);
std::optional<Suite> ParseSuite(std::string_view s);

enum class Format { kText, kMachine };

struct RunManifest {
  std::vector<Suite> suites;  // executed in canonical order, duplicates ignored
  std::uint64_t seed = 0;     // micro-model battery
  int battery_models = 100;
  int trace_len = 3;          // trace inclusion bound
  int variant_len_l1 = 4;     // property bound of the first-level variants
  int variant_len_l2 = 1;
  std::optional<covert::VariantId> channel;  // covert: one variant only
  int workers = 1;
};

struct CheckOutcome {
  std::string name;
  bool passed = false;
};

struct RunResult {
  Json report;  // deterministic part only
  std::vector<CheckOutcome> checks;
  std::vector<std::pair<std::string, double>> timings;  // seconds

  bool passed() const;
  /// Name of the first failing check, empty when everything passed.
  std::string first_failure() const;
  int exit_code() const { return passed() ? 0 : 1; }
};

/**
 * Runs the selected suites on a finalized configuration. Bounds come from
 * conf.bounds. Exceptions from one section (budget overruns, missing
 * violations) are recorded as failing checks and do not stop the run.
 */
RunResult Run(const arinc::KernelConfig& conf, const RunManifest& manifest);

/// Machine format: the report as indented JSON, no timings.
std::string RenderMachine(const RunResult& r);
/// Human-readable summary with timings.
std::string RenderText(const RunResult& r);

struct ReplaySummary {
  int witnesses = 0;
  int reproduced = 0;
  std::vector<std::string> failures;  // locations that did not reproduce
  bool ok() const { return failures.empty(); }
};

/**
 * Parses a machine report, rebuilds the models from its embedded
 * configuration and re-executes every recorded witness and counterexample.
 */
ReplaySummary ReplayReport(const Json& report);

/// Worker count from SKLAB_WORKERS (default 1; invalid values give 1).
int WorkersFromEnv();

}  // namespace cli
}  // namespace sklab

#endif /* SKLAB_CLI_RUNNER_HH_ */
