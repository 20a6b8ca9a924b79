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

// Command-line front end: loads a configuration, runs the selected suites and
// writes the report. Exit status 0 = every check passed, 1 = a check failed,
// 2 = usage, parse or configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sklab/cli/config_io.hh"
#include "sklab/cli/runner.hh"
#include "sklab/core/errors.hh"

namespace {

constexpr int kExitUsage = 2;

struct Options {
  std::string config;
  std::optional<std::size_t> state_budget;
  std::optional<std::size_t> pair_budget;
  std::optional<int> max_len;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";
  std::string channel;
  std::string report;  // replay input
};

int Emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "sklab: cannot write " << path << "\n";
    return kExitUsage;
  }
  return 0;
}

int Replay(const Options& o) {
  std::ifstream in(o.report, std::ios::binary);
  if (!in) throw sklab::ParseError("cannot read report '" + o.report + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  sklab::cli::Json report;
  try {
    report = sklab::cli::Json::parse(ss.str());
  } catch (const sklab::cli::Json::parse_error& e) {
    throw sklab::ParseError(std::string("malformed report: ") + e.what());
  }
  const auto r = sklab::cli::ReplayReport(report);
  std::cout << "replayed " << r.reproduced << "/" << r.witnesses << " witnesses\n";
  for (const auto& f : r.failures) std::cout << "  not reproduced: " << f << "\n";
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using sklab::cli::Suite;
  CLI::App app{"Security model checker for a partitioned separation kernel"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "Configuration file (default: built-in baseline)");
  app.add_option("--state-budget", o.state_budget, "Maximum reachable states")
      ->check(CLI::PositiveNumber);
  app.add_option("--pair-budget", o.pair_budget, "Pairwise check budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed of the micro-model battery");
  app.add_option("--out", o.out, "Report path (default: stdout)");
  app.add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "machine"}));

  std::vector<Suite> suites;
  auto* validate = app.add_subcommand("validate", "Check the model assumptions");
  auto* unwinding = app.add_subcommand("check-unwinding", "Check SC and LR for every event");
  auto* props = app.add_subcommand("check-properties", "Check the bounded properties");
  props->add_option("--max-len", o.max_len, "Sequence length bound")
      ->check(CLI::PositiveNumber);
  auto* refinement = app.add_subcommand("check-refinement", "Check the refinement obligations");
  auto* cov = app.add_subcommand("covert", "Search the insecure variants for violations");
  cov->add_option("--channel", o.channel, "Variant number or name (default: all)");
  auto* all = app.add_subcommand("all", "Run every suite");
  all->add_option("--max-len", o.max_len, "Sequence length bound")
      ->check(CLI::PositiveNumber);
  auto* replay = app.add_subcommand("replay", "Re-execute the witnesses of a machine report");
  replay->add_option("report", o.report, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (replay->parsed()) return Replay(o);

    if (validate->parsed()) suites = {Suite::kValidate};
    if (unwinding->parsed()) suites = {Suite::kUnwinding};
    if (props->parsed()) suites = {Suite::kProperties};
    if (refinement->parsed()) suites = {Suite::kRefinement};
    if (cov->parsed()) suites = {Suite::kCovert};
    if (all->parsed()) {
      suites.assign(std::begin(sklab::cli::kAllSuites), std::end(sklab::cli::kAllSuites));
    }

    sklab::arinc::KernelConfig conf = o.config.empty()
                                          ? sklab::arinc::BaselineConfig()
                                          : sklab::cli::LoadConfig(o.config);
    if (o.state_budget) conf.bounds.state_budget = *o.state_budget;
    if (o.pair_budget) conf.bounds.pair_budget = *o.pair_budget;
    if (o.max_len) conf.bounds.max_seq_len = *o.max_len;
    conf = sklab::arinc::Finalize(conf);

    sklab::cli::RunManifest man;
    man.suites = suites;
    man.seed = o.seed;
    man.workers = sklab::cli::WorkersFromEnv();
    if (!o.channel.empty()) {
      man.channel = sklab::covert::ParseVariant(o.channel);
      if (!man.channel) {
        std::cerr << "sklab: unknown channel '" << o.channel << "'\n";
        return kExitUsage;
      }
    }

    const auto result = sklab::cli::Run(conf, man);
    const std::string text = o.format == "machine" ? sklab::cli::RenderMachine(result)
                                                   : sklab::cli::RenderText(result);
    if (int rc = Emit(text, o.out); rc != 0) return rc;
    if (!result.passed()) {
      std::cerr << "sklab: check failed: " << result.first_failure() << "\n";
    }
    return result.exit_code();
  } catch (const sklab::ParseError& e) {
    std::cerr << "sklab: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sklab::InvalidConfig& e) {
    std::cerr << "sklab: " << e.what() << "\n";
    return kExitUsage;
  }
}
