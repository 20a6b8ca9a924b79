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

#ifndef SKLAB_CLI_CONFIG_IO_HH_
#define SKLAB_CLI_CONFIG_IO_HH_

#include <string>

#include "sklab/arinc/config.hh"

namespace sklab {
namespace cli {

inline constexpr int kConfigSchema = 1;

/**
 * Parses a configuration document (JSON syntax, schema 1):
 *
 *   { "schema": 1,
 *     "partitions": [{"id", "name", "ports": [...], "max_processes"}],
 *     "channels": [{"name", "mode": "queuing"|"sampling", "source", "dest",
 *                   "capacity"}],
 *     "alphabet": [...], "priorities": {"lo", "hi"},
 *     "scheduler_policy": "any",
 *     "bounds": {"max_seq_len", "state_budget", "pair_budget", "work_budget"} }
 *
 * Only "partitions" and "channels" are required. Throws ParseError on
 * malformed text and InvalidConfig (constraint and JSON location) otherwise.
 */
arinc::KernelConfig ParseConfig(const std::string& text);

/// Reads and parses a file; an unreadable file is a ParseError.
arinc::KernelConfig LoadConfig(const std::string& path);

/// Canonical document for a configuration; ParseConfig(DumpConfig(c)) == c.
std::string DumpConfig(const arinc::KernelConfig& conf);

}  // namespace cli
}  // namespace sklab

#endif /* SKLAB_CLI_CONFIG_IO_HH_ */
