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

#ifndef SKLAB_ARINC_CONFIG_HH_
#define SKLAB_ARINC_CONFIG_HH_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sklab {
namespace arinc {

// Fixed capacities of the packed state records. Configurations beyond these
// are rejected at load time.
constexpr int kMaxPartitions = 4;
constexpr int kMaxPorts = 8;
constexpr int kMaxCapacity = 4;
constexpr int kMaxProcesses = 3;

enum class ChannelMode : std::uint8_t { kQueuing, kSampling };
enum class PortDir : std::uint8_t { kSource, kDest };

struct PartitionConf {
  int id = 0;
  std::string name;
  std::vector<std::string> ports;
  int max_processes = 2;
};

struct ChannelConf {
  ChannelMode mode = ChannelMode::kQueuing;
  std::string name;
  std::string source;
  std::string dest;
  int capacity = 1;  // queuing only
};

struct Bounds {
  int max_seq_len = 4;
  std::size_t state_budget = 2'000'000;
  std::size_t pair_budget = 300'000'000;  // state pairs times domains
  std::uint64_t work_budget = 10'000'000;
};

// Derived per-port facts; ports are numbered in declaration order.
struct PortConf {
  std::string name;
  int owner = 0;    // partition index
  int channel = 0;  // channel index
  ChannelMode mode = ChannelMode::kQueuing;
  PortDir dir = PortDir::kSource;
  std::uint8_t id = 0;  // static identifier, 1-based
  int capacity = 1;
};

struct KernelConfig {
  std::vector<PartitionConf> partitions;
  std::vector<ChannelConf> channels;
  std::vector<int> alphabet{0, 1};
  int priority_lo = 0;
  int priority_hi = 1;
  std::string scheduler_policy = "any";
  Bounds bounds;

  // Filled by Finalize().
  std::vector<PortConf> ports;
  std::map<std::string, int> port_name_to_id;

  int PortIndex(const std::string& name) const;
  int channel_source(int c) const { return PortIndex(channels[c].source); }
  int channel_dest(int c) const { return PortIndex(channels[c].dest); }
};

/// Checks the configuration constraints and derives the port table.
/// Throws InvalidConfig naming the violated constraint.
KernelConfig Finalize(KernelConfig conf);

/// Two partitions; P1 sources one queuing (capacity 1) and one sampling
/// channel towards P2; alphabet {0,1}; P1 may hold two processes, P2 one.
KernelConfig BaselineConfig();

}  // namespace arinc
}  // namespace sklab

#endif /* SKLAB_ARINC_CONFIG_HH_ */
