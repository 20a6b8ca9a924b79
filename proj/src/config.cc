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

#include "sklab/arinc/config.hh"

#include <set>

#include "sklab/core/errors.hh"

namespace sklab {
namespace arinc {

int KernelConfig::PortIndex(const std::string& name) const {
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

KernelConfig Finalize(KernelConfig conf) {
  if (conf.partitions.empty()) {
    throw InvalidConfig("at least one partition is required", "partitions");
  }
  if (conf.partitions.size() > static_cast<std::size_t>(kMaxPartitions)) {
    throw InvalidConfig("too many partitions (max " +
                            std::to_string(kMaxPartitions) + ")",
                        "partitions");
  }
  std::set<int> ids;
  std::set<std::string> names;
  std::map<std::string, int> owner_of;
  std::vector<std::string> port_order;
  for (std::size_t p = 0; p < conf.partitions.size(); ++p) {
    const auto& part = conf.partitions[p];
    const std::string where = "partitions[" + std::to_string(p) + "]";
    if (!ids.insert(part.id).second) {
      throw InvalidConfig("duplicate partition id", where);
    }
    if (part.name.empty() || part.name == "S" || part.name == "T") {
      throw InvalidConfig("partition name must be nonempty and not S/T", where);
    }
    if (!names.insert(part.name).second) {
      throw InvalidConfig("duplicate partition name", where);
    }
    if (part.max_processes < 0 || part.max_processes > kMaxProcesses) {
      throw InvalidConfig("max_processes out of range (0.." +
                              std::to_string(kMaxProcesses) + ")",
                          where);
    }
    for (const auto& port : part.ports) {
      if (!owner_of.emplace(port, static_cast<int>(p)).second) {
        throw InvalidConfig("duplicate port name '" + port + "'", where);
      }
      port_order.push_back(port);
    }
  }
  if (port_order.size() > static_cast<std::size_t>(kMaxPorts)) {
    throw InvalidConfig("too many ports (max " + std::to_string(kMaxPorts) + ")",
                        "partitions");
  }

  conf.ports.clear();
  conf.port_name_to_id.clear();
  for (std::size_t i = 0; i < port_order.size(); ++i) {
    PortConf pc;
    pc.name = port_order[i];
    pc.owner = owner_of[pc.name];
    pc.channel = -1;
    pc.id = static_cast<std::uint8_t>(i + 1);
    conf.ports.push_back(pc);
    conf.port_name_to_id[pc.name] = pc.id;
  }

  std::set<std::string> channel_names;
  for (std::size_t c = 0; c < conf.channels.size(); ++c) {
    const auto& ch = conf.channels[c];
    const std::string where = "channels[" + std::to_string(c) + "]";
    if (ch.name.empty() || !channel_names.insert(ch.name).second) {
      throw InvalidConfig("channel names must be nonempty and unique", where);
    }
    const int src = conf.PortIndex(ch.source);
    const int dst = conf.PortIndex(ch.dest);
    if (src < 0 || dst < 0) {
      throw InvalidConfig("channel endpoint names an unconfigured port", where);
    }
    if (conf.ports[src].owner == conf.ports[dst].owner) {
      throw InvalidConfig(
          "channel endpoints must belong to distinct partitions", where);
    }
    if (ch.mode == ChannelMode::kQueuing &&
        (ch.capacity < 1 || ch.capacity > kMaxCapacity)) {
      throw InvalidConfig("queuing capacity out of range (1.." +
                              std::to_string(kMaxCapacity) + ")",
                          where);
    }
    for (int idx : {src, dst}) {
      if (conf.ports[idx].channel >= 0) {
        throw InvalidConfig("port '" + conf.ports[idx].name +
                                "' is an endpoint of more than one channel",
                            where);
      }
      conf.ports[idx].channel = static_cast<int>(c);
      conf.ports[idx].mode = ch.mode;
      conf.ports[idx].capacity =
          ch.mode == ChannelMode::kQueuing ? ch.capacity : 1;
    }
    conf.ports[src].dir = PortDir::kSource;
    conf.ports[dst].dir = PortDir::kDest;
  }
  for (const auto& pc : conf.ports) {
    if (pc.channel < 0) {
      throw InvalidConfig("port '" + pc.name + "' is not connected to a channel",
                          "partitions");
    }
  }

  if (conf.alphabet.empty()) {
    throw InvalidConfig("message alphabet must be nonempty", "alphabet");
  }
  std::set<int> letters;
  for (int a : conf.alphabet) {
    if (a < 0 || a > 255 || !letters.insert(a).second) {
      throw InvalidConfig("alphabet values must be unique and in 0..255",
                          "alphabet");
    }
  }
  if (conf.priority_lo < 0 || conf.priority_hi > 255 ||
      conf.priority_lo > conf.priority_hi) {
    throw InvalidConfig("priority range must satisfy 0 <= lo <= hi <= 255",
                        "priority_range");
  }
  if (conf.scheduler_policy != "any") {
    throw InvalidConfig("unknown scheduler policy", "scheduler_policy");
  }
  if (conf.bounds.max_seq_len < 0 || conf.bounds.state_budget == 0 ||
      conf.bounds.pair_budget == 0 || conf.bounds.work_budget == 0) {
    throw InvalidConfig("bounds must be positive", "bounds");
  }
  return conf;
}

KernelConfig BaselineConfig() {
  KernelConfig conf;
  conf.partitions = {{1, "P1", {"q_src", "s_src"}, 2},
                     {2, "P2", {"q_dst", "s_dst"}, 1}};
  conf.channels = {{ChannelMode::kQueuing, "chq", "q_src", "q_dst", 1},
                   {ChannelMode::kSampling, "chs", "s_src", "s_dst", 1}};
  conf.alphabet = {0, 1};
  conf.priority_lo = 0;
  conf.priority_hi = 1;
  return Finalize(conf);
}

}  // namespace arinc
}  // namespace sklab
