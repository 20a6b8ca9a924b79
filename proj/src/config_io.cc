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

#include "sklab/cli/config_io.hh"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sklab/core/errors.hh"

namespace sklab {
namespace cli {

using Json = nlohmann::ordered_json;

namespace {

// Typed field access with the JSON location in every error.
class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw InvalidConfig("expected an object", where_);
  }

  void Keys(std::initializer_list<const char*> allowed) const {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j_.items()) {
      if (!ok.count(k)) throw InvalidConfig("unknown key '" + k + "'", where_);
    }
  }

  bool Has(const char* key) const { return j_.contains(key); }

  const Json& Get(const char* key) const {
    if (!Has(key)) throw InvalidConfig("missing key '" + std::string(key) + "'", where_);
    return j_.at(key);
  }

  std::string Path(const char* key) const { return where_ + "." + key; }

  long long Int(const char* key, long long lo, long long hi) const {
    return CheckInt(Get(key), Path(key), lo, hi);
  }

  std::string Str(const char* key) const {
    const Json& v = Get(key);
    if (!v.is_string()) throw InvalidConfig("expected a string", Path(key));
    return v.get<std::string>();
  }

  static long long CheckInt(const Json& v, const std::string& where,
                            long long lo, long long hi) {
    if (!v.is_number_integer()) throw InvalidConfig("expected an integer", where);
    if (v.is_number_unsigned() &&
        v.get<unsigned long long>() >
            static_cast<unsigned long long>(std::numeric_limits<long long>::max())) {
      throw InvalidConfig("integer out of range", where);
    }
    const long long x = v.get<long long>();
    if (x < lo || x > hi) {
      throw InvalidConfig("integer out of range (" + std::to_string(lo) + ".." +
                              std::to_string(hi) + ")",
                          where);
    }
    return x;
  }

  static const Json& Array(const Json& v, const std::string& where) {
    if (!v.is_array()) throw InvalidConfig("expected an array", where);
    return v;
  }

 private:
  const Json& j_;
  std::string where_;
};

constexpr long long kBig = std::numeric_limits<long long>::max();

}  // namespace

arinc::KernelConfig ParseConfig(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
  Reader top(doc, "$");
  top.Keys({"schema", "partitions", "channels", "alphabet", "priorities",
            "scheduler_policy", "bounds"});
  if (top.Has("schema") && top.Int("schema", 0, kBig) != kConfigSchema) {
    throw InvalidConfig("unsupported schema version", "$.schema");
  }

  arinc::KernelConfig conf;
  const Json& parts = Reader::Array(top.Get("partitions"), "$.partitions");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Reader r(parts[i], "$.partitions[" + std::to_string(i) + "]");
    r.Keys({"id", "name", "ports", "max_processes"});
    arinc::PartitionConf p;
    p.id = static_cast<int>(r.Int("id", 0, 255));
    p.name = r.Str("name");
    if (r.Has("ports")) {
      const Json& ports = Reader::Array(r.Get("ports"), r.Path("ports"));
      for (std::size_t k = 0; k < ports.size(); ++k) {
        if (!ports[k].is_string()) {
          throw InvalidConfig("expected a string",
                              r.Path("ports") + "[" + std::to_string(k) + "]");
        }
        p.ports.push_back(ports[k].get<std::string>());
      }
    }
    if (r.Has("max_processes")) {
      p.max_processes = static_cast<int>(r.Int("max_processes", 0, kBig));
    }
    conf.partitions.push_back(std::move(p));
  }

  const Json& chans = Reader::Array(top.Get("channels"), "$.channels");
  for (std::size_t i = 0; i < chans.size(); ++i) {
    Reader r(chans[i], "$.channels[" + std::to_string(i) + "]");
    r.Keys({"name", "mode", "source", "dest", "capacity"});
    arinc::ChannelConf c;
    c.name = r.Str("name");
    const std::string mode = r.Str("mode");
    if (mode == "queuing") {
      c.mode = arinc::ChannelMode::kQueuing;
    } else if (mode == "sampling") {
      c.mode = arinc::ChannelMode::kSampling;
    } else {
      throw InvalidConfig("mode must be \"queuing\" or \"sampling\"", r.Path("mode"));
    }
    c.source = r.Str("source");
    c.dest = r.Str("dest");
    if (r.Has("capacity")) {
      if (c.mode == arinc::ChannelMode::kSampling) {
        throw InvalidConfig("capacity applies to queuing channels only",
                            r.Path("capacity"));
      }
      c.capacity = static_cast<int>(r.Int("capacity", 0, kBig));
    }
    conf.channels.push_back(std::move(c));
  }

  if (top.Has("alphabet")) {
    const Json& a = Reader::Array(top.Get("alphabet"), "$.alphabet");
    conf.alphabet.clear();
    for (std::size_t k = 0; k < a.size(); ++k) {
      conf.alphabet.push_back(static_cast<int>(
          Reader::CheckInt(a[k], "$.alphabet[" + std::to_string(k) + "]", 0, 255)));
    }
  }
  if (top.Has("priorities")) {
    Reader r(top.Get("priorities"), "$.priorities");
    r.Keys({"lo", "hi"});
    conf.priority_lo = static_cast<int>(r.Int("lo", 0, 255));
    conf.priority_hi = static_cast<int>(r.Int("hi", 0, 255));
  }
  if (top.Has("scheduler_policy")) {
    conf.scheduler_policy = top.Str("scheduler_policy");
  }
  if (top.Has("bounds")) {
    Reader r(top.Get("bounds"), "$.bounds");
    r.Keys({"max_seq_len", "state_budget", "pair_budget", "work_budget"});
    auto& b = conf.bounds;
    if (r.Has("max_seq_len")) b.max_seq_len = static_cast<int>(r.Int("max_seq_len", 1, 64));
    if (r.Has("state_budget")) b.state_budget = r.Int("state_budget", 1, kBig);
    if (r.Has("pair_budget")) b.pair_budget = r.Int("pair_budget", 1, kBig);
    if (r.Has("work_budget")) b.work_budget = r.Int("work_budget", 1, kBig);
  }
  return arinc::Finalize(std::move(conf));
}

arinc::KernelConfig LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

std::string DumpConfig(const arinc::KernelConfig& conf) {
  Json j;
  j["schema"] = kConfigSchema;
  j["partitions"] = Json::array();
  for (const auto& p : conf.partitions) {
    j["partitions"].push_back({{"id", p.id},
                               {"name", p.name},
                               {"ports", p.ports},
                               {"max_processes", p.max_processes}});
  }
  j["channels"] = Json::array();
  for (const auto& c : conf.channels) {
    Json cj = {{"name", c.name},
               {"mode", c.mode == arinc::ChannelMode::kQueuing ? "queuing" : "sampling"},
               {"source", c.source},
               {"dest", c.dest}};
    if (c.mode == arinc::ChannelMode::kQueuing) cj["capacity"] = c.capacity;
    j["channels"].push_back(std::move(cj));
  }
  j["alphabet"] = conf.alphabet;
  j["priorities"] = {{"lo", conf.priority_lo}, {"hi", conf.priority_hi}};
  j["scheduler_policy"] = conf.scheduler_policy;
  j["bounds"] = {{"max_seq_len", conf.bounds.max_seq_len},
                 {"state_budget", conf.bounds.state_budget},
                 {"pair_budget", conf.bounds.pair_budget},
                 {"work_budget", conf.bounds.work_budget}};
  return j.dump(2) + "\n";
}

}  // namespace cli
}  // namespace sklab
