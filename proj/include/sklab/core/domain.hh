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

#ifndef SKLAB_CORE_DOMAIN_HH_
#define SKLAB_CORE_DOMAIN_HH_

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sklab {
namespace core {

// Domains are addressed by a dense index. Index 0 is always the scheduler and
// index 1 the transmitter; partitions follow in configuration order.
using DomainId = std::uint8_t;

constexpr DomainId kScheduler = 0;
constexpr DomainId kTransmitter = 1;
constexpr std::size_t kMaxDomains = 32;

enum class DomainKind { kScheduler, kTransmitter, kPartition };

struct Domain {
  DomainKind kind = DomainKind::kPartition;
  int part_id = -1;
  std::string name;

  bool operator==(const Domain&) const = default;
};

inline std::vector<Domain> MakeDomains(const std::vector<std::string>& parts,
                                       const std::vector<int>& part_ids) {
  std::vector<Domain> result;
  result.push_back({DomainKind::kScheduler, -1, "S"});
  result.push_back({DomainKind::kTransmitter, -1, "T"});
  for (std::size_t i = 0; i < parts.size(); ++i) {
    result.push_back({DomainKind::kPartition, part_ids[i], parts[i]});
  }
  if (result.size() > kMaxDomains) {
    throw std::invalid_argument("too many domains");
  }
  return result;
}

// Small set of domains as a bitmask.
class DomainSet {
 public:
  constexpr DomainSet() = default;
  constexpr explicit DomainSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr DomainSet Of(DomainId d) { return DomainSet(1u << d); }

  constexpr bool contains(DomainId d) const { return (bits_ >> d) & 1u; }
  constexpr void insert(DomainId d) { bits_ |= 1u << d; }
  constexpr bool intersects(DomainSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint32_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }

  constexpr DomainSet operator|(DomainSet o) const {
    return DomainSet(bits_ | o.bits_);
  }
  constexpr DomainSet& operator|=(DomainSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr bool operator==(const DomainSet&) const = default;

  std::vector<DomainId> members() const {
    std::vector<DomainId> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<DomainId>(std::countr_zero(b)));
    }
    return out;
  }

 private:
  std::uint32_t bits_ = 0;
};

}  // namespace core
}  // namespace sklab

#endif /* SKLAB_CORE_DOMAIN_HH_ */
