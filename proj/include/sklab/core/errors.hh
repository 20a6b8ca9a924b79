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

#ifndef SKLAB_CORE_ERRORS_HH_
#define SKLAB_CORE_ERRORS_HH_

#include <stdexcept>
#include <string>

namespace sklab {

class StateBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PairBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public std::runtime_error {
 public:
  InvalidConfig(const std::string& constraint, const std::string& where)
      : std::runtime_error("invalid config: " + constraint + " (at " + where +
                           ")"),
        constraint_(constraint),
        where_(where) {}

  const std::string& constraint() const { return constraint_; }
  const std::string& where() const { return where_; }

 private:
  std::string constraint_;
  std::string where_;
};

class NoViolationFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sklab

#endif /* SKLAB_CORE_ERRORS_HH_ */
