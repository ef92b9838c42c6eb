/*
 * Copyright 2026 The stpa-rec Authors
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

// Plain-text configuration: one `key = value` per line, `#` starts a
// comment.  Later assignments win, so flag overrides are simply applied
// after the file.

#ifndef STPA_CONFIG_HPP_
#define STPA_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stpa/meadow.hpp"
#include "stpa/protocols.hpp"

namespace stpa {

class KeyValues {
 public:
  // Throws InvalidArgument on a malformed line.
  static KeyValues Parse(std::string_view text);
  // Throws InvalidArgument when the file cannot be read.
  static KeyValues Load(const std::string& path);

  void Set(const std::string& key, const std::string& value);
  // "key=value"; throws InvalidArgument without '='.
  void SetAssignment(std::string_view assignment);
  void Merge(const KeyValues& other);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> Get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  // Typed getters return `fallback` when the key is absent and throw
  // InvalidArgument when the value does not parse.
  Scalar GetScalar(const std::string& key, const Scalar& fallback) const;
  std::int64_t GetInt(const std::string& key, std::int64_t fallback) const;
  Point GetPoint(const std::string& key, const Point& fallback) const;
  std::vector<std::string> GetList(const std::string& key,
                                   std::vector<std::string> fallback) const;

 private:
  std::map<std::string, std::string> values_;
};

// The file named by STPA_CONFIG, or an empty set when it is unset.
KeyValues LoadEnvConfig();

struct CliConfig {
  Scalar speed = 1;
  int depth = 20;
  std::int64_t unfold_budget = 10000;
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;
  bool json = false;

  static CliConfig FromKeyValues(const KeyValues& kv);
};

// Keys: speed, timeout, retransmission_bound, depth, data (the input
// sequence; its distinct items form the data set unless `dataset` is given),
// geometry.{S,K,L,R} as "x,y,z", delays.{S,K,L,R,R_ack}.
struct ParSetup {
  ParParams params;
  std::vector<std::string> inputs;
};
ParSetup ParSetupFromKeyValues(const KeyValues& kv);

}  // namespace stpa

#endif  // STPA_CONFIG_HPP_
