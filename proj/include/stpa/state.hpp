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

// Value types shared by terms and the communication machinery: the record
// of past sends carried by a state operator, and channel sets.

#ifndef STPA_STATE_HPP_
#define STPA_STATE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "stpa/meadow.hpp"

namespace stpa {

struct SendRecord {
  std::string channel;
  std::string datum;
  Scalar time;
  Point point;

  std::size_t hash() const;
  friend bool operator==(const SendRecord&, const SendRecord&) = default;
  friend auto operator<=>(const SendRecord&, const SendRecord&) = default;
};

// Immutable sorted set of send records.  Copies share storage.
class CommState {
 public:
  CommState();
  explicit CommState(std::vector<SendRecord> records);

  const std::vector<SendRecord>& records() const { return *records_; }
  bool empty() const { return records_->empty(); }
  std::size_t size() const { return records_->size(); }
  bool contains(const SendRecord& r) const;
  CommState With(const SendRecord& r) const;
  std::size_t hash() const { return hash_; }

  friend bool operator==(const CommState& a, const CommState& b);
  friend std::strong_ordering operator<=>(const CommState& a,
                                          const CommState& b);

 private:
  std::shared_ptr<const std::vector<SendRecord>> records_;
  std::size_t hash_;
};

// Immutable sorted set of channel names.
class ChannelSet {
 public:
  ChannelSet();
  explicit ChannelSet(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return *names_; }
  bool contains(const std::string& c) const;
  bool empty() const { return names_->empty(); }
  std::size_t hash() const { return hash_; }

  friend bool operator==(const ChannelSet& a, const ChannelSet& b);
  friend std::strong_ordering operator<=>(const ChannelSet& a,
                                          const ChannelSet& b);

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
  std::size_t hash_;
};

}  // namespace stpa

#endif  // STPA_STATE_HPP_
