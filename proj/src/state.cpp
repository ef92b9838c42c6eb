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

#include "stpa/state.hpp"

#include <algorithm>
#include <functional>

namespace stpa {
namespace {

template <typename T>
std::shared_ptr<const std::vector<T>> SortedUnique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return std::make_shared<const std::vector<T>>(std::move(v));
}

std::size_t HashRecords(const std::vector<SendRecord>& rs) {
  std::size_t h = 0xc0ffee;
  for (const auto& r : rs) h = HashCombine(h, r.hash());
  return h;
}

std::size_t HashNames(const std::vector<std::string>& ns) {
  std::size_t h = 0xbeef;
  for (const auto& n : ns) h = HashCombine(h, std::hash<std::string>()(n));
  return h;
}

}  // namespace

std::size_t SendRecord::hash() const {
  std::size_t h = std::hash<std::string>()(channel);
  h = HashCombine(h, std::hash<std::string>()(datum));
  h = HashCombine(h, time.hash());
  return HashCombine(h, point.hash());
}

CommState::CommState() : CommState(std::vector<SendRecord>{}) {}

CommState::CommState(std::vector<SendRecord> records)
    : records_(SortedUnique(std::move(records))),
      hash_(HashRecords(*records_)) {}

bool CommState::contains(const SendRecord& r) const {
  return std::binary_search(records_->begin(), records_->end(), r);
}

CommState CommState::With(const SendRecord& r) const {
  if (contains(r)) return *this;
  std::vector<SendRecord> next(*records_);
  next.insert(std::lower_bound(next.begin(), next.end(), r), r);
  CommState out;
  out.records_ = std::make_shared<const std::vector<SendRecord>>(std::move(next));
  out.hash_ = HashRecords(*out.records_);
  return out;
}

bool operator==(const CommState& a, const CommState& b) {
  if (a.records_ == b.records_) return true;
  return a.hash_ == b.hash_ && *a.records_ == *b.records_;
}

std::strong_ordering operator<=>(const CommState& a, const CommState& b) {
  if (a.records_ == b.records_) return std::strong_ordering::equal;
  return std::lexicographical_compare_three_way(
      a.records_->begin(), a.records_->end(), b.records_->begin(),
      b.records_->end());
}

ChannelSet::ChannelSet() : ChannelSet(std::vector<std::string>{}) {}

ChannelSet::ChannelSet(std::vector<std::string> names)
    : names_(SortedUnique(std::move(names))), hash_(HashNames(*names_)) {}

bool ChannelSet::contains(const std::string& c) const {
  return std::binary_search(names_->begin(), names_->end(), c);
}

bool operator==(const ChannelSet& a, const ChannelSet& b) {
  if (a.names_ == b.names_) return true;
  return a.hash_ == b.hash_ && *a.names_ == *b.names_;
}

std::strong_ordering operator<=>(const ChannelSet& a, const ChannelSet& b) {
  return std::lexicographical_compare_three_way(
      a.names_->begin(), a.names_->end(), b.names_->begin(), b.names_->end());
}

}  // namespace stpa
