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

#include <algorithm>

#include "stpa/semantics.hpp"

namespace stpa {
namespace {

using Bound = IdleSet::Bound;
using Interval = IdleSet::Interval;

Bound Finite(const Scalar& v, bool closed) { return Bound{false, v, closed}; }

// Lower bounds: -inf first, then by value, closed before open.
bool LowerLess(const Bound& a, const Bound& b) {
  if (a.infinite != b.infinite) return a.infinite;
  if (a.infinite) return false;
  if (a.value != b.value) return a.value < b.value;
  return a.closed && !b.closed;
}

// Upper bounds: +inf last, then by value, open before closed.
bool UpperLess(const Bound& a, const Bound& b) {
  if (a.infinite != b.infinite) return b.infinite;
  if (a.infinite) return false;
  if (a.value != b.value) return a.value < b.value;
  return !a.closed && b.closed;
}

bool NonEmpty(const Interval& iv) {
  if (iv.lo.infinite || iv.hi.infinite) return true;
  if (iv.lo.value < iv.hi.value) return true;
  return iv.lo.value == iv.hi.value && iv.lo.closed && iv.hi.closed;
}

// Does an interval starting at `lo` overlap or touch one ending at `hi`?
bool Touches(const Bound& hi, const Bound& lo) {
  if (hi.infinite || lo.infinite) return true;
  if (lo.value < hi.value) return true;
  return lo.value == hi.value && (lo.closed || hi.closed);
}

bool Contains(const Interval& iv, const Scalar& s) {
  if (!iv.lo.infinite &&
      (s < iv.lo.value || (s == iv.lo.value && !iv.lo.closed)))
    return false;
  if (!iv.hi.infinite &&
      (s > iv.hi.value || (s == iv.hi.value && !iv.hi.closed)))
    return false;
  return true;
}

}  // namespace

IdleSet IdleSet::Make(std::vector<Interval> parts) {
  std::vector<Interval> in;
  for (auto& p : parts) {
    if (NonEmpty(p)) in.push_back(std::move(p));
  }
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) {
    return LowerLess(a.lo, b.lo);
  });
  IdleSet out;
  for (auto& iv : in) {
    if (!out.parts_.empty() && Touches(out.parts_.back().hi, iv.lo)) {
      if (UpperLess(out.parts_.back().hi, iv.hi)) out.parts_.back().hi = iv.hi;
    } else {
      out.parts_.push_back(std::move(iv));
    }
  }
  return out;
}

IdleSet IdleSet::Closed(const Scalar& lo, const ExtScalar& hi) {
  Interval iv{Finite(lo, true),
              hi.is_infinite() ? Bound{} : Finite(hi.value(), true)};
  return Make({iv});
}

IdleSet IdleSet::UpTo(const Scalar& hi) {
  return Make({Interval{Bound{}, Finite(hi, true)}});
}

bool IdleSet::contains(const Scalar& s) const {
  for (const auto& iv : parts_) {
    if (Contains(iv, s)) return true;
  }
  return false;
}

IdleSet IdleSet::Union(const IdleSet& o) const {
  if (o.empty()) return *this;
  if (empty()) return o;
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return Make(std::move(all));
}

IdleSet IdleSet::Intersect(const IdleSet& o) const {
  std::vector<Interval> out;
  for (const auto& a : parts_) {
    for (const auto& b : o.parts_) {
      Interval iv{LowerLess(a.lo, b.lo) ? b.lo : a.lo,
                  UpperLess(a.hi, b.hi) ? a.hi : b.hi};
      if (NonEmpty(iv)) out.push_back(iv);
    }
  }
  return Make(std::move(out));
}

IdleSet IdleSet::TruncateAbove(const Scalar& m) const {
  return Intersect(UpTo(m));
}

IdleSet IdleSet::After(const Scalar& t) const {
  return Intersect(Make({Interval{Finite(t, false), Bound{}}}));
}

std::optional<ExtScalar> IdleSet::Supremum() const {
  if (parts_.empty()) return std::nullopt;
  const Bound& hi = parts_.back().hi;
  if (hi.infinite) return ExtScalar::Infinity();
  return ExtScalar(hi.value);
}

std::string IdleSet::str() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (const auto& iv : parts_) {
    if (!out.empty()) out += " u ";
    out += iv.lo.infinite ? "(-inf" : (iv.lo.closed ? "[" : "(") + iv.lo.value.str();
    out += ", ";
    out += iv.hi.infinite ? "inf)" : iv.hi.value.str() + (iv.hi.closed ? "]" : ")");
  }
  return out;
}

}  // namespace stpa
