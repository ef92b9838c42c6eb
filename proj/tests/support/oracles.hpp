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

// Reference implementations used to check the library from the outside.
// They share no code with it: rationals come from Boost.Multiprecision and
// the bisimulation check is a plain greatest-fixpoint over state pairs.

#ifndef STPA_TESTS_ORACLES_HPP_
#define STPA_TESTS_ORACLES_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "stpa/meadow.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

inline Q ToQ(const stpa::Scalar& s) { return Q(s.str()); }

inline std::string Str(const Q& q) {
  Z n = boost::multiprecision::numerator(q);
  Z d = boost::multiprecision::denominator(q);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

inline bool Same(const stpa::Scalar& s, const Q& q) { return s.str() == Str(q); }

inline Q Inv(const Q& q) { return q == 0 ? Q(0) : Q(1) / q; }
inline int Sign(const Q& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Exact square root of a non-negative integer, if there is one.
inline std::optional<Z> IntSqrt(const Z& n) {
  if (n < 0) return std::nullopt;
  Z r = boost::multiprecision::sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

// sqrt(u) with sqrt(-u) = -sqrt(u); nullopt when irrational.
inline std::optional<Q> Sqrt(const Q& u) {
  Q a = u < 0 ? Q(-u) : u;
  auto n = IntSqrt(boost::multiprecision::numerator(a));
  auto d = IntSqrt(boost::multiprecision::denominator(a));
  if (!n || !d) return std::nullopt;
  Q r(*n, *d);
  return u < 0 ? Q(-r) : r;
}

struct P3 {
  Q x, y, z;
};

inline std::optional<Q> Dist(const P3& a, const P3& b) {
  Q dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return Sqrt(dx * dx + dy * dy + dz * dz);
}

struct Record {
  std::string c, d;
  Q time;
  P3 at;
};

// Arrival instants in [lo, hi] (hi absent: unbounded) at point xi.
inline std::vector<Q> Arrivals(const std::vector<Record>& sigma,
                               const std::string& c, const std::string& d,
                               const Q& lo, const std::optional<Q>& hi,
                               const P3& xi, const Q& v) {
  std::set<Q> out;
  for (const auto& r : sigma) {
    if (r.c != c || r.d != d) continue;
    if (hi && r.time > *hi) continue;
    auto dd = Dist(r.at, xi);
    if (!dd) continue;
    Q s = r.time + *dd / v;
    if (s >= lo && (!hi || s <= *hi)) out.insert(s);
  }
  return {out.begin(), out.end()};
}

// Explicit labelled transition system.  `sig` stands for whatever a state
// must agree on besides its transitions (termination, deadline, ...).
struct Lts {
  std::vector<std::vector<std::pair<std::string, int>>> out;
  std::vector<std::string> sig;
};

// Strong bisimilarity of the roots of two systems by repeatedly discarding
// pairs that violate the transfer property.
inline bool Bisimilar(const Lts& a, int ra, const Lts& b, int rb) {
  std::set<std::pair<int, int>> rel;
  for (int i = 0; i < static_cast<int>(a.out.size()); ++i) {
    for (int j = 0; j < static_cast<int>(b.out.size()); ++j) {
      if (a.sig[i] == b.sig[j]) rel.insert({i, j});
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = rel.begin(); it != rel.end();) {
      auto [i, j] = *it;
      auto covers = [&](const auto& from, const auto& to, bool left) {
        for (const auto& [l, x] : from) {
          bool ok = false;
          for (const auto& [m, y] : to) {
            if (l == m && rel.count(left ? std::make_pair(x, y)
                                         : std::make_pair(y, x))) {
              ok = true;
              break;
            }
          }
          if (!ok) return false;
        }
        return true;
      };
      if (!covers(a.out[i], b.out[j], true) || !covers(b.out[j], a.out[i], false)) {
        it = rel.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return rel.count({ra, rb}) > 0;
}

}  // namespace oracle

#endif  // STPA_TESTS_ORACLES_HPP_
