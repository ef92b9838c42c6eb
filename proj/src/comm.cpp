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

#include "stpa/comm.hpp"

#include <algorithm>

#include "stpa/errors.hpp"

namespace stpa {

SpeedConfig SpeedConfig::Make(const Scalar& v) {
  if (v.sgn() <= 0) throw InvalidArgument("transmission speed must be positive");
  return SpeedConfig{v};
}

std::vector<Scalar> rcpt(const CommState& sigma, const std::string& c,
                         const std::string& d, const Scalar& t,
                         const ExtScalar& hi, const Point& xi,
                         const SpeedConfig& cfg) {
  std::vector<Scalar> out;
  for (const auto& r : sigma.records()) {
    if (r.channel != c || r.datum != d) continue;
    if (ExtScalar(r.time) > hi) continue;
    Scalar s = r.time + dist(xi, r.point) / cfg.v;
    if (s < t || ExtScalar(s) > hi) continue;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CommState record_send(const CommState& sigma, const std::string& c,
                      const std::string& d, const Scalar& t, const Point& xi) {
  return sigma.With(SendRecord{c, d, t, xi});
}

bool in_aact_at(const Action& a, const Scalar& t) {
  return a.is_actual() && a.time() == t;
}

bool priority_lt(const ActionPattern& h, const Action& a, const Action& b) {
  if (!a.is_actual() || !b.is_actual() || !h.Matches(b)) return false;
  if (b.time() < a.time()) return true;
  return a.time() == b.time() && !h.Matches(a);
}

bool priority_lt(const ActionPattern& h, const Term& alpha,
                 const Term& alpha_prime) {
  if (!alpha_prime.is(TermKind::kAct) || !alpha_prime.action().is_actual()) {
    return false;
  }
  const Action& b = alpha_prime.action();
  if (!h.Matches(b)) return false;
  if (alpha.is(TermKind::kAct) && alpha.action().is_actual()) {
    return priority_lt(h, alpha.action(), b);
  }
  // An absolute deadline idles longer than b when it lies strictly later.
  // An infinite deadline counts as lying later than every instant.
  if (alpha.is(TermKind::kADead)) {
    return ExtScalar(b.time()) < alpha.dead_time();
  }
  return false;
}

}  // namespace stpa
