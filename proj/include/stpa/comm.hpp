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

#ifndef STPA_COMM_HPP_
#define STPA_COMM_HPP_

#include <vector>

#include "stpa/meadow.hpp"
#include "stpa/state.hpp"
#include "stpa/terms.hpp"

namespace stpa {

// Transmission speed of data through space.  Must be positive.
struct SpeedConfig {
  Scalar v = Scalar(1);
  static SpeedConfig Make(const Scalar& v);
};

// Instants s in [t, hi] at which datum d on channel c can arrive at xi:
// s = s' + dist(xi, xi') / v for some record (c, d, s', xi') with s' <= hi.
// Sorted ascending, no duplicates.
std::vector<Scalar> rcpt(const CommState& sigma, const std::string& c,
                         const std::string& d, const Scalar& t,
                         const ExtScalar& hi, const Point& xi,
                         const SpeedConfig& cfg);

CommState record_send(const CommState& sigma, const std::string& c,
                      const std::string& d, const Scalar& t, const Point& xi);

// a is an actual action with bt(a) = t.
bool in_aact_at(const Action& a, const Scalar& t);

// The priority ordering alpha <_H alpha' on atomic terms: alpha' is an
// actual action in H and either alpha would idle past it, or both happen at
// the same instant and alpha is outside H.
bool priority_lt(const ActionPattern& h, const Term& alpha,
                 const Term& alpha_prime);
// The same ordering restricted to actual actions.
bool priority_lt(const ActionPattern& h, const Action& a, const Action& b);

}  // namespace stpa

#endif  // STPA_COMM_HPP_
