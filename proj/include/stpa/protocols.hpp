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

// The positive acknowledgement with retransmission protocol: a sender S, a
// receiver R and two lossy repeaters K (frames) and L (acknowledgements).
//
// Channel roles: ch1 input to S, ch2 output of R, ch3 S to K, ch4 K to R,
// ch5 L to S, ch6 R to L.  A frame carrying datum d and bit b is the datum
// named "d#b".

#ifndef STPA_PROTOCOLS_HPP_
#define STPA_PROTOCOLS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stpa/comm.hpp"
#include "stpa/semantics.hpp"
#include "stpa/terms.hpp"

namespace stpa {

struct ParParams {
  std::vector<std::string> data = {"d1", "d2"};
  Point xi_s{0, 0, 0};
  Point xi_k{1, 0, 0};
  Point xi_r{2, 0, 0};
  Point xi_l{1, 0, 0};
  Scalar t_s = 1;        // pack and deliver
  Scalar t_k = 1;
  Scalar t_l = 1;
  Scalar t_r = 1;        // unpack and deliver
  Scalar t_r_ack = 1;    // produce and deliver an acknowledgement
  Scalar timeout = 10;   // sender's retransmission time-out
  Scalar speed = 1;
  int retransmission_bound = 3;  // max consecutive errors per repeater
  int depth = 40;

  // Throws InvalidArgument.
  void Validate() const;
  SemanticsOptions semantics() const;
};

std::string Frame(const std::string& d, int bit);

// All actual receives on ch3..ch6.
ActionPattern ParPriorityPattern();

// nu_H(Lambda^0_{ch3..ch6, {}}(S || K || L || R)).
Term build_par(const ParParams& params);

// The same protocol closed by an environment: a driver that offers the
// inputs one by one on ch1 (the next one after each acknowledgement seen at
// the sender's point) and a sink consuming ch2.  All six channels are under
// the state operator.  With `max_progress`, H also covers receives on ch1.
Term build_closed_par(const ParParams& params,
                      const std::vector<std::string>& inputs,
                      bool max_progress = true);

// One complete protocol cycle: the sum compared against the time-out.
Scalar cycle_time(const ParParams& params);
bool cycle_condition(const ParParams& params);

struct DeliveryResult {
  enum class Verdict { kOk, kViolation, kInconclusive };
  Verdict verdict = Verdict::kOk;
  std::string reason;
  Trace trace;  // the violation, if any

  std::size_t states = 0;
  std::size_t maximal_states = 0;    // no fair transition left
  std::size_t truncated_states = 0;  // depth bound hit with work left
  std::size_t pruned_transitions = 0;  // unfair error branches
  bool receptions_timed_exactly = true;

  std::optional<Trace> retransmission_after_k_error;  // witness, if seen
  std::optional<Trace> sample_complete;  // some maximal trace, if any

  bool ok() const { return verdict == Verdict::kOk; }
};

std::string ToString(DeliveryResult::Verdict v);

// Breadth-first exploration of the closed system up to params.depth.
// Violations: a delivery that is not the next expected input, or a maximal
// trace that stops before every input was delivered.  States cut off by
// the depth bound are counted, not judged.  The verdict is inconclusive
// when the state limit is hit or no trace completes within the bound.
DeliveryResult check_delivery(const ParParams& params,
                              const std::vector<std::string>& inputs,
                              std::size_t max_states = 500000);

struct AnomalyResult {
  bool found = false;
  Trace trace;             // ends with the late step
  std::string skipped;     // the earlier reception that was passed over
  std::string taken;
  std::size_t states = 0;
  bool exhausted = false;  // whole bounded space explored without finding one
};

// Looks for a reachable state where a step is taken although a reception
// on ch3..ch6 was enabled at an earlier instant.
AnomalyResult find_priority_anomaly(const ParParams& params,
                                    const std::vector<std::string>& inputs,
                                    bool max_progress,
                                    std::size_t max_states = 200000);

// One seeded random run of the closed system.
Trace run_par(const ParParams& params, const std::vector<std::string>& inputs,
              std::uint64_t seed);

}  // namespace stpa

#endif  // STPA_PROTOCOLS_HPP_
