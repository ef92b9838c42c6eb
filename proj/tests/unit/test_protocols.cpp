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

// Protocol construction and bounded checks on one datum, which keeps the
// state spaces small.  The two-datum runs live in the acceptance binary.

#include "doctest.h"
#include "stpa/errors.hpp"
#include "stpa/protocols.hpp"
#include "stpa/syntax.hpp"

using namespace stpa;

namespace {

int CountSends(const Trace& tr, const std::string& channel) {
  int n = 0;
  for (const auto& s : tr.steps) {
    if (s.action && s.action->is_send() && s.action->channel() == channel) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("cycle condition on the unit geometry") {
  ParParams p;
  CHECK(cycle_time(p) == Scalar(8));
  CHECK(cycle_condition(p));
  p.timeout = 8;
  CHECK_FALSE(cycle_condition(p));
  p.timeout = 7;
  CHECK_FALSE(cycle_condition(p));
  p.timeout = Scalar(17, 2);
  CHECK(cycle_condition(p));
}

TEST_CASE("parameter validation") {
  ParParams p;
  p.data.clear();
  CHECK_THROWS_AS(p.Validate(), InvalidArgument);
  ParParams q;
  q.speed = 0;
  CHECK_THROWS_AS(q.Validate(), InvalidArgument);
  ParParams r;
  r.xi_r = Point{2, 1, 0};  // distance to K is irrational
  CHECK_THROWS(cycle_time(r));
}

TEST_CASE("protocol term shape") {
  ParParams p;
  p.data = {"d"};
  Term t = build_par(p);
  REQUIRE(t.is(TermKind::kMaxProg));
  CHECK(t.pattern() == ParPriorityPattern());
  const Term& lam = t.child(0);
  REQUIRE(lam.is(TermKind::kStateOp));
  CHECK(lam.state_time() == Scalar(0));
  CHECK(lam.sigma().empty());
  CHECK(lam.channels() == ParseChannels("ch3,ch4,ch5,ch6"));
  REQUIRE(lam.child(0).is(TermKind::kPar));
  const Term& s = lam.child(0).lhs();
  REQUIRE(s.is(TermKind::kRecConst));
  const Term& s0 = s.spec()->body("S_0");
  // One datum: a single receive on ch1, not a choice.
  REQUIRE(s0.is(TermKind::kSeq));
  REQUIRE(s0.lhs().is(TermKind::kAct));
  CHECK(s0.lhs().action().channel() == "ch1");
  CHECK(s0.lhs().action().datum() == "d");

  p.data = {"d", "e"};
  Term two = build_par(p);
  CHECK(two.child(0).child(0).lhs().spec()->body("S_0").is(TermKind::kAlt));
}

TEST_CASE("one datum without repeater errors is delivered once") {
  ParParams p;
  p.data = {"d1"};
  p.retransmission_bound = 0;
  auto r = check_delivery(p, {"d1"});
  CHECK_MESSAGE(r.ok(), r.reason);
  CHECK(r.receptions_timed_exactly);
  REQUIRE(r.sample_complete.has_value());
  CHECK(CountSends(*r.sample_complete, "ch2") == 1);
  CHECK_FALSE(r.retransmission_after_k_error.has_value());
}

TEST_CASE("a lost frame is retransmitted after the time-out") {
  ParParams p;
  p.data = {"d1"};
  p.retransmission_bound = 1;
  auto r = check_delivery(p, {"d1"});
  CHECK_MESSAGE(r.ok(), r.reason);
  REQUIRE(r.retransmission_after_k_error.has_value());
  const Trace& w = *r.retransmission_after_k_error;
  // The sender's frame goes out twice on ch3.
  CHECK(CountSends(w, "ch3") >= 2);
  bool k_error = false;
  for (const auto& s : w.steps) {
    if (s.action && s.action->is_send() && s.action->channel() == "ch4" &&
        s.action->datum() == "err") {
      k_error = true;
    }
  }
  CHECK(k_error);
}

TEST_CASE("maximal progress removes the idling anomaly") {
  ParParams p;
  p.data = {"d1"};
  auto without = find_priority_anomaly(p, {"d1"}, false);
  CHECK(without.found);
  CHECK_FALSE(without.skipped.empty());
  auto with = find_priority_anomaly(p, {"d1"}, true);
  CHECK_FALSE(with.found);
  CHECK(with.exhausted);
}

TEST_CASE("random runs are reproducible") {
  ParParams p;
  p.data = {"d1"};
  p.depth = 60;
  Trace a = run_par(p, {"d1"}, 5), b = run_par(p, {"d1"}, 5);
  CHECK(TraceToJsonLines(a) == TraceToJsonLines(b));
}
