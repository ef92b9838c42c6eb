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

// Communication helpers and the transition rules.

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stpa/comm.hpp"
#include "stpa/errors.hpp"
#include "stpa/semantics.hpp"
#include "stpa/syntax.hpp"

using namespace stpa;

namespace {

const Point kO{0, 0, 0};
Term P(const char* s) { return ParseTerm(s); }
Action Es(long long t) { return Action::AESend("c", "d", t, kO); }
Action Er(long long t) { return Action::AERecv("c", "d", t, kO); }

ActionPattern RecvOnC() { return ParsePattern("recv(c)"); }

}  // namespace

TEST_CASE("reception times") {
  SpeedConfig v2 = SpeedConfig::Make(2);
  CommState none;
  CHECK(rcpt(none, "c", "d", 0, ExtScalar(10), kO, v2).empty());
  CommState one = record_send(none, "c", "d", 1, kO);
  Point far{6, 0, 0};
  CHECK(rcpt(one, "c", "d", 0, ExtScalar(10), far, v2) == std::vector<Scalar>{4});
  CHECK(rcpt(one, "c", "d", 5, ExtScalar(10), far, v2).empty());
  CHECK(rcpt(one, "c", "e", 0, ExtScalar(10), far, v2).empty());
}

TEST_CASE("reception times agree with a brute-force oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> small(0, 8), pick(0, 1);
  for (int round = 0; round < 300; ++round) {
    CommState sigma;
    std::vector<oracle::Record> ref;
    int n = small(rng) % 4;
    for (int i = 0; i < n; ++i) {
      std::string d = pick(rng) ? "d" : "f";
      long long t = small(rng), x = small(rng);
      sigma = record_send(sigma, "c", d, Scalar(t, 2), Point{x, 0, 0});
      ref.push_back({"c", d, oracle::Q(t) / 2, {x, 0, 0}});
    }
    long long lo = small(rng), hi = lo + small(rng), at = small(rng);
    Scalar v(1 + pick(rng), 1);
    auto got = rcpt(sigma, "c", "d", lo, ExtScalar(hi), Point{at, 0, 0},
                    SpeedConfig::Make(v));
    auto want = oracle::Arrivals(ref, "c", "d", lo, oracle::Q(hi),
                                 {at, 0, 0}, oracle::ToQ(v));
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      REQUIRE(oracle::Same(got[i], want[i]));
    }
  }
}

TEST_CASE("communication state is a set") {
  CommState s = record_send(CommState(), "c", "d", 1, kO);
  CHECK(s.size() == 1);
  CHECK(record_send(s, "c", "d", 1, kO) == s);
  CHECK(record_send(s, "c", "d", 2, kO).size() == 2);
}

TEST_CASE("actual actions at an instant") {
  CHECK(in_aact_at(Es(3), 3));
  CHECK_FALSE(in_aact_at(Es(3), 2));
  CHECK_FALSE(in_aact_at(Action::APSend("c", "d", 3, kO), 3));
}

TEST_CASE("priority ordering") {
  ActionPattern h = RecvOnC();
  CHECK(priority_lt(h, Es(1), Er(1)));
  CHECK(priority_lt(h, Er(2), Er(1)));
  CHECK_FALSE(priority_lt(h, Er(1), Er(1)));
  CHECK_FALSE(priority_lt(h, Er(1), Es(0)));
}

TEST_CASE("action constants") {
  auto s = step_set(Act(Es(3)), 1, CommState());
  REQUIRE(s.size() == 1);
  CHECK(s[0].label == Es(3));
  CHECK(s[0].terminates());
  CHECK(step_set(Act(Es(3)), 5, CommState()).empty());

  CommState sigma = record_send(CommState(), "c", "d", 1, kO);
  auto r = step_set(P("pr(c,d; abs 0..10; (0,0,0))"), 0, sigma);
  REQUIRE(r.size() == 1);
  CHECK(r[0].label == Er(1));
}

TEST_CASE("state operator actualizes and records sends") {
  Term t = P("L{c}@0:{}(ps(c,d; abs 2; (0,0,0)) || pr(c,d; abs 0..5; (0,0,0)))");
  auto s = step_set(t, 0, CommState());
  REQUIRE(s.size() == 1);
  CHECK(s[0].label == Es(2));
  REQUIRE(s[0].next.has_value());
  CHECK(*s[0].next == P("L{c}@2:{(c,d,2,(0,0,0))}(pr(c,d; abs 0..5; (0,0,0)))"));
  // A state operator only acts at its own ambient instant.
  CHECK(step_set(t, 1, CommState()).empty());
}

TEST_CASE("idle sets") {
  CHECK(idle_set(ADead(5), 2, CommState()) == IdleSet::Closed(2, 5));
  CHECK(idle_set(RDead(3), 2, CommState()) == IdleSet::Closed(2, 5));
  CommState sigma = record_send(CommState(), "c", "d", 1, kO);
  CHECK(idle_set(P("pr(c,d; abs 0..10; (0,0,0))"), 0, sigma) == IdleSet::UpTo(1));
  CHECK(idle_set(Deadlock(), 0, CommState()).empty());
  // Parallel composition idles only while both sides can.
  CHECK(idle_set(Par(ADead(5), ADead(3)), 0, CommState()) == IdleSet::Closed(0, 3));
}

TEST_CASE("parallel composition requires the partner to idle") {
  Term t = Par(Act(Es(4)), ADead(3));
  CHECK(step_set(t, 0, CommState()).empty());
  Term u = Par(Act(Es(2)), ADead(3));
  CHECK(step_set(u, 0, CommState()).size() == 1);
}

TEST_CASE("maximal progress filters transitions") {
  Term t = MaxProg(RecvOnC(), AltOf({Act(Er(1)), Act(Er(2)), Act(Es(1))}));
  auto s = step_set(t, 0, CommState());
  REQUIRE(s.size() == 1);
  CHECK(s[0].label == Er(1));
  CHECK(idle_set(t, 0, CommState()) == IdleSet::Closed(0, 1));
  Term none = MaxProg(ParsePattern("recv(e)"), Act(Es(1)));
  CHECK(step_set(none, 0, CommState()).size() == 1);
}

TEST_CASE("recursion unfolds once per step, with a budget") {
  Term x = P("rec X { X = es(c,d; 1; (0,0,0)) . X; }");
  auto s = step_set(x, 0, CommState());
  REQUIRE(s.size() == 1);
  CHECK(*s[0].next == x);
  Term loop = P("rec X { X = X; }");
  SemanticsOptions o;
  o.unfold_budget = 50;
  CHECK_THROWS_AS(step_set(loop, 0, CommState(), o), BudgetExceeded);
}

TEST_CASE("runs") {
  RunPolicy pol;
  pol.depth = 5;
  auto one = run(Seq(Act(Es(1)), Act(Es(2))), 0, CommState(), pol);
  REQUIRE(one.size() == 1);
  REQUIRE(one[0].steps.size() == 2);
  CHECK(one[0].steps[1].kind == "term");
  auto dead = run(Deadlock(), 0, CommState(), pol);
  REQUIRE(dead.size() == 1);
  CHECK(dead[0].steps.size() == 1);
  CHECK(dead[0].steps[0].kind == "deadlock");
  CHECK(run(Alt(Act(Es(1)), Act(Es(2))), 0, CommState(), pol).size() == 2);
  pol.kind = RunPolicy::Kind::kRandom;
  pol.seed = 9;
  auto a = run(Alt(Act(Es(1)), Act(Es(2))), 0, CommState(), pol);
  auto b = run(Alt(Act(Es(1)), Act(Es(2))), 0, CommState(), pol);
  CHECK(TraceToJsonLines(a[0]) == TraceToJsonLines(b[0]));
}

TEST_CASE("idle set algebra") {
  IdleSet a = IdleSet::Closed(0, 3), b = IdleSet::Closed(2, 5);
  CHECK(a.Intersect(b) == IdleSet::Closed(2, 3));
  CHECK(a.Union(b) == IdleSet::Closed(0, 5));
  CHECK(a.TruncateAbove(1) == IdleSet::Closed(0, 1));
  CHECK(a.contains(3));
  CHECK_FALSE(a.After(3).contains(3));
  CHECK(*IdleSet::Closed(0, ExtScalar::Infinity()).Supremum() == ExtScalar::Infinity());
}
