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

#include "doctest.h"
#include "stpa/errors.hpp"
#include "stpa/soundness.hpp"
#include "stpa/syntax.hpp"
#include "stpa/terms.hpp"

using namespace stpa;

namespace {

const Point kO{0, 0, 0};
Term Es(long long t) { return Act(Action::AESend("c", "d", t, kO)); }
Term P(const char* s) { return ParseTerm(s); }

}  // namespace

TEST_CASE("basic times of actions") {
  Action w = Action::APRecv("c", "d", 2, ExtScalar(5), kO);
  CHECK(lbt(w) == Scalar(2));
  CHECK(ubt(w) == ExtScalar(5));
  CHECK(bt(Action::AESend("c", "d", 3, kO)) == Scalar(3));
  CHECK(ubt(Action::APRecv("c", "d", 0, ExtScalar::Infinity(), kO)).is_infinite());
  CHECK_THROWS_AS(bt(w), InvalidArgument);
  CHECK(chan(Action::APSend("c1", "d", 1, kO)) == "c1");
  CHECK(chan(w.WithTime(0)) == "c");
  CHECK(chan(Action::AERecv("c3", "d", 5, kO)) == "c3");
}

TEST_CASE("constructors from text") {
  CHECK(P("es(c,d; 3; (0,0,0))") == Es(3));
  CHECK_THROWS_AS(P("pr(c,d; abs 5..2; (0,0,0))"), SyntaxError);
  Term inf = P("dd(abs inf)");
  REQUIRE(inf.is(TermKind::kADead));
  CHECK(inf.dead_time().is_infinite());
  CHECK_THROWS_AS(P("es(c,d; 1; (0,0,0)"), SyntaxError);
  CHECK_THROWS_AS(P("dd(rel -1)"), SyntaxError);
}

TEST_CASE("precedence: '+' weakest, '.' strongest") {
  Term t = P("es(c,d;1;(0,0,0)) . es(c,d;2;(0,0,0)) || es(c,d;3;(0,0,0)) + dd");
  REQUIRE(t.is(TermKind::kAlt));
  REQUIRE(t.lhs().is(TermKind::kPar));
  CHECK(t.lhs().lhs().is(TermKind::kSeq));
  Term u = P("es(c,d;1;(0,0,0)) |_ es(c,d;2;(0,0,0)) >> dd");
  REQUIRE(u.is(TermKind::kTimeout));  // left-nested
  CHECK(u.lhs().is(TermKind::kLeftMerge));
}

TEST_CASE("print then parse is the identity on random terms") {
  TermGen g(5);
  for (int i = 0; i < 500; ++i) {
    Term t = g.Any(3);
    CAPTURE(Print(t));
    REQUIRE(ParseTerm(Print(t)) == t);
  }
  for (int i = 0; i < 50; ++i) {
    Term t = g.RecTerm();
    REQUIRE(ParseTerm(Print(t)) == t);
  }
  for (const char* s :
       {"mp[recv(c)](er(c,d; 1; (0,0,0)))", "ap[send(e):{d,f} | recv(c)](dd, dd)",
        "L{c,e}@1/2:{(c,d,0,(1,0,0))}(dd(rel 2))",
        "rec X { X = es(c,d; 1; (0,0,0)) . X; }", "pr(c,d; rel 1..inf; (0,0,-3/2))"}) {
    CHECK(Print(P(s)) == s);
  }
}

TEST_CASE("atomic and linear terms") {
  CHECK(IsAtomic(Es(1)));
  CHECK(IsAtomic(Timeout(Es(1), ADead(3))));
  CHECK_FALSE(IsAtomic(Seq(Es(1), Es(2))));
  CHECK(IsLinear(Alt(Seq(Es(1), Var("X")), ADead(2))));
  CHECK_FALSE(IsLinear(Seq(Act(Action::APSend("c", "d", 1, kO)), Var("X"))));
  CHECK_FALSE(IsLinear(RDead(2)));
}

TEST_CASE("guardedness") {
  auto spec = [](RecSpec::Equations eq) { return RecSpec::Make(std::move(eq)); };
  CHECK(IsGuardedSpec(*spec({{"X", Seq(Es(1), Var("X"))}})) == Guardedness::kGuarded);
  CHECK(IsGuardedSpec(*spec({{"X", Var("X")}})) == Guardedness::kNotShownGuarded);
  CHECK(IsGuardedSpec(*spec({{"X", Var("Y")}, {"Y", Seq(Es(1), Var("X"))}}), 1) ==
        Guardedness::kGuarded);
}

TEST_CASE("summands modulo associativity, commutativity, idempotence") {
  CHECK(IsSummand(Es(1), Alt(Es(1), Es(2))));
  CHECK_FALSE(IsSummand(Alt(Es(2), Es(1)), Alt(Es(1), Alt(Es(2), Es(3)))));
  CHECK(IsSummand(Alt(Es(1), Es(2)), Alt(Es(2), Es(1))));
  CHECK_FALSE(IsSummand(Es(3), Alt(Es(1), Es(2))));
}

TEST_CASE("alternative canonical form") {
  CHECK(AltCanonical(Alt(Es(2), Es(1))) == Alt(Es(1), Es(2)));
  CHECK(AltCanonical(Alt(Es(1), Es(1))) == Es(1));
  CHECK(AltCanonical(Alt(Alt(Es(1), Es(2)), Es(3))) ==
        AltCanonical(Alt(Es(1), Alt(Es(2), Es(3)))));
}

TEST_CASE("free variables and closedness") {
  Term open = Seq(Es(1), Var("X"));
  CHECK(FreeVars(open) == std::set<std::string>{"X"});
  CHECK_FALSE(IsClosed(open));
  CHECK(IsClosed(P("rec X { X = es(c,d; 1; (0,0,0)) . X; }")));
  CHECK_THROWS_AS(RecSpec::Make({{"X", Var("Y")}}), InvalidArgument);
}

TEST_CASE("positions") {
  Term t = Alt(Es(1), Seq(Es(2), Es(3)));
  CHECK(SubtermAt(t, {1, 0}) == Es(2));
  CHECK(ReplaceAt(t, {1, 1}, Es(4)) == Alt(Es(1), Seq(Es(2), Es(4))));
}

TEST_CASE("state canonical form ignores how || is bracketed") {
  Term a = Par(Par(Es(1), Es(2)), Es(3));
  Term b = Par(Es(3), Par(Es(2), Es(1)));
  CHECK(StateCanonical(a) == StateCanonical(b));
  CHECK(StateCanonical(Alt(a, b)) == StateCanonical(b));
  // Sequencing is not commutative.
  CHECK(StateCanonical(Seq(Es(1), Es(2))) != StateCanonical(Seq(Es(2), Es(1))));
}
