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

#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "stpa/analysis.hpp"
#include "stpa/syntax.hpp"

using namespace stpa;

namespace {

Term P(const std::string& s) { return ParseTerm(s); }
LinearSpec L(const std::string& s) { return LinearSpecFromTerm(P(s)); }
std::string Es(int t) { return "es(c,d;" + std::to_string(t) + ";(0,0,0))"; }

// Terminated runs end in an extra sink state with its own signature.
oracle::Lts ToOracle(const LtsGraph& g) {
  oracle::Lts o;
  int sink = static_cast<int>(g.size());
  o.out.resize(g.size() + 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& e : g.out[i]) {
      o.out[i].push_back({Print(e.label), e.target < 0 ? sink : e.target});
    }
    o.sig.push_back(g.deadline[i] ? g.deadline[i]->str() : "-");
  }
  o.sig.push_back("terminated");
  return o;
}

// A random linear specification over one channel with a few variables.
std::string RandomSpec(std::mt19937_64& rng, const char* prefix) {
  std::uniform_int_distribution<int> nvars(1, 3), nsum(1, 3), time(1, 3),
      kind(0, 5);
  int n = nvars(rng);
  std::ostringstream os;
  os << "rec " << prefix << "0 {";
  for (int v = 0; v < n; ++v) {
    os << " " << prefix << v << " = ";
    int k = nsum(rng);
    for (int s = 0; s < k; ++s) {
      if (s) os << " + ";
      int t = time(rng), which = kind(rng);
      if (which == 0) {
        os << Es(t);
      } else if (which == 1) {
        os << "dd(abs " << t << ")";
      } else {
        os << Es(t) << " . " << prefix << std::uniform_int_distribution<int>(0, n - 1)(rng);
      }
    }
    os << ";";
  }
  os << " }";
  return os.str();
}

}  // namespace

TEST_CASE("linearization examples") {
  ChannelSet c({"c"});
  auto e = linearize(c, 0, CommState(),
                     P("ps(c,d; abs 1;(0,0,0)) || pr(c,d; abs 0..3;(0,0,0))"), 10);
  CHECK(e.closed());
  CHECK(e.str() ==
        "rec X0 { X0 = es(c,d; 1; (0,0,0)) . X1; X1 = er(c,d; 1; (0,0,0)); }");
  CHECK(linearize(c, 0, CommState(), P("dd(abs 2)"), 10).str() ==
        "rec X0 { X0 = dd(abs 2); }");
  CHECK(linearize(c, 0, CommState(), P("pr(c,d; abs 0..5;(0,0,0))"), 10).str() ==
        "rec X0 { X0 = dd(abs 5); }");
}

TEST_CASE("linearization marks the frontier when cut short") {
  ChannelSet c({"c"});
  Term loop = P("rec X { X = ps(c,d; rel 1;(0,0,0)) . X; }");
  auto e = linearize(c, 0, CommState(), loop, 3);
  CHECK_FALSE(e.closed());
}

TEST_CASE("linear bisimulation examples") {
  auto x = L("rec X { X = " + Es(1) + " . X; }");
  CHECK(bisim_linear(x, x).bisimilar());
  auto y = L("rec Y { Y = " + Es(1) + " . Z; Z = " + Es(1) + " . Y; }");
  CHECK(bisim_linear(x, y).bisimilar());
  auto a = L("rec X { X = " + Es(1) + "; }");
  auto b = L("rec Y { Y = " + Es(2) + "; }");
  CHECK(bisim_linear(a, b).kind == BisimVerdict::Kind::kDistinguished);
}

TEST_CASE("linear bisimulation agrees with a naive fixpoint") {
  std::mt19937_64 rng(11);
  int same = 0;
  for (int i = 0; i < 400; ++i) {
    auto e1 = L(RandomSpec(rng, "X"));
    auto e2 = L(RandomSpec(rng, "Y"));
    bool got = bisim_linear(e1, e2).bisimilar();
    oracle::Lts g1 = ToOracle(LinearGraph(e1)), g2 = ToOracle(LinearGraph(e2));
    bool want = oracle::Bisimilar(g1, 0, g2, 0);
    REQUIRE_MESSAGE(got == want, e1.str() << " vs " << e2.str());
    same += got;
    // Each spec is bisimilar to itself.
    REQUIRE(bisim_linear(e1, e1).bisimilar());
  }
  CHECK(same > 0);
}

TEST_CASE("bisimulation game examples") {
  std::vector<Instant> at0{{0, CommState()}};
  auto v = bisim_definitional(P(Es(1)), P(Es(1)), at0, 5);
  CHECK(v.bisimilar());
  CHECK(v.up_to_depth);
  auto w = bisim_definitional(P(Es(1) + " + " + Es(2)), P(Es(1)), at0, 5);
  CHECK(w.kind == BisimVerdict::Kind::kDistinguished);
  Term r = P("rec X { X = " + Es(1) + " . X; }");
  CHECK(bisim_definitional(r, Seq(P(Es(1)), r), at0, 5).bisimilar());
}

TEST_CASE("relevant instants") {
  auto inst = relevant_instants(P(Es(1)), P(Es(2)));
  std::vector<std::string> times;
  for (const auto& [t, s] : inst) {
    times.push_back(t.str());
    CHECK(s.empty());
  }
  CHECK(times == std::vector<std::string>{"0", "1", "3/2", "2", "3"});
  auto none = relevant_instants(P("dd"), P("dd"));
  REQUIRE(none.size() == 1);
  CHECK(none[0].first == Scalar(0));
}

TEST_CASE("state graph of a small system") {
  Term t = P("L{c}@0:{}(ps(c,d; abs 1;(0,0,0)) || pr(c,d; abs 0..3;(0,0,0)))");
  LtsGraph g = SosGraph(t, 0, CommState(), 10);
  CHECK(g.size() == 2);
  ChannelSet c({"c"});
  auto e = linearize(c, 0, CommState(),
                     P("ps(c,d; abs 1;(0,0,0)) || pr(c,d; abs 0..3;(0,0,0))"), 10);
  std::string why;
  CHECK_MESSAGE(Isomorphic(g, LinearGraph(e), &why), why);
  CHECK_FALSE(Isomorphic(g, LinearGraph(L("rec X { X = " + Es(1) + "; }"))));
}

TEST_CASE("isomorphism backtracks across branches") {
  // Two successors with the same label; only the crossed pairing works,
  // and that is only visible one level further down.
  Action a = ParseTerm("er(c,e; 4; (0,0,0))").action();
  auto graph = [&](bool crossed) {
    LtsGraph g;
    g.root = 0;
    int wide = crossed ? 3 : 2, narrow = crossed ? 2 : 3;
    g.out = {{{a, 1}}, {{a, 2}, {a, 3}}, {}, {}, {{a, 6}}, {{a, 6}}, {}};
    g.out[wide] = {{a, 4}, {a, 5}};
    g.out[narrow] = {{a, 4}};
    g.deadline.assign(7, ExtScalar(Scalar(4)));
    g.truncated.assign(7, false);
    return g;
  };
  std::string why;
  CHECK(Isomorphic(graph(false), graph(true), &why));
  LtsGraph other = graph(true);
  other.out[3].push_back({a, 6});
  CHECK_FALSE(Isomorphic(graph(false), other));
}

TEST_CASE("interleavings that differ only in bracketing share a state") {
  Term p = ParseTerm(
      "L{c}@0:{}(pr(c,e; abs 3/2..9/2; (0,0,0)) || ps(c,e; abs 3/2; (2,0,0)) "
      "|| ps(c,e; abs 3/2; (2,0,0)))");
  LinearSpec e = linearize(p.channels(), 0, CommState(), p.child(0), 20);
  LtsGraph lin = LinearGraph(e);
  LtsGraph sos = SosGraph(p, 0, CommState(), 20);
  CHECK(lin.size() == 3);
  CHECK(Isomorphic(sos, lin));
}
