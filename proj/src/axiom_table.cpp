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

// Every schema is a function that inspects the root of a term, checks the
// side condition with exact arithmetic and builds the contractum.

#include <map>

#include "stpa/axioms.hpp"
#include "stpa/errors.hpp"
#include "stpa/syntax.hpp"

namespace stpa {
namespace {

using K = TermKind;
using AK = ActionKind;

class Binder {
 public:
  explicit Binder(Bindings* out) : out_(out) {}
  Binder& operator()(const char* name, const Term& t) {
    if (out_) out_->emplace_back(name, Print(t));
    return *this;
  }
  Binder& operator()(const char* name, const std::string& s) {
    if (out_) out_->emplace_back(name, s);
    return *this;
  }
  Binder& operator()(const char* name, const ExtScalar& s) {
    if (out_) out_->emplace_back(name, s.str());
    return *this;
  }
  Binder& operator()(const char* name, const Scalar& s) {
    if (out_) out_->emplace_back(name, s.str());
    return *this;
  }

 private:
  Bindings* out_;
};

using Result = std::optional<Term>;
using Fn = Result (*)(const Term&, const AxiomContext&, Binder&, bool);

struct Entry {
  AxiomInfo info;
  Fn fn;
  bool allow_inf;
};

// ---- small predicates -----------------------------------------------------

bool IsAct(const Term& t) { return t.is(K::kAct); }
bool IsAD(const Term& t, bool inf) {
  return t.is(K::kADead) && (inf || t.dead_time().is_finite());
}
bool IsRD(const Term& t, bool inf) {
  return t.is(K::kRDead) && (inf || t.dead_time().is_finite());
}
bool IsPR(const Action& a) { return a.is_potential_receive(); }
bool IsAT(const Action& a) { return a.is_absolute(); }
bool IsRT(const Action& a) { return a.is_relative(); }
// Membership in the atomic terms, optionally admitting infinite inaction.
bool Atomic(const Term& t, bool inf) {
  if (IsAtomic(t)) return true;
  if (!inf) return false;
  switch (t.kind()) {
    case K::kADead:
    case K::kRDead:
      return true;
    case K::kTimeout:
      return Atomic(t.lhs(), true);
    default:
      return false;
  }
}
bool ActKind(const Term& t, AK k) {
  return IsAct(t) && t.action().kind() == k;
}

// ---- first table ----------------------------------------------------------

Result A1(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAlt)) return {};
  b("x", p.lhs())("y", p.rhs());
  return Alt(p.rhs(), p.lhs());
}
Result A2(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAlt) || !p.lhs().is(K::kAlt)) return {};
  const Term& l = p.lhs();
  b("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Alt(l.lhs(), Alt(l.rhs(), p.rhs()));
}
Result A3(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAlt) || !(p.lhs() == p.rhs())) return {};
  b("x", p.lhs());
  return p.lhs();
}
Result A4(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kSeq) || !p.lhs().is(K::kAlt)) return {};
  const Term& l = p.lhs();
  b("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Alt(Seq(l.lhs(), p.rhs()), Seq(l.rhs(), p.rhs()));
}
Result A5(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kSeq) || !p.lhs().is(K::kSeq)) return {};
  const Term& l = p.lhs();
  b("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Seq(l.lhs(), Seq(l.rhs(), p.rhs()));
}
Result A6(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAlt) || !p.rhs().is(K::kDeadlock)) return {};
  b("x", p.lhs());
  return p.lhs();
}
Result A7(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kSeq) || !p.lhs().is(K::kDeadlock)) return {};
  b("x", p.rhs());
  return Deadlock();
}

Result M1(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kPar)) return {};
  b("x", p.lhs())("y", p.rhs());
  return Alt(LeftMerge(p.lhs(), p.rhs()), LeftMerge(p.rhs(), p.lhs()));
}
Result M2(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  if (!p.is(K::kLeftMerge) || !Atomic(p.lhs(), inf)) return {};
  b("alpha", p.lhs())("x", p.rhs());
  return Seq(Timeout(p.lhs(), p.rhs()), p.rhs());
}
Result M3(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  if (!p.is(K::kLeftMerge) || !p.lhs().is(K::kSeq) ||
      !Atomic(p.lhs().lhs(), inf))
    return {};
  const Term& alpha = p.lhs().lhs();
  const Term& x = p.lhs().rhs();
  const Term& y = p.rhs();
  b("alpha", alpha)("x", x)("y", y);
  return Seq(Timeout(alpha, y), Par(x, y));
}
Result M4(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kLeftMerge) || !p.lhs().is(K::kAlt)) return {};
  const Term& l = p.lhs();
  b("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Alt(LeftMerge(l.lhs(), p.rhs()), LeftMerge(l.rhs(), p.rhs()));
}

// Shared shapes for the two inaction families.
template <bool kAbs>
Result DeadAltKeepLeft(const Term& p, Binder& b, bool inf) {
  auto is = kAbs ? IsAD : IsRD;
  if (!p.is(K::kAlt) || !is(p.lhs(), inf) || !is(p.rhs(), inf)) return {};
  if (!(p.rhs().dead_time() < p.lhs().dead_time())) return {};
  b("t", p.lhs().dead_time())("t'", p.rhs().dead_time());
  return p.lhs();
}
template <bool kAbs>
Result DeadAltKeepRight(const Term& p, Binder& b, bool inf) {
  auto is = kAbs ? IsAD : IsRD;
  if (!p.is(K::kAlt) || !is(p.lhs(), inf) || !is(p.rhs(), inf)) return {};
  if (!(p.lhs().dead_time() <= p.rhs().dead_time())) return {};
  b("t", p.lhs().dead_time())("t'", p.rhs().dead_time());
  return p.rhs();
}
template <bool kAbs>
Result ActAbsorbDead(const Term& p, Binder& b, bool) {
  auto is = kAbs ? IsAD : IsRD;
  if (!p.is(K::kAlt) || !IsAct(p.lhs()) || !is(p.rhs(), false)) return {};
  const Action& a = p.lhs().action();
  if (IsPR(a) || (kAbs ? !IsAT(a) : !IsRT(a))) return {};
  if (!(ExtScalar(bt(a)) == p.rhs().dead_time())) return {};
  b("a", p.lhs())("t", p.rhs().dead_time());
  return p.lhs();
}
template <bool kAbs>
Result DeadSeq(const Term& p, Binder& b, bool inf) {
  auto is = kAbs ? IsAD : IsRD;
  if (!p.is(K::kSeq) || !is(p.lhs(), inf)) return {};
  b("t", p.lhs().dead_time())("x", p.rhs());
  return p.lhs();
}

Result AD1(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadAltKeepLeft<true>(p, b, inf);
}
Result AD2(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadAltKeepRight<true>(p, b, inf);
}
Result AD3(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return ActAbsorbDead<true>(p, b, inf);
}
Result AD4(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadSeq<true>(p, b, inf);
}
Result RD1(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadAltKeepLeft<false>(p, b, inf);
}
Result RD2(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadAltKeepRight<false>(p, b, inf);
}
Result RD3(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return ActAbsorbDead<false>(p, b, inf);
}
Result RD4(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadSeq<false>(p, b, inf);
}
Result RD5(const Term& p, const AxiomContext&, Binder&, bool) {
  if (!p.is(K::kDeadlock)) return {};
  return RDead(Scalar(0));
}

template <bool kAbs, bool kKeepLeftWhenLe>
Result DeadTimeout(const Term& p, Binder& b, bool inf) {
  auto is = kAbs ? IsAD : IsRD;
  if (!p.is(K::kTimeout) || !is(p.lhs(), inf) || !is(p.rhs(), inf)) return {};
  const ExtScalar& t = p.lhs().dead_time();
  const ExtScalar& u = p.rhs().dead_time();
  b("t", t)("t'", u);
  if (kKeepLeftWhenLe) {
    if (t <= u) return p.lhs();
  } else {
    if (u < t) return p.rhs();
  }
  return {};
}
Result TO1(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadTimeout<true, false>(p, b, inf);
}
Result TO2(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadTimeout<true, true>(p, b, inf);
}
Result TO3(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadTimeout<false, false>(p, b, inf);
}
Result TO4(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return DeadTimeout<false, true>(p, b, inf);
}
Result TO5(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kTimeout) || !IsAct(p.lhs()) || !IsAct(p.rhs())) return {};
  const Action& a = p.lhs().action();
  const Action& a2 = p.rhs().action();
  if (!(ubt(a) <= ExtScalar(lbt(a2)))) return {};
  b("a", p.lhs())("a'", p.rhs());
  return p.lhs();
}
template <bool kAbs>
Result TimeoutActToDead(const Term& p, Binder& b) {
  if (!p.is(K::kTimeout) || !IsAct(p.rhs())) return {};
  const Action& a = p.rhs().action();
  if (IsPR(a) || (kAbs ? !IsAT(a) : !IsRT(a))) return {};
  b("x", p.lhs())("a", p.rhs());
  Scalar t = bt(a);
  return Timeout(p.lhs(), kAbs ? ADead(t) : RDead(t));
}
Result TO6(const Term& p, const AxiomContext&, Binder& b, bool) {
  return TimeoutActToDead<true>(p, b);
}
Result TO7(const Term& p, const AxiomContext&, Binder& b, bool) {
  return TimeoutActToDead<false>(p, b);
}
Result TO8(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kTimeout) || !p.rhs().is(K::kAlt)) return {};
  const Term& x = p.lhs();
  const Term& r = p.rhs();
  b("x", x)("y", r.lhs())("z", r.rhs());
  return Alt(Timeout(x, r.lhs()), Timeout(x, r.rhs()));
}
Result TO9(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kTimeout) || !p.rhs().is(K::kSeq)) return {};
  b("x", p.lhs())("y", p.rhs().lhs())("z", p.rhs().rhs());
  return Timeout(p.lhs(), p.rhs().lhs());
}
Result TO10(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kTimeout) || !p.rhs().is(K::kTimeout)) return {};
  const Term& r = p.rhs();
  b("x", p.lhs())("y", r.lhs())("z", r.rhs());
  return Timeout(Timeout(p.lhs(), r.lhs()), r.rhs());
}
template <bool kAbs, bool kToDead>
Result ActTimeoutDead(const Term& p, Binder& b, bool inf) {
  auto is = kAbs ? IsAD : IsRD;
  if (!p.is(K::kTimeout) || !IsAct(p.lhs()) || !is(p.rhs(), inf)) return {};
  const Action& a = p.lhs().action();
  if (kAbs ? !IsAT(a) : !IsRT(a)) return {};
  const ExtScalar& t = p.rhs().dead_time();
  b("a", p.lhs())("t", t);
  if (kToDead) {
    if (t < ExtScalar(lbt(a))) return p.rhs();
  } else {
    if (ubt(a) <= t) return p.lhs();
  }
  return {};
}
Result TO11(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return ActTimeoutDead<true, true>(p, b, inf);
}
Result TO12(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return ActTimeoutDead<true, false>(p, b, inf);
}
Result TO13(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return ActTimeoutDead<false, true>(p, b, inf);
}
Result TO14(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  return ActTimeoutDead<false, false>(p, b, inf);
}
Result TO15(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kTimeout) || !p.lhs().is(K::kAlt)) return {};
  const Term& l = p.lhs();
  b("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Alt(Timeout(l.lhs(), p.rhs()), Timeout(l.rhs(), p.rhs()));
}
Result TO16(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kTimeout) || !p.lhs().is(K::kSeq)) return {};
  const Term& l = p.lhs();
  b("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Seq(Timeout(l.lhs(), p.rhs()), l.rhs());
}
Result TO17(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kTimeout) || !p.lhs().is(K::kTimeout)) return {};
  const Term& l = p.lhs();
  b("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Timeout(Timeout(l.lhs(), p.rhs()), l.rhs());
}
Result TO16r(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kSeq) || !p.lhs().is(K::kTimeout)) return {};
  const Term& l = p.lhs();
  b("x", l.lhs())("z", l.rhs())("y", p.rhs());
  return Timeout(Seq(l.lhs(), p.rhs()), l.rhs());
}

// ---- state operator table -------------------------------------------------

struct Lam {
  const ChannelSet* c;
  Scalar t;
  const CommState* sigma;
  const Term* body;
};

std::optional<Lam> AsLam(const Term& p, Binder& b) {
  if (!p.is(K::kStateOp)) return std::nullopt;
  b("C", Print(p.channels()))("t", p.state_time())("sigma", Print(p.sigma()));
  return Lam{&p.channels(), p.state_time(), &p.sigma(), &p.child(0)};
}

// The action heading the body (alone, or followed by x when `seq`), when it
// has kind k and a channel inside C.
const Action* Head(const Lam& l, AK k, bool seq, Binder& b) {
  const Term* h = l.body;
  if (seq) {
    if (!h->is(K::kSeq)) return nullptr;
    h = &h->lhs();
  }
  if (!ActKind(*h, k)) return nullptr;
  const Action& a = h->action();
  if (!l.c->contains(a.channel())) return nullptr;
  b("a", *h);
  if (seq) b("x", l.body->rhs());
  return &a;
}

Term LamOf(const Lam& l, const Scalar& t, const CommState& sigma,
           const Term& x) {
  return StateOp(*l.c, t, sigma, x);
}

Result S1(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  auto l = AsLam(p, b);
  if (!l || !IsAD(*l->body, inf)) return {};
  if (!(l->body->dead_time() < ExtScalar(l->t))) return {};
  b("t'", l->body->dead_time());
  return ADead(l->t);
}
Result S2(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  auto l = AsLam(p, b);
  if (!l || !IsAD(*l->body, inf)) return {};
  if (!(ExtScalar(l->t) <= l->body->dead_time())) return {};
  b("t'", l->body->dead_time());
  return *l->body;
}
Result S3(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  auto l = AsLam(p, b);
  if (!l || !IsRD(*l->body, inf)) return {};
  b("t'", l->body->dead_time());
  return ADead(l->t + l->body->dead_time());
}
Result S4(const Term& p, const AxiomContext&, Binder& b, bool) {
  auto l = AsLam(p, b);
  if (!l || !IsAct(*l->body) || l->c->contains(l->body->action().channel()))
    return {};
  b("a", *l->body);
  return *l->body;
}

// The absolute or relative send schemas, alone or prefixed.
Result ApsLate(const Term& p, Binder& b, bool seq) {
  auto l = AsLam(p, b);
  if (!l) return {};
  const Action* a = Head(*l, AK::kAPSend, seq, b);
  if (!a || !(a->time() < l->t)) return {};
  return ADead(l->t);
}
Result ApsOnTime(const Term& p, const AxiomContext&, Binder& b, bool seq) {
  auto l = AsLam(p, b);
  if (!l) return {};
  const Action* a = Head(*l, AK::kAPSend, seq, b);
  if (!a || !(l->t <= a->time())) return {};
  Term es = Act(Action::AESend(a->channel(), a->datum(), a->time(),
                               a->point()));
  if (!seq) return es;
  CommState s2 = record_send(*l->sigma, a->channel(), a->datum(), a->time(),
                             a->point());
  return Seq(es, LamOf(*l, a->time(), s2, l->body->rhs()));
}
Result Rps(const Term& p, Binder& b, bool seq) {
  auto l = AsLam(p, b);
  if (!l) return {};
  const Action* a = Head(*l, AK::kRPSend, seq, b);
  if (!a) return {};
  Scalar s = l->t + a->time();
  Term es = Act(Action::AESend(a->channel(), a->datum(), s, a->point()));
  if (!seq) return es;
  CommState s2 = record_send(*l->sigma, a->channel(), a->datum(), s,
                             a->point());
  return Seq(es, LamOf(*l, s, s2, l->body->rhs()));
}

// Arrival instants for a potential receive heading the body under l.
std::vector<Scalar> Arrivals(const Lam& l, const Action& a,
                             const AxiomContext& ctx) {
  if (a.kind() == AK::kAPRecv) {
    return rcpt(*l.sigma, a.channel(), a.datum(), max2(l.t, a.time()),
                a.upper(), a.point(), ctx.speed);
  }
  return rcpt(*l.sigma, a.channel(), a.datum(), l.t + a.time(),
              l.t + a.upper(), a.point(), ctx.speed);
}

Result AprExpired(const Term& p, Binder& b, bool seq) {
  auto l = AsLam(p, b);
  if (!l) return {};
  const Action* a = Head(*l, AK::kAPRecv, seq, b);
  if (!a || !(a->upper() <= ExtScalar(l->t))) return {};
  return ADead(l->t);
}
Result RecvNone(const Term& p, const AxiomContext& ctx, Binder& b, bool seq,
                AK k) {
  auto l = AsLam(p, b);
  if (!l) return {};
  const Action* a = Head(*l, k, seq, b);
  if (!a) return {};
  if (k == AK::kAPRecv && !(ExtScalar(l->t) < a->upper())) return {};
  if (!Arrivals(*l, *a, ctx).empty()) return {};
  return ADead(k == AK::kAPRecv ? a->upper() : l->t + a->upper());
}
Result RecvSome(const Term& p, const AxiomContext& ctx, Binder& b, bool seq,
                AK k) {
  auto l = AsLam(p, b);
  if (!l) return {};
  const Action* a = Head(*l, k, seq, b);
  if (!a) return {};
  if (k == AK::kAPRecv && !(ExtScalar(l->t) < a->upper())) return {};
  auto v = Arrivals(*l, *a, ctx);
  if (v.empty()) return {};
  const Scalar& s = v.front();
  b("t'''", s);
  Term er = Act(Action::AERecv(a->channel(), a->datum(), s, a->point()));
  if (!seq) return er;
  return Seq(er, LamOf(*l, s, *l->sigma, l->body->rhs()));
}
Result ActualLate(const Term& p, Binder& b, bool seq, AK k) {
  auto l = AsLam(p, b);
  if (!l) return {};
  const Action* a = Head(*l, k, seq, b);
  if (!a || !(a->time() < l->t)) return {};
  return ADead(l->t);
}
Result ActualOnTime(const Term& p, Binder& b, bool seq, AK k) {
  auto l = AsLam(p, b);
  if (!l) return {};
  const Action* a = Head(*l, k, seq, b);
  if (!a || !(l->t <= a->time())) return {};
  if (!seq) return *l->body;
  return Seq(l->body->lhs(), LamOf(*l, a->time(), *l->sigma, l->body->rhs()));
}

Result S5(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ApsLate(p, b, false);
}
Result S6(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return ApsOnTime(p, c, b, false);
}
Result S7(const Term& p, const AxiomContext&, Binder& b, bool) {
  return Rps(p, b, false);
}
Result S8(const Term& p, const AxiomContext&, Binder& b, bool) {
  return AprExpired(p, b, false);
}
Result S9(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return RecvNone(p, c, b, false, AK::kAPRecv);
}
Result S10(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return RecvSome(p, c, b, false, AK::kAPRecv);
}
Result S11(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return RecvNone(p, c, b, false, AK::kRPRecv);
}
Result S12(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return RecvSome(p, c, b, false, AK::kRPRecv);
}
Result S13(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ActualLate(p, b, false, AK::kAESend);
}
Result S14(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ActualOnTime(p, b, false, AK::kAESend);
}
Result S15(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ActualLate(p, b, false, AK::kAERecv);
}
Result S16(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ActualOnTime(p, b, false, AK::kAERecv);
}
Result S17(const Term& p, const AxiomContext&, Binder& b, bool) {
  auto l = AsLam(p, b);
  if (!l || !l->body->is(K::kSeq) || !IsAct(l->body->lhs())) return {};
  const Term& a = l->body->lhs();
  if (l->c->contains(a.action().channel())) return {};
  b("a", a)("x", l->body->rhs());
  return Seq(a, LamOf(*l, l->t, *l->sigma, l->body->rhs()));
}
Result S18(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ApsLate(p, b, true);
}
Result S19(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return ApsOnTime(p, c, b, true);
}
Result S20(const Term& p, const AxiomContext&, Binder& b, bool) {
  return Rps(p, b, true);
}
Result S21(const Term& p, const AxiomContext&, Binder& b, bool) {
  return AprExpired(p, b, true);
}
Result S22(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return RecvNone(p, c, b, true, AK::kAPRecv);
}
Result S23(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return RecvSome(p, c, b, true, AK::kAPRecv);
}
Result S24(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return RecvNone(p, c, b, true, AK::kRPRecv);
}
Result S25(const Term& p, const AxiomContext& c, Binder& b, bool) {
  return RecvSome(p, c, b, true, AK::kRPRecv);
}
Result S26(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ActualLate(p, b, true, AK::kAESend);
}
Result S27(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ActualOnTime(p, b, true, AK::kAESend);
}
Result S28(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ActualLate(p, b, true, AK::kAERecv);
}
Result S29(const Term& p, const AxiomContext&, Binder& b, bool) {
  return ActualOnTime(p, b, true, AK::kAERecv);
}
Result S30(const Term& p, const AxiomContext&, Binder& b, bool) {
  auto l = AsLam(p, b);
  if (!l || !l->body->is(K::kAlt)) return {};
  b("x", l->body->lhs())("y", l->body->rhs());
  return Alt(LamOf(*l, l->t, *l->sigma, l->body->lhs()),
             LamOf(*l, l->t, *l->sigma, l->body->rhs()));
}
Result S31(const Term& p, const AxiomContext&, Binder& b, bool) {
  auto l = AsLam(p, b);
  if (!l || !l->body->is(K::kTimeout)) return {};
  b("x", l->body->lhs())("y", l->body->rhs());
  return Timeout(LamOf(*l, l->t, *l->sigma, l->body->lhs()),
                 LamOf(*l, l->t, *l->sigma, l->body->rhs()));
}

// ---- maximal progress -----------------------------------------------------

Result MP1(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kMaxProg)) return {};
  b("H", Print(p.pattern()))("x", p.child(0));
  return AuxMaxProg(p.pattern(), p.child(0), p.child(0));
}
Result MP2(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  if (!p.is(K::kAuxMaxProg) || !Atomic(p.lhs(), inf) ||
      !Atomic(p.rhs(), inf))
    return {};
  if (priority_lt(p.pattern(), p.lhs(), p.rhs())) return {};
  b("H", Print(p.pattern()))("alpha", p.lhs())("alpha'", p.rhs());
  return p.lhs();
}
Result MP3(const Term& p, const AxiomContext&, Binder& b, bool inf) {
  if (!p.is(K::kAuxMaxProg) || !Atomic(p.lhs(), inf) || !IsAct(p.rhs()))
    return {};
  const Action& a = p.rhs().action();
  if (!a.is_actual() || !priority_lt(p.pattern(), p.lhs(), p.rhs())) return {};
  b("H", Print(p.pattern()))("alpha", p.lhs())("alpha'", p.rhs())(
      "t", a.time());
  return ADead(a.time());
}
Result MP4(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAuxMaxProg) || !p.lhs().is(K::kSeq)) return {};
  const Term& l = p.lhs();
  b("H", Print(p.pattern()))("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Seq(AuxMaxProg(p.pattern(), l.lhs(), p.rhs()),
             MaxProg(p.pattern(), l.rhs()));
}
Result MP5(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAuxMaxProg) || !p.lhs().is(K::kAlt)) return {};
  const Term& l = p.lhs();
  b("H", Print(p.pattern()))("x", l.lhs())("y", l.rhs())("z", p.rhs());
  return Alt(AuxMaxProg(p.pattern(), l.lhs(), p.rhs()),
             AuxMaxProg(p.pattern(), l.rhs(), p.rhs()));
}
Result MP6(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAuxMaxProg) || !p.rhs().is(K::kSeq)) return {};
  const Term& r = p.rhs();
  b("H", Print(p.pattern()))("x", p.lhs())("y", r.lhs())("z", r.rhs());
  return AuxMaxProg(p.pattern(), p.lhs(), r.lhs());
}
Result MP7(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAuxMaxProg) || !p.rhs().is(K::kAlt)) return {};
  const Term& r = p.rhs();
  b("H", Print(p.pattern()))("x", p.lhs())("y", r.lhs())("z", r.rhs());
  return AuxMaxProg(p.pattern(),
                    AuxMaxProg(p.pattern(), p.lhs(), r.lhs()), r.rhs());
}

// ---- recursion and derived rules ------------------------------------------

Result RDP(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kRecConst)) return {};
  b("X", p.name());
  return p.spec()->Unfold(p.name());
}

Result AC(const Term& p, const AxiomContext&, Binder&, bool) {
  if (!p.is(K::kAlt)) return {};
  Term q = AltCanonical(p);
  if (q == p) return {};
  return q;
}

// Latest instant up to which summand u can certainly idle, when u is an
// absolute inaction or is headed by an actual action.
std::optional<ExtScalar> Outlasts(const Term& u) {
  if (u.is(K::kADead)) return u.dead_time();
  const Term& h = u.is(K::kSeq) ? u.lhs() : u;
  if (IsAct(h) && h.action().is_actual()) return ExtScalar(h.action().time());
  return std::nullopt;
}

Result D1(const Term& p, const AxiomContext&, Binder& b, bool) {
  if (!p.is(K::kAlt)) return {};
  std::vector<Term> parts = Summands(p);
  std::vector<bool> drop(parts.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].is(K::kADead)) continue;
    const ExtScalar& t = parts[i].dead_time();
    for (std::size_t j = 0; j < parts.size() && !drop[i]; ++j) {
      if (j == i || drop[j]) continue;
      auto o = Outlasts(parts[j]);
      if (!o) continue;
      // Equal inaction summands: keep the first.
      if (parts[j].is(K::kADead) && *o == t && j > i) continue;
      if (t <= *o) drop[i] = true;
    }
    if (drop[i]) {
      b("t", t);
      any = true;
    }
  }
  if (!any) return {};
  std::vector<Term> keep;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!drop[i]) keep.push_back(parts[i]);
  }
  return AltOf(keep);
}

// ---- the registry ---------------------------------------------------------

const std::vector<Entry>& Table() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&](const char* id, const char* group, const char* eq, Fn fn,
                   bool derived = false, bool inf = false) {
      t.push_back(Entry{AxiomInfo{id, group, eq, derived}, fn, inf});
    };
    add("A1", "I", "x + y = y + x", A1);
    add("A2", "I", "(x + y) + z = x + (y + z)", A2);
    add("A3", "I", "x + x = x", A3);
    add("A4", "I", "(x + y) . z = x . z + y . z", A4);
    add("A5", "I", "(x . y) . z = x . (y . z)", A5);
    add("A6", "I", "x + dd = x", A6);
    add("A7", "I", "dd . x = dd", A7);
    add("M1", "I", "x || y = x |_ y + y |_ x", M1);
    add("M2", "I", "alpha |_ x = (alpha >> x) . x", M2);
    add("M3", "I", "alpha . x |_ y = (alpha >> y) . (x || y)", M3);
    add("M4", "I", "(x + y) |_ z = x |_ z + y |_ z", M4);
    add("AD1", "I", "dd(abs t) + dd(abs t') = dd(abs t) if t' < t", AD1);
    add("AD2", "I", "dd(abs t) + dd(abs t') = dd(abs t') if t <= t'", AD2);
    add("AD3", "I", "a + dd(abs t) = a if a absolute, not a receive "
        "window, bt(a) = t", AD3);
    add("AD4", "I", "dd(abs t) . x = dd(abs t)", AD4);
    add("RD1", "I", "dd(rel t) + dd(rel t') = dd(rel t) if t' < t", RD1);
    add("RD2", "I", "dd(rel t) + dd(rel t') = dd(rel t') if t <= t'", RD2);
    add("RD3", "I", "a + dd(rel t) = a if a relative, not a receive "
        "window, bt(a) = t", RD3);
    add("RD4", "I", "dd(rel t) . x = dd(rel t)", RD4);
    add("RD5", "I", "dd = dd(rel 0)", RD5);
    add("TO1", "I", "dd(abs t) >> dd(abs t') = dd(abs t') if t' < t", TO1);
    add("TO2", "I", "dd(abs t) >> dd(abs t') = dd(abs t) if t <= t'", TO2);
    add("TO3", "I", "dd(rel t) >> dd(rel t') = dd(rel t') if t' < t", TO3);
    add("TO4", "I", "dd(rel t) >> dd(rel t') = dd(rel t) if t <= t'", TO4);
    add("TO5", "I", "a >> a' = a if ubt(a) <= lbt(a')", TO5);
    add("TO6", "I", "x >> a = x >> dd(abs t) if a absolute, not a receive "
        "window, bt(a) = t", TO6);
    add("TO7", "I", "x >> a = x >> dd(rel t) if a relative, not a receive "
        "window, bt(a) = t", TO7);
    add("TO8", "I", "x >> (y + z) = x >> y + x >> z", TO8);
    add("TO9", "I", "x >> y . z = x >> y", TO9);
    add("TO10", "I", "x >> (y >> z) = (x >> y) >> z", TO10);
    add("TO11", "I", "a >> dd(abs t) = dd(abs t) if a absolute, "
        "t < lbt(a)", TO11);
    add("TO12", "I", "a >> dd(abs t) = a if a absolute, ubt(a) <= t", TO12);
    add("TO13", "I", "a >> dd(rel t) = dd(rel t) if a relative, "
        "t < lbt(a)", TO13);
    add("TO14", "I", "a >> dd(rel t) = a if a relative, ubt(a) <= t", TO14);
    add("TO15", "I", "(x + y) >> z = x >> z + y >> z", TO15);
    add("TO16", "I", "x . y >> z = (x >> z) . y", TO16);
    add("TO17", "I", "(x >> y) >> z = (x >> z) >> y", TO17);
    add("S1", "II", "L(dd(abs t')) = dd(abs t) if t' < t", S1);
    add("S2", "II", "L(dd(abs t')) = dd(abs t') if t <= t'", S2);
    add("S3", "II", "L(dd(rel t')) = dd(abs t+t')", S3);
    add("S4", "II", "L(a) = a if chan(a) not in C", S4);
    add("S5", "II", "L(ps abs t') = dd(abs t) if t' < t", S5);
    add("S6", "II", "L(ps abs t') = es t' if t <= t'", S6);
    add("S7", "II", "L(ps rel t') = es t+t'", S7);
    add("S8", "II", "L(pr abs t'..t'') = dd(abs t) if t'' <= t", S8);
    add("S9", "II", "L(pr abs t'..t'') = dd(abs t'') if t < t'', "
        "no arrival", S9);
    add("S10", "II", "L(pr abs t'..t'') = er t''' if t < t'', "
        "t''' earliest arrival", S10);
    add("S11", "II", "L(pr rel t'..t'') = dd(abs t+t'') if no arrival", S11);
    add("S12", "II", "L(pr rel t'..t'') = er t''' for the earliest "
        "arrival t'''", S12);
    add("S13", "II", "L(es t') = dd(abs t) if t' < t", S13);
    add("S14", "II", "L(es t') = es t' if t <= t'", S14);
    add("S15", "II", "L(er t') = dd(abs t) if t' < t", S15);
    add("S16", "II", "L(er t') = er t' if t <= t'", S16);
    add("S17", "II", "L(a . x) = a . L(x) if chan(a) not in C", S17);
    add("S18", "II", "L(ps abs t' . x) = dd(abs t) if t' < t", S18);
    add("S19", "II", "L(ps abs t' . x) = es t' . L[t', sigma + send](x) "
        "if t <= t'", S19);
    add("S20", "II", "L(ps rel t' . x) = es t+t' . L[t+t', sigma + send](x)",
        S20);
    add("S21", "II", "L(pr abs t'..t'' . x) = dd(abs t) if t'' <= t", S21);
    add("S22", "II", "L(pr abs t'..t'' . x) = dd(abs t'') if t < t'', "
        "no arrival", S22);
    add("S23", "II", "L(pr abs t'..t'' . x) = er t''' . L[t'''](x) if "
        "t < t'', t''' earliest arrival", S23);
    add("S24", "II", "L(pr rel t'..t'' . x) = dd(abs t+t'') if no arrival",
        S24);
    add("S25", "II", "L(pr rel t'..t'' . x) = er t''' . L[t'''](x), "
        "t''' earliest arrival", S25);
    add("S26", "II", "L(es t' . x) = dd(abs t) if t' < t", S26);
    add("S27", "II", "L(es t' . x) = es t' . L[t'](x) if t <= t'", S27);
    add("S28", "II", "L(er t' . x) = dd(abs t) if t' < t", S28);
    add("S29", "II", "L(er t' . x) = er t' . L[t'](x) if t <= t'", S29);
    add("S30", "II", "L(x + y) = L(x) + L(y)", S30);
    add("S31", "II", "L(x >> y) = L(x) >> L(y)", S31);
    add("MP1", "MP", "nu(x) = x <| x", MP1);
    add("MP2", "MP", "alpha <| alpha' = alpha if not alpha < alpha'", MP2);
    add("MP3", "MP", "alpha <| alpha' = dd(abs t) if alpha < alpha', "
        "alpha' actual at t", MP3);
    add("MP4", "MP", "x . y <| z = (x <| z) . nu(y)", MP4);
    add("MP5", "MP", "(x + y) <| z = x <| z + y <| z", MP5);
    add("MP6", "MP", "x <| y . z = x <| y", MP6);
    add("MP7", "MP", "x <| (y + z) = (x <| y) <| z", MP7);
    add("RDP", "REC", "rec X {E} = body of X in E, with rec constants", RDP);
    add("TO16r", "derived", "(x >> z) . y = x . y >> z", TO16r, true);
    add("AC", "derived", "alternatives flattened, sorted, deduplicated", AC,
        true);
    add("D1", "derived", "x + dd(abs t) = x if a summand of x is dd(abs t') "
        "with t <= t' or is headed by an actual action at t' >= t", D1, true);
    const char* with_inf[] = {"AD1", "AD2", "AD4", "RD1", "RD2", "RD4",
                              "TO1", "TO2", "TO3", "TO4", "TO11", "TO12",
                              "TO13", "TO14", "S1", "S2", "S3", "M2",
                              "M3", "MP2", "MP3"};
    for (const char* id : with_inf) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].info.id != id) continue;
        Entry e = t[i];
        e.info.id += "*";
        e.info.group = "derived";
        e.info.equation += " (t, t' may be inf)";
        e.info.derived = true;
        e.allow_inf = true;
        t.push_back(e);
        break;
      }
    }
    return t;
  }();
  return table;
}

const std::map<std::string, std::size_t>& Index() {
  static const std::map<std::string, std::size_t> index = [] {
    std::map<std::string, std::size_t> m;
    const auto& t = Table();
    for (std::size_t i = 0; i < t.size(); ++i) m[t[i].info.id] = i;
    return m;
  }();
  return index;
}

}  // namespace

const std::vector<AxiomInfo>& axiom_list() {
  static const std::vector<AxiomInfo> list = [] {
    std::vector<AxiomInfo> out;
    for (const auto& e : Table()) out.push_back(e.info);
    return out;
  }();
  return list;
}

bool IsAxiomId(const std::string& id) { return Index().count(id) > 0; }

std::optional<RuleMatch> ApplyAtRoot(const std::string& id, const Term& p,
                                     const AxiomContext& ctx,
                                     bool want_bindings) {
  auto it = Index().find(id);
  if (it == Index().end()) throw InvalidArgument("unknown axiom: " + id);
  const Entry& e = Table()[it->second];
  Bindings bindings;
  Binder b(want_bindings ? &bindings : nullptr);
  Result r = e.fn(p, ctx, b, e.allow_inf);
  if (!r) return std::nullopt;
  return RuleMatch{*r, std::move(bindings)};
}

}  // namespace stpa
