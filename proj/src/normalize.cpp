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

// Normalization strategies.  The rewriter keeps the whole term and works on
// positions in it, so each contraction can be logged with an absolute path
// and replayed later by `Replay`.

#include <initializer_list>

#include "stpa/axioms.hpp"
#include "stpa/errors.hpp"
#include "stpa/syntax.hpp"

namespace stpa {
namespace {

using K = TermKind;

Path Sub(const Path& p, int i) {
  Path q = p;
  q.push_back(i);
  return q;
}

class Rewriter {
 public:
  Rewriter(Term whole, const AxiomContext& ctx, RewriteTrace* trace)
      : whole_(std::move(whole)), ctx_(ctx), trace_(trace) {}

  const Term& whole() const { return whole_; }

  void Shnf(const Path& p);
  void StateElim(const Path& p);
  void MaxPrElim(const Path& p);
  void Tidy(const Path& p);
  void NormalizeAt(const Path& p, int depth);

 private:
  const Term& At(const Path& p) const { return SubtermAt(whole_, p); }

  bool Try(const std::string& id, const Path& p) {
    auto m = ApplyAtRoot(id, At(p), ctx_, trace_ != nullptr);
    if (!m) return false;
    if (trace_) trace_->steps.push_back({id, p, std::move(m->bindings)});
    whole_ = ReplaceAt(whole_, p, m->result);
    return true;
  }
  bool TryAny(std::initializer_list<const char*> ids, const Path& p) {
    for (const char* id : ids) {
      if (Try(id, p)) return true;
    }
    return false;
  }
  void Must(std::initializer_list<const char*> ids, const Path& p) {
    if (!TryAny(ids, p)) {
      throw Error("internal: no rule applies to " + Print(At(p)));
    }
  }

  void HeadSeq(const Path& p);
  void LeftMergeNf(const Path& p);
  void TimeoutNf(const Path& p);
  void SimplifyTimeoutAtom(const Path& p);
  void Elim(const Path& p);
  void TimeoutReduce(const Path& p);
  void AuxReduce(const Path& p);
  std::vector<Path> SummandPaths(const Path& p) const;

  Term whole_;
  AxiomContext ctx_;
  RewriteTrace* trace_;
  std::int64_t unfolds_ = 0;
};

std::vector<Path> Rewriter::SummandPaths(const Path& p) const {
  std::vector<Path> out;
  std::vector<Path> stack{p};
  while (!stack.empty()) {
    Path q = std::move(stack.back());
    stack.pop_back();
    if (At(q).is(K::kAlt)) {
      stack.push_back(Sub(q, 1));
      stack.push_back(Sub(q, 0));
    } else {
      out.push_back(std::move(q));
    }
  }
  return out;
}

void Rewriter::Shnf(const Path& p) {
  switch (At(p).kind()) {
    case K::kDeadlock:
      Must({"RD5"}, p);
      return;
    case K::kADead:
    case K::kRDead:
    case K::kAct:
      return;
    case K::kVar:
      throw InvalidArgument("open term: free variable " + At(p).name());
    case K::kAlt:
      Shnf(Sub(p, 0));
      Shnf(Sub(p, 1));
      return;
    case K::kSeq:
      Shnf(Sub(p, 0));
      HeadSeq(p);
      return;
    case K::kPar:
      Must({"M1"}, p);
      Shnf(Sub(p, 0));
      Shnf(Sub(p, 1));
      return;
    case K::kLeftMerge:
      Shnf(Sub(p, 0));
      LeftMergeNf(p);
      return;
    case K::kTimeout:
      Shnf(Sub(p, 0));
      Shnf(Sub(p, 1));
      TimeoutNf(p);
      return;
    case K::kStateOp:
      StateElim(p);
      return;
    case K::kMaxProg:
      Shnf(Sub(p, 0));
      if (!IsHProc(At(Sub(p, 0)))) {
        throw InvalidArgument(
            "maximal progress needs a head normal form operand; got " +
            Print(At(Sub(p, 0))));
      }
      MaxPrElim(p);
      return;
    case K::kAuxMaxProg:
      Shnf(Sub(p, 0));
      Shnf(Sub(p, 1));
      if (!IsHProc(At(Sub(p, 0))) || !IsHProc(At(Sub(p, 1)))) {
        throw InvalidArgument(
            "priority operator needs head normal form operands");
      }
      AuxReduce(p);
      return;
    case K::kRecConst:
      if (++unfolds_ > ctx_.unfold_budget) {
        throw BudgetExceeded("recursion unfolding budget exceeded");
      }
      Must({"RDP"}, p);
      Shnf(p);
      return;
  }
}

// At(p) = h . y with h in semi-head normal form.
void Rewriter::HeadSeq(const Path& p) {
  const Term& h = At(p).lhs();
  switch (h.kind()) {
    case K::kAlt:
      Must({"A4"}, p);
      HeadSeq(Sub(p, 0));
      HeadSeq(Sub(p, 1));
      return;
    case K::kSeq:
      Must({"A5"}, p);
      HeadSeq(p);
      return;
    case K::kADead:
      Must({"AD4", "AD4*"}, p);
      return;
    case K::kRDead:
      Must({"RD4", "RD4*"}, p);
      return;
    default:
      return;
  }
}

// At(p) = x |_ y with x in semi-head normal form.
void Rewriter::LeftMergeNf(const Path& p) {
  const Term& x = At(p).lhs();
  if (x.is(K::kAlt)) {
    Must({"M4"}, p);
    LeftMergeNf(Sub(p, 0));
    LeftMergeNf(Sub(p, 1));
    return;
  }
  // Both rules give (alpha >> y) . rest.
  Must({x.is(K::kSeq) ? "M3" : "M2", x.is(K::kSeq) ? "M3*" : "M2*"}, p);
  Path head = Sub(p, 0);
  Shnf(Sub(head, 1));
  TimeoutNf(head);
  HeadSeq(p);
}

// At(p) = x >> y with both sides in semi-head normal form.
void Rewriter::TimeoutNf(const Path& p) {
  const Term& x = At(p).lhs();
  if (x.is(K::kAlt)) {
    Must({"TO15"}, p);
    TimeoutNf(Sub(p, 0));
    TimeoutNf(Sub(p, 1));
    return;
  }
  if (x.is(K::kSeq)) {
    Must({"TO16"}, p);
    TimeoutNf(Sub(p, 0));
    HeadSeq(p);
    return;
  }
  const Term& y = At(p).rhs();
  switch (y.kind()) {
    case K::kAlt:
      Must({"TO8"}, p);
      TimeoutNf(Sub(p, 0));
      TimeoutNf(Sub(p, 1));
      return;
    case K::kSeq:
      Must({"TO9"}, p);
      TimeoutNf(p);
      return;
    case K::kTimeout:
      Must({"TO10"}, p);
      TimeoutNf(Sub(p, 0));
      TimeoutNf(p);
      return;
    default:
      SimplifyTimeoutAtom(p);
  }
}

void Rewriter::SimplifyTimeoutAtom(const Path& p) {
  TryAny({"TO6", "TO7"}, p);
  // TO5 compares the bounds of its two actions as numbers, which only
  // means something when both are measured from the same origin.  Mixed
  // pairs stay put until a state operator makes both absolute.
  const Term& t = At(p);
  bool comparable = t.is(K::kTimeout) && t.lhs().is(K::kAct) &&
                    t.rhs().is(K::kAct) &&
                    t.lhs().action().is_relative() ==
                        t.rhs().action().is_relative();
  if (comparable && Try("TO5", p)) return;
  TryAny({"TO1", "TO2", "TO3", "TO4", "TO11", "TO12", "TO13", "TO14", "TO1*",
          "TO2*", "TO3*", "TO4*", "TO11*", "TO12*", "TO13*", "TO14*"},
         p);
}

void Rewriter::StateElim(const Path& p) {
  Shnf(Sub(p, 0));
  Elim(p);
}

// At(p) = L(body) with body in semi-head normal form.
void Rewriter::Elim(const Path& p) {
  const Term& body = At(p).child(0);
  switch (body.kind()) {
    case K::kAlt:
      Must({"S30"}, p);
      Elim(Sub(p, 0));
      Elim(Sub(p, 1));
      return;
    case K::kADead:
      Must({"S1", "S2", "S1*", "S2*"}, p);
      return;
    case K::kRDead:
      Must({"S3", "S3*"}, p);
      return;
    case K::kAct:
      Must({"S4", "S5", "S6", "S7", "S8", "S9", "S10", "S11", "S12", "S13",
            "S14", "S15", "S16"},
           p);
      return;
    case K::kTimeout:
      Must({"S31"}, p);
      Elim(Sub(p, 0));
      Elim(Sub(p, 1));
      TimeoutReduce(p);
      return;
    case K::kSeq: {
      const Term& h = body.lhs();
      if (h.is(K::kAct)) {
        Must({"S17", "S18", "S19", "S20", "S21", "S22", "S23", "S24", "S25",
              "S26", "S27", "S28", "S29"},
             p);
        return;
      }
      if (h.is(K::kTimeout)) {
        Must({"TO16r"}, Sub(p, 0));
        Must({"S31"}, p);
        Elim(Sub(p, 0));
        Elim(Sub(p, 1));
        TimeoutReduce(p);
        return;
      }
      if (h.is(K::kAlt) || h.is(K::kSeq) || h.is(K::kADead) ||
          h.is(K::kRDead)) {
        // Left over from time-out distribution: bring the head into shape.
        HeadSeq(Sub(p, 0));
        Elim(p);
        return;
      }
      break;
    }
    default:
      break;
  }
  throw Error("internal: cannot eliminate the state operator from " +
              Print(At(p)));
}

// At(p) = X >> Y with X and Y in head normal form.
void Rewriter::TimeoutReduce(const Path& p) {
  const Term& x = At(p).lhs();
  if (x.is(K::kAlt)) {
    Must({"TO15"}, p);
    TimeoutReduce(Sub(p, 0));
    TimeoutReduce(Sub(p, 1));
    return;
  }
  if (x.is(K::kSeq)) {
    Must({"TO16"}, p);
    TimeoutReduce(Sub(p, 0));
    HeadSeq(p);
    return;
  }
  const Term& y = At(p).rhs();
  switch (y.kind()) {
    case K::kAlt:
      Must({"TO8"}, p);
      TimeoutReduce(Sub(p, 0));
      TimeoutReduce(Sub(p, 1));
      return;
    case K::kSeq:
      Must({"TO9"}, p);
      TimeoutReduce(p);
      return;
    case K::kAct:
      Must({"TO6"}, p);
      TimeoutReduce(p);
      return;
    default:
      Must({"TO1", "TO2", "TO11", "TO12", "TO1*", "TO2*", "TO11*", "TO12*"},
           p);
  }
}

void Rewriter::MaxPrElim(const Path& p) {
  Must({"MP1"}, p);
  AuxReduce(p);
  Tidy(p);
  for (const Path& s : SummandPaths(p)) {
    if (!At(s).is(K::kSeq)) continue;
    Path tail = Sub(s, 1);
    const Term& t = At(tail);
    if (t.is(K::kMaxProg) && IsHProc(t.child(0))) MaxPrElim(tail);
  }
}

// At(p) = x <| z with x and z in head normal form.
void Rewriter::AuxReduce(const Path& p) {
  const Term& x = At(p).lhs();
  if (x.is(K::kAlt)) {
    Must({"MP5"}, p);
    AuxReduce(Sub(p, 0));
    AuxReduce(Sub(p, 1));
    return;
  }
  if (x.is(K::kSeq)) {
    Must({"MP4"}, p);
    AuxReduce(Sub(p, 0));
    HeadSeq(p);
    return;
  }
  const Term& z = At(p).rhs();
  switch (z.kind()) {
    case K::kAlt:
      Must({"MP7"}, p);
      AuxReduce(Sub(p, 0));
      AuxReduce(p);
      return;
    case K::kSeq:
      Must({"MP6"}, p);
      AuxReduce(p);
      return;
    default:
      Must({"MP2", "MP3", "MP2*", "MP3*"}, p);
  }
}

void Rewriter::Tidy(const Path& p) {
  Try("AC", p);
  Try("D1", p);
}

void Rewriter::NormalizeAt(const Path& p, int depth) {
  const Term& t = At(p);
  if (t.is(K::kStateOp)) {
    StateElim(p);
  } else if (t.is(K::kMaxProg)) {
    NormalizeAt(Sub(p, 0), depth);
    if (!IsHProc(At(Sub(p, 0)))) {
      throw InvalidArgument(
          "maximal progress needs a head normal form operand; got " +
          Print(At(Sub(p, 0))));
    }
    MaxPrElim(p);
    return;
  } else {
    Shnf(p);
  }
  Tidy(p);
  if (depth <= 0) return;
  for (const Path& s : SummandPaths(p)) {
    if (At(s).is(K::kSeq)) NormalizeAt(Sub(s, 1), depth - 1);
  }
  Tidy(p);
}

void RequireClosed(const Term& p) {
  auto fv = FreeVars(p);
  if (!fv.empty()) {
    throw InvalidArgument("open term: free variable " + *fv.begin());
  }
}

}  // namespace

Term shnf(const Term& p, const AxiomContext& ctx, RewriteTrace* trace) {
  RequireClosed(p);
  Rewriter r(p, ctx, trace);
  r.Shnf({});
  return r.whole();
}

Term hnf_state(const ChannelSet& c, const Scalar& t, const CommState& sigma,
               const Term& p, const AxiomContext& ctx, RewriteTrace* trace) {
  RequireClosed(p);
  for (const auto& ch : ChannelsOf(p)) {
    if (!c.contains(ch)) {
      throw InvalidArgument("channel " + ch +
                            " is not covered by the state operator");
    }
  }
  Rewriter r(StateOp(c, t, sigma, p), ctx, trace);
  r.StateElim({});
  r.Tidy({});
  return r.whole();
}

Term maxpr_eliminate(const ActionPattern& h, const Term& p,
                     const AxiomContext& ctx, RewriteTrace* trace) {
  RequireClosed(p);
  auto cls = ClassifyNormalForm(p);
  if (cls.cls != NormalFormClass::kHProc) {
    throw InvalidArgument("maxpr_eliminate needs a head normal form; got " +
                          Print(p));
  }
  Rewriter r(MaxProg(h, p), ctx, trace);
  r.MaxPrElim({});
  return r.whole();
}

Term normalize(const Term& p, int depth, const AxiomContext& ctx,
               RewriteTrace* trace) {
  RequireClosed(p);
  Rewriter r(p, ctx, trace);
  r.NormalizeAt({}, depth);
  return r.whole();
}

}  // namespace stpa
