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

#include "stpa/soundness.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "stpa/errors.hpp"
#include "stpa/syntax.hpp"

namespace stpa {

using AK = ActionKind;
using K = TermKind;

int TermGen::Int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

bool TermGen::Coin(int percent) { return Int(0, 99) < percent; }

Scalar TermGen::Time() { return Scalar(Int(0, 12), 2); }

ExtScalar TermGen::DeadTime(bool allow_inf) {
  if (allow_inf && Coin(35)) return ExtScalar::Infinity();
  return Time();
}

Point TermGen::Where() {
  static const int xs[] = {0, 1, 2, 4};
  return Point{Scalar(xs[Int(0, 3)]), Scalar(0), Scalar(0)};
}

std::string TermGen::Chan() { return Coin(70) ? "c" : "e"; }
std::string TermGen::Datum() { return Coin(70) ? "d" : "f"; }

Action TermGen::ActionOf(AK k) {
  std::string c = Chan();
  std::string d = Datum();
  Point p = Where();
  switch (k) {
    case AK::kAPSend:
      return Action::APSend(c, d, Time(), p);
    case AK::kRPSend:
      return Action::RPSend(c, d, Time(), p);
    case AK::kAPRecv:
    case AK::kRPRecv: {
      Scalar lo = Time();
      ExtScalar hi = Coin(25) ? ExtScalar::Infinity()
                              : ExtScalar(lo + Scalar(Int(1, 8), 2));
      return k == AK::kAPRecv ? Action::APRecv(c, d, lo, hi, p)
                              : Action::RPRecv(c, d, lo, hi, p);
    }
    case AK::kAESend:
      return Action::AESend(c, d, Time(), p);
    case AK::kAERecv:
      return Action::AERecv(c, d, Time(), p);
  }
  throw Error("unreachable");
}

Action TermGen::AnyAction() { return ActionOf(static_cast<AK>(Int(0, 5))); }

Action TermGen::AbsoluteNonWindow() {
  static const AK ks[] = {AK::kAPSend, AK::kAESend, AK::kAERecv};
  return ActionOf(ks[Int(0, 2)]);
}

Term TermGen::Atomic(bool allow_inf) {
  int k = Int(0, 9);
  if (k < 6) return Act(AnyAction());
  if (k < 8) return ADead(DeadTime(allow_inf));
  if (k < 9) return RDead(DeadTime(allow_inf));
  return Timeout(Act(AnyAction()), Act(AnyAction()));
}

Term TermGen::Any(int depth) {
  if (depth <= 0 || Coin(30)) {
    int k = Int(0, 19);
    if (k < 13) return Act(AnyAction());
    if (k < 16) return ADead(DeadTime(false));
    if (k < 19) return RDead(Time());
    return Deadlock();
  }
  int k = Int(0, 19);
  if (k < 5) return Alt(Any(depth - 1), Any(depth - 1));
  if (k < 10) return Seq(Any(depth - 1), Any(depth - 1));
  if (k < 12) return Par(Any(depth - 1), Any(depth - 1));
  if (k < 14) return LeftMerge(Any(depth - 1), Any(depth - 1));
  if (k < 17) return Timeout(Any(depth - 1), Any(depth - 1));
  if (k < 19) {
    Term body = Any(depth - 1);
    return StateOp(Covering(body, false), Time(), Sigma(Chan(), Datum()), body);
  }
  return MaxProg(Pattern(), Any(depth - 1));
}

Term TermGen::HNF(int summands) {
  std::vector<Term> parts;
  for (int i = 0; i < summands; ++i) {
    int k = Int(0, 9);
    Term a = Act(ActionOf(Coin(50) ? AK::kAESend : AK::kAERecv));
    if (k < 4) {
      parts.push_back(a);
    } else if (k < 8) {
      parts.push_back(Seq(a, Any(1)));
    } else {
      parts.push_back(ADead(Time()));
    }
  }
  return AltOf(parts);
}

CommState TermGen::Sigma(const std::string& c, const std::string& d) {
  std::vector<SendRecord> recs;
  int n = Int(0, 2);
  for (int i = 0; i < n; ++i) {
    recs.push_back(SendRecord{Coin(80) ? c : Chan(), Coin(80) ? d : Datum(),
                              Time(), Where()});
  }
  return CommState(recs);
}

ActionPattern TermGen::Pattern() {
  using A = ActionPattern::Atom;
  std::vector<A> atoms;
  int n = Int(1, 2);
  for (int i = 0; i < n; ++i) {
    A at;
    at.kind = static_cast<ActionPattern::Kind>(Int(0, 2));
    at.channels = {Chan()};
    if (Coin(30)) at.channels.push_back(Chan());
    if (Coin(25)) at.data = std::vector<std::string>{Datum()};
    atoms.push_back(at);
  }
  return ActionPattern(atoms);
}

ChannelSet TermGen::Covering(const Term& t, bool extra) {
  auto chans = ChannelsOf(t);
  std::vector<std::string> v(chans.begin(), chans.end());
  if (extra || v.empty()) v.push_back(Chan());
  return ChannelSet(v);
}

Term TermGen::RecTerm() {
  Term x = Var("X");
  Term y = Var("Y");
  Term bx = Alt(Seq(Act(AnyAction()), x), Seq(Act(AnyAction()), y));
  Term by = Coin(50) ? Act(AnyAction()) : Seq(Act(AnyAction()), x);
  if (Coin(40)) bx = Alt(bx, ADead(Time()));
  auto spec = RecSpec::Make({{"X", bx}, {"Y", by}});
  return RecConst(Coin(50) ? "X" : "Y", spec);
}

namespace {

// A state operator around `body` whose channel set covers it, unless
// `uncovered` names a channel to leave out.
Term Lam(TermGen& g, const Term& body, const std::string& c,
         const std::string& d, const std::string& uncovered = "") {
  auto chans = ChannelsOf(body);
  std::vector<std::string> v;
  for (const auto& ch : chans) {
    if (ch != uncovered) v.push_back(ch);
  }
  if (uncovered.empty() && g.Coin(20)) v.push_back(g.Chan());
  return StateOp(ChannelSet(v), g.Time(), g.Sigma(c, d), body);
}

Term LamHead(TermGen& g, AK k, bool seq) {
  Action a = g.ActionOf(k);
  Term body = seq ? Seq(Act(a), g.Any(1)) : Act(a);
  return Lam(g, body, a.channel(), a.datum());
}

Term LamUncovered(TermGen& g, bool seq) {
  Action a = g.AnyAction();
  Term body = seq ? Seq(Act(a), g.Any(1)) : Act(a);
  if (ChannelsOf(body).size() > 1 && g.Coin(50)) {
    // the tail may use the head's channel; keep only the head uncovered
    body = seq ? Seq(Act(a), g.Any(0)) : body;
  }
  auto chans = ChannelsOf(body);
  std::vector<std::string> v;
  for (const auto& ch : chans) {
    if (ch != a.channel()) v.push_back(ch);
  }
  return StateOp(ChannelSet(v), g.Time(), g.Sigma(a.channel(), a.datum()),
                 body);
}

}  // namespace

std::optional<Term> RandomRedex(const std::string& raw_id, TermGen& g) {
  bool inf = !raw_id.empty() && raw_id.back() == '*';
  std::string id = inf ? raw_id.substr(0, raw_id.size() - 1) : raw_id;
  auto x = [&] { return g.Any(2); };
  auto alpha = [&] { return g.Atomic(inf); };
  auto ad = [&] { return ADead(g.DeadTime(inf)); };
  auto rd = [&] { return RDead(g.DeadTime(inf)); };
  auto act = [&] { return Act(g.AnyAction()); };
  auto abs_act = [&] {
    static const AK ks[] = {AK::kAPSend, AK::kAPRecv, AK::kAESend,
                            AK::kAERecv};
    return Act(g.ActionOf(ks[g.Int(0, 3)]));
  };
  auto rel_act = [&] {
    return Act(g.ActionOf(g.Coin(50) ? AK::kRPSend : AK::kRPRecv));
  };
  auto H = [&] { return g.Pattern(); };

  static const std::map<std::string, int> order = [] {
    std::map<std::string, int> m;
    int i = 0;
    for (const auto& a : axiom_list()) m[a.id] = i++;
    return m;
  }();
  if (!order.count(raw_id)) throw InvalidArgument("unknown axiom: " + raw_id);

  if (id == "A1") return Alt(x(), x());
  if (id == "A2") return Alt(Alt(x(), x()), x());
  if (id == "A3") {
    Term t = x();
    return Alt(t, t);
  }
  if (id == "A4") return Seq(Alt(x(), x()), x());
  if (id == "A5") return Seq(Seq(x(), x()), x());
  if (id == "A6") return Alt(x(), Deadlock());
  if (id == "A7") return Seq(Deadlock(), x());
  if (id == "M1") return Par(x(), x());
  if (id == "M2") return LeftMerge(alpha(), x());
  if (id == "M3") return LeftMerge(Seq(alpha(), x()), x());
  if (id == "M4") return LeftMerge(Alt(x(), x()), x());
  if (id == "AD1" || id == "AD2") return Alt(ad(), ad());
  if (id == "AD3") {
    Action a = g.AbsoluteNonWindow();
    return Alt(Act(a), ADead(a.time()));
  }
  if (id == "AD4") return Seq(ad(), x());
  if (id == "RD1" || id == "RD2") return Alt(rd(), rd());
  if (id == "RD3") {
    Action a = g.ActionOf(AK::kRPSend);
    return Alt(Act(a), RDead(a.time()));
  }
  if (id == "RD4") return Seq(rd(), x());
  if (id == "RD5") return Deadlock();
  if (id == "TO1" || id == "TO2") return Timeout(ad(), ad());
  if (id == "TO3" || id == "TO4") return Timeout(rd(), rd());
  if (id == "TO5") return Timeout(act(), act());
  if (id == "TO6") return Timeout(x(), Act(g.AbsoluteNonWindow()));
  if (id == "TO7") return Timeout(x(), Act(g.ActionOf(AK::kRPSend)));
  if (id == "TO8") return Timeout(x(), Alt(x(), x()));
  if (id == "TO9") return Timeout(x(), Seq(x(), x()));
  if (id == "TO10") return Timeout(x(), Timeout(x(), x()));
  if (id == "TO11" || id == "TO12") return Timeout(abs_act(), ad());
  if (id == "TO13" || id == "TO14") return Timeout(rel_act(), rd());
  if (id == "TO15") return Timeout(Alt(x(), x()), x());
  if (id == "TO16") return Timeout(Seq(x(), x()), x());
  if (id == "TO17") return Timeout(Timeout(x(), x()), x());
  if (id == "TO16r") return Seq(Timeout(x(), x()), x());

  if (id == "S1" || id == "S2") {
    return Lam(g, ad(), g.Chan(), g.Datum());
  }
  if (id == "S3") return Lam(g, rd(), g.Chan(), g.Datum());
  if (id == "S4") return LamUncovered(g, false);
  if (id == "S17") return LamUncovered(g, true);
  static const std::map<std::string, std::pair<AK, bool>> heads = {
      {"S5", {AK::kAPSend, false}},  {"S6", {AK::kAPSend, false}},
      {"S7", {AK::kRPSend, false}},  {"S8", {AK::kAPRecv, false}},
      {"S9", {AK::kAPRecv, false}},  {"S10", {AK::kAPRecv, false}},
      {"S11", {AK::kRPRecv, false}}, {"S12", {AK::kRPRecv, false}},
      {"S13", {AK::kAESend, false}}, {"S14", {AK::kAESend, false}},
      {"S15", {AK::kAERecv, false}}, {"S16", {AK::kAERecv, false}},
      {"S18", {AK::kAPSend, true}},  {"S19", {AK::kAPSend, true}},
      {"S20", {AK::kRPSend, true}},  {"S21", {AK::kAPRecv, true}},
      {"S22", {AK::kAPRecv, true}},  {"S23", {AK::kAPRecv, true}},
      {"S24", {AK::kRPRecv, true}},  {"S25", {AK::kRPRecv, true}},
      {"S26", {AK::kAESend, true}},  {"S27", {AK::kAESend, true}},
      {"S28", {AK::kAERecv, true}},  {"S29", {AK::kAERecv, true}},
  };
  if (auto it = heads.find(id); it != heads.end()) {
    return LamHead(g, it->second.first, it->second.second);
  }
  if (id == "S30") return Lam(g, Alt(x(), x()), g.Chan(), g.Datum());
  if (id == "S31") return Lam(g, Timeout(x(), x()), g.Chan(), g.Datum());

  if (id == "MP1") return MaxProg(H(), x());
  if (id == "MP2" || id == "MP3") {
    Term rhs = g.Coin(70) ? Act(g.ActionOf(g.Coin(60) ? AK::kAERecv
                                                      : AK::kAESend))
                          : alpha();
    return AuxMaxProg(H(), alpha(), rhs);
  }
  if (id == "MP4") return AuxMaxProg(H(), Seq(x(), x()), x());
  if (id == "MP5") return AuxMaxProg(H(), Alt(x(), x()), x());
  if (id == "MP6") return AuxMaxProg(H(), x(), Seq(x(), x()));
  if (id == "MP7") return AuxMaxProg(H(), x(), Alt(x(), x()));
  if (id == "RDP") return g.RecTerm();
  if (id == "AC") {
    std::vector<Term> parts;
    int n = g.Int(2, 4);
    for (int i = 0; i < n; ++i) parts.push_back(g.Any(1));
    parts.push_back(parts[g.Int(0, n - 1)]);
    std::shuffle(parts.begin(), parts.end(), g.rng());
    Term t = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
      t = g.Coin(50) ? Alt(t, parts[i]) : Alt(parts[i], t);
    }
    return t;
  }
  if (id == "D1") {
    std::vector<Term> parts;
    int n = g.Int(2, 4);
    for (int i = 0; i < n; ++i) {
      int k = g.Int(0, 2);
      if (k == 0) parts.push_back(ADead(g.DeadTime(true)));
      if (k == 1) parts.push_back(Act(g.ActionOf(AK::kAESend)));
      if (k == 2) {
        parts.push_back(Seq(Act(g.ActionOf(AK::kAERecv)), g.Any(1)));
      }
    }
    parts.push_back(ADead(g.Time()));
    return AltOf(parts);
  }
  return std::nullopt;
}

std::vector<SoundnessRow> CheckAxiomSoundness(const SoundnessOptions& opts) {
  std::vector<SoundnessRow> rows;
  std::uint64_t salt = 0;
  for (const auto& info : axiom_list()) {
    ++salt;
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), info.id) ==
            opts.only.end()) {
      continue;
    }
    SoundnessRow row{info.id, info.group, info.derived, 0, 0, 0, ""};
    TermGen g(opts.seed * 1000003ULL + salt);
    AxiomContext ctx;
    SemanticsOptions sem;
    const int max_attempts = opts.instances * 60;
    for (int attempt = 0;
         attempt < max_attempts && row.instances < opts.instances; ++attempt) {
      auto lhs = RandomRedex(info.id, g);
      if (!lhs) break;
      auto m = ApplyAtRoot(info.id, *lhs, ctx);
      if (!m) {
        ++row.skipped;
        continue;
      }
      BisimVerdict v;
      try {
        v = bisim_definitional(*lhs, m->result,
                               relevant_instants(*lhs, m->result),
                               opts.game_depth, sem);
      } catch (const Error&) {
        ++row.skipped;
        continue;
      }
      if (v.kind == BisimVerdict::Kind::kInconclusive) {
        ++row.skipped;
        continue;
      }
      ++row.instances;
      if (!v.bisimilar()) {
        if (row.discrepancies++ == 0) {
          row.counterexample = Print(*lhs) + "  =>  " + Print(m->result) +
                               "  : " + v.str();
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace stpa
