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

#include "stpa/terms.hpp"

#include <algorithm>
#include <limits>
#include <functional>
#include <map>
#include <unordered_map>
#include <variant>

#include "stpa/errors.hpp"

namespace stpa {

// ---------------------------------------------------------------------------
// Actions

Action::Action(ActionKind k, std::string c, std::string d, Scalar t,
               ExtScalar hi, Point p)
    : kind_(k),
      channel_(std::move(c)),
      datum_(std::move(d)),
      time_(std::move(t)),
      upper_(std::move(hi)),
      point_(std::move(p)) {
  std::size_t h = static_cast<std::size_t>(kind_) * 0x51ed27u;
  h = HashCombine(h, std::hash<std::string>()(channel_));
  h = HashCombine(h, std::hash<std::string>()(datum_));
  h = HashCombine(h, time_.hash());
  h = HashCombine(h, upper_.hash());
  hash_ = HashCombine(h, point_.hash());
}

Action Action::APSend(std::string c, std::string d, Scalar t, Point p) {
  ExtScalar hi(t);
  return Action(ActionKind::kAPSend, std::move(c), std::move(d), std::move(t),
                std::move(hi), std::move(p));
}

Action Action::RPSend(std::string c, std::string d, Scalar t, Point p) {
  if (t.sgn() < 0) throw InvalidArgument("relative send period must be >= 0");
  ExtScalar hi(t);
  return Action(ActionKind::kRPSend, std::move(c), std::move(d), std::move(t),
                std::move(hi), std::move(p));
}

Action Action::APRecv(std::string c, std::string d, Scalar lo, ExtScalar hi,
                      Point p) {
  if (!(ExtScalar(lo) < hi)) {
    throw InvalidArgument("receive window " + lo.str() + ".." + hi.str() +
                          " is empty");
  }
  return Action(ActionKind::kAPRecv, std::move(c), std::move(d), std::move(lo),
                std::move(hi), std::move(p));
}

Action Action::RPRecv(std::string c, std::string d, Scalar lo, ExtScalar hi,
                      Point p) {
  if (lo.sgn() < 0) throw InvalidArgument("relative window start must be >= 0");
  if (!(ExtScalar(lo) < hi)) {
    throw InvalidArgument("receive window " + lo.str() + ".." + hi.str() +
                          " is empty");
  }
  return Action(ActionKind::kRPRecv, std::move(c), std::move(d), std::move(lo),
                std::move(hi), std::move(p));
}

Action Action::AESend(std::string c, std::string d, Scalar t, Point p) {
  ExtScalar hi(t);
  return Action(ActionKind::kAESend, std::move(c), std::move(d), std::move(t),
                std::move(hi), std::move(p));
}

Action Action::AERecv(std::string c, std::string d, Scalar t, Point p) {
  ExtScalar hi(t);
  return Action(ActionKind::kAERecv, std::move(c), std::move(d), std::move(t),
                std::move(hi), std::move(p));
}

Action Action::WithTime(const Scalar& t) const {
  return Action(kind_, channel_, datum_, t,
                is_potential_receive() ? upper_ : ExtScalar(t), point_);
}

bool operator==(const Action& a, const Action& b) {
  return a.hash_ == b.hash_ && a.kind_ == b.kind_ && a.time_ == b.time_ &&
         a.upper_ == b.upper_ && a.channel_ == b.channel_ &&
         a.datum_ == b.datum_ && a.point_ == b.point_;
}

std::strong_ordering operator<=>(const Action& a, const Action& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.channel_ <=> b.channel_; c != 0) return c;
  if (auto c = a.datum_ <=> b.datum_; c != 0) return c;
  if (auto c = a.time_ <=> b.time_; c != 0) return c;
  if (auto c = a.upper_ <=> b.upper_; c != 0) return c;
  return a.point_ <=> b.point_;
}

Scalar lbt(const Action& a) { return a.time(); }
ExtScalar ubt(const Action& a) { return a.upper(); }

Scalar bt(const Action& a) {
  if (a.is_potential_receive()) {
    throw InvalidArgument("bt is undefined on potential receive actions");
  }
  return a.time();
}

const std::string& chan(const Action& a) { return a.channel(); }

// ---------------------------------------------------------------------------
// Action patterns

ActionPattern::ActionPattern(std::vector<Atom> atoms) {
  for (auto& at : atoms) {
    std::sort(at.channels.begin(), at.channels.end());
    at.channels.erase(std::unique(at.channels.begin(), at.channels.end()),
                      at.channels.end());
    if (at.data) {
      std::sort(at.data->begin(), at.data->end());
      at.data->erase(std::unique(at.data->begin(), at.data->end()),
                     at.data->end());
    }
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  atoms_ = std::move(atoms);
}

bool ActionPattern::Matches(const Action& a) const {
  if (!a.is_actual()) return false;
  for (const auto& at : atoms_) {
    if (at.kind == Kind::kSend && a.kind() != ActionKind::kAESend) continue;
    if (at.kind == Kind::kRecv && a.kind() != ActionKind::kAERecv) continue;
    if (!std::binary_search(at.channels.begin(), at.channels.end(), a.channel()))
      continue;
    if (at.data &&
        !std::binary_search(at.data->begin(), at.data->end(), a.datum()))
      continue;
    return true;
  }
  return false;
}

std::size_t ActionPattern::hash() const {
  std::size_t h = 0x9a77e5;
  for (const auto& at : atoms_) {
    h = HashCombine(h, static_cast<std::size_t>(at.kind));
    for (const auto& c : at.channels) h = HashCombine(h, std::hash<std::string>()(c));
    if (at.data) {
      h = HashCombine(h, 0xda7a);
      for (const auto& d : *at.data) h = HashCombine(h, std::hash<std::string>()(d));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Term nodes

struct StateData {
  ChannelSet channels;
  Scalar time;
  CommState sigma;
};

struct RecRef {
  std::string var;
  RecSpecPtr spec;
};

struct TermNode {
  TermKind kind = TermKind::kDeadlock;
  std::size_t hash = 0;
  std::vector<Term> kids;
  std::variant<std::monostate, ExtScalar, Action, StateData, ActionPattern,
               std::string, RecRef>
      payload;
};

struct TermFactory {
  static Term Make(TermNode n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 0x2545f491u + 17;
    std::visit(
        [&h](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, ExtScalar> ||
                        std::is_same_v<P, Action> ||
                        std::is_same_v<P, ActionPattern>) {
            h = HashCombine(h, p.hash());
          } else if constexpr (std::is_same_v<P, StateData>) {
            h = HashCombine(h, p.channels.hash());
            h = HashCombine(h, p.time.hash());
            h = HashCombine(h, p.sigma.hash());
          } else if constexpr (std::is_same_v<P, std::string>) {
            h = HashCombine(h, std::hash<std::string>()(p));
          } else if constexpr (std::is_same_v<P, RecRef>) {
            h = HashCombine(h, std::hash<std::string>()(p.var));
            h = HashCombine(h, p.spec->hash());
          }
        },
        n.payload);
    for (const auto& k : n.kids) h = HashCombine(h, k.hash());
    n.hash = h;
    return Term(std::make_shared<const TermNode>(std::move(n)));
  }

  static const std::shared_ptr<const TermNode>& DeadlockNode() {
    static const std::shared_ptr<const TermNode> node = [] {
      TermNode n;
      n.kind = TermKind::kDeadlock;
      n.hash = 0x7d3adu;
      return std::make_shared<const TermNode>(std::move(n));
    }();
    return node;
  }

  static Term FromNode(std::shared_ptr<const TermNode> n) {
    return Term(std::move(n));
  }
};

namespace {

Term MakeBinary(TermKind k, const Term& a, const Term& b) {
  TermNode n;
  n.kind = k;
  n.kids = {a, b};
  return TermFactory::Make(std::move(n));
}

[[noreturn]] void WrongKind(const char* what) {
  throw InvalidArgument(std::string("term accessor ") + what +
                        " used on a term of another kind");
}

}  // namespace

Term::Term() : node_(TermFactory::DeadlockNode()) {}

TermKind Term::kind() const { return node_->kind; }

int Term::arity() const { return static_cast<int>(node_->kids.size()); }

const ExtScalar& Term::dead_time() const {
  if (auto* p = std::get_if<ExtScalar>(&node_->payload)) return *p;
  WrongKind("dead_time");
}

const Action& Term::action() const {
  if (auto* p = std::get_if<Action>(&node_->payload)) return *p;
  WrongKind("action");
}

const Term& Term::child(int i) const {
  if (i < 0 || i >= arity()) WrongKind("child");
  return node_->kids[static_cast<std::size_t>(i)];
}

const ChannelSet& Term::channels() const {
  if (auto* p = std::get_if<StateData>(&node_->payload)) return p->channels;
  WrongKind("channels");
}

const Scalar& Term::state_time() const {
  if (auto* p = std::get_if<StateData>(&node_->payload)) return p->time;
  WrongKind("state_time");
}

const CommState& Term::sigma() const {
  if (auto* p = std::get_if<StateData>(&node_->payload)) return p->sigma;
  WrongKind("sigma");
}

const ActionPattern& Term::pattern() const {
  if (auto* p = std::get_if<ActionPattern>(&node_->payload)) return *p;
  WrongKind("pattern");
}

const std::string& Term::name() const {
  if (auto* p = std::get_if<std::string>(&node_->payload)) return *p;
  if (auto* r = std::get_if<RecRef>(&node_->payload)) return r->var;
  WrongKind("name");
}

const RecSpecPtr& Term::spec() const {
  if (auto* r = std::get_if<RecRef>(&node_->payload)) return r->spec;
  WrongKind("spec");
}

std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case TermKind::kADead:
    case TermKind::kRDead:
      if (auto c = std::get<ExtScalar>(x.payload) <=> std::get<ExtScalar>(y.payload);
          c != 0)
        return c;
      break;
    case TermKind::kAct:
      if (auto c = std::get<Action>(x.payload) <=> std::get<Action>(y.payload);
          c != 0)
        return c;
      break;
    case TermKind::kStateOp: {
      const auto& p = std::get<StateData>(x.payload);
      const auto& q = std::get<StateData>(y.payload);
      if (auto c = p.time <=> q.time; c != 0) return c;
      if (auto c = p.channels <=> q.channels; c != 0) return c;
      if (auto c = p.sigma <=> q.sigma; c != 0) return c;
      break;
    }
    case TermKind::kMaxProg:
    case TermKind::kAuxMaxProg:
      if (auto c = std::get<ActionPattern>(x.payload) <=>
                   std::get<ActionPattern>(y.payload);
          c != 0)
        return c;
      break;
    case TermKind::kVar:
      if (auto c = std::get<std::string>(x.payload) <=> std::get<std::string>(y.payload);
          c != 0)
        return c;
      break;
    case TermKind::kRecConst: {
      const auto& p = std::get<RecRef>(x.payload);
      const auto& q = std::get<RecRef>(y.payload);
      if (auto c = p.var <=> q.var; c != 0) return c;
      if (p.spec != q.spec) {
        if (auto c = Compare(*p.spec, *q.spec); c != 0) return c;
      }
      break;
    }
    default:
      break;
  }
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (auto c = x.kids[i] <=> y.kids[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Term Deadlock() { return Term(); }

Term ADead(const ExtScalar& t) {
  TermNode n;
  n.kind = TermKind::kADead;
  n.payload = t;
  return TermFactory::Make(std::move(n));
}

Term RDead(const ExtScalar& t) {
  if (t.is_finite() && t.value().sgn() < 0) {
    throw InvalidArgument("relative deadline must be >= 0");
  }
  TermNode n;
  n.kind = TermKind::kRDead;
  n.payload = t;
  return TermFactory::Make(std::move(n));
}

Term Act(const Action& a) {
  TermNode n;
  n.kind = TermKind::kAct;
  n.payload = a;
  return TermFactory::Make(std::move(n));
}

Term Alt(const Term& a, const Term& b) { return MakeBinary(TermKind::kAlt, a, b); }
Term Seq(const Term& a, const Term& b) { return MakeBinary(TermKind::kSeq, a, b); }
Term Par(const Term& a, const Term& b) { return MakeBinary(TermKind::kPar, a, b); }
Term LeftMerge(const Term& a, const Term& b) {
  return MakeBinary(TermKind::kLeftMerge, a, b);
}
Term Timeout(const Term& a, const Term& b) {
  return MakeBinary(TermKind::kTimeout, a, b);
}

Term StateOp(const ChannelSet& c, const Scalar& t, const CommState& sigma,
             const Term& body) {
  TermNode n;
  n.kind = TermKind::kStateOp;
  n.payload = StateData{c, t, sigma};
  n.kids = {body};
  return TermFactory::Make(std::move(n));
}

Term MaxProg(const ActionPattern& h, const Term& body) {
  TermNode n;
  n.kind = TermKind::kMaxProg;
  n.payload = h;
  n.kids = {body};
  return TermFactory::Make(std::move(n));
}

Term AuxMaxProg(const ActionPattern& h, const Term& a, const Term& b) {
  TermNode n;
  n.kind = TermKind::kAuxMaxProg;
  n.payload = h;
  n.kids = {a, b};
  return TermFactory::Make(std::move(n));
}

Term RecConst(const std::string& var, const RecSpecPtr& spec) {
  if (!spec || !spec->has(var)) {
    throw InvalidArgument("recursion constant " + var +
                          " is not a variable of its specification");
  }
  TermNode n;
  n.kind = TermKind::kRecConst;
  n.payload = RecRef{var, spec};
  return TermFactory::Make(std::move(n));
}

Term Var(const std::string& name) {
  TermNode n;
  n.kind = TermKind::kVar;
  n.payload = name;
  return TermFactory::Make(std::move(n));
}

Term AltOf(const std::vector<Term>& summands) {
  if (summands.empty()) return Deadlock();
  Term acc = summands.back();
  for (std::size_t i = summands.size() - 1; i-- > 0;) acc = Alt(summands[i], acc);
  return acc;
}

Term Rebuild(const Term& like, const std::vector<Term>& kids) {
  switch (like.kind()) {
    case TermKind::kAlt:
    case TermKind::kSeq:
    case TermKind::kPar:
    case TermKind::kLeftMerge:
    case TermKind::kTimeout:
      return MakeBinary(like.kind(), kids.at(0), kids.at(1));
    case TermKind::kStateOp:
      return StateOp(like.channels(), like.state_time(), like.sigma(), kids.at(0));
    case TermKind::kMaxProg:
      return MaxProg(like.pattern(), kids.at(0));
    case TermKind::kAuxMaxProg:
      return AuxMaxProg(like.pattern(), kids.at(0), kids.at(1));
    default:
      return like;
  }
}

// ---------------------------------------------------------------------------
// Recursive specifications

RecSpec::RecSpec(Equations eqs) : equations_(std::move(eqs)) {
  std::size_t h = 0x5eed;
  for (const auto& [x, t] : equations_) {
    h = HashCombine(h, std::hash<std::string>()(x));
    h = HashCombine(h, t.hash());
  }
  hash_ = h;
  unfolded_.resize(equations_.size());
}

RecSpecPtr RecSpec::Make(Equations equations) {
  if (equations.empty()) throw InvalidArgument("empty recursive specification");
  std::set<std::string> keys;
  for (const auto& eq : equations) {
    if (!keys.insert(eq.first).second) {
      throw InvalidArgument("variable " + eq.first + " defined twice");
    }
  }
  for (const auto& eq : equations) {
    for (const auto& v : FreeVars(eq.second)) {
      if (!keys.count(v)) {
        throw InvalidArgument("variable " + v + " in the equation for " +
                              eq.first + " is not defined");
      }
    }
  }
  return RecSpecPtr(new RecSpec(std::move(equations)));
}

int RecSpec::index_of(const std::string& x) const {
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    if (equations_[i].first == x) return static_cast<int>(i);
  }
  return -1;
}

const Term& RecSpec::body(const std::string& x) const {
  int i = index_of(x);
  if (i < 0) throw InvalidArgument("no equation for " + x);
  return equations_[static_cast<std::size_t>(i)].second;
}

namespace {

Term SubstituteVars(const Term& t, const RecSpecPtr& spec) {
  switch (t.kind()) {
    case TermKind::kVar:
      return RecConst(t.name(), spec);
    case TermKind::kRecConst:
      return t;
    default:
      break;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> kids;
  bool changed = false;
  for (int i = 0; i < t.arity(); ++i) {
    kids.push_back(SubstituteVars(t.child(i), spec));
    changed |= !(kids.back().node() == t.child(i).node());
  }
  return changed ? Rebuild(t, kids) : t;
}

}  // namespace

Term RecSpec::Unfold(const std::string& x) const {
  int i = index_of(x);
  if (i < 0) throw InvalidArgument("no equation for " + x);
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = unfolded_[static_cast<std::size_t>(i)];
  if (!slot) slot = SubstituteVars(equations_[static_cast<std::size_t>(i)].second,
                                   shared_from_this());
  return *slot;
}

bool operator==(const RecSpec& a, const RecSpec& b) {
  return &a == &b || (a.hash() == b.hash() && Compare(a, b) == 0);
}

std::strong_ordering Compare(const RecSpec& a, const RecSpec& b) {
  if (&a == &b) return std::strong_ordering::equal;
  const auto& x = a.equations();
  const auto& y = b.equations();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = x[i].first <=> y[i].first; c != 0) return c;
    if (auto c = x[i].second <=> y[i].second; c != 0) return c;
  }
  return x.size() <=> y.size();
}

// ---------------------------------------------------------------------------
// Positions

const Term& SubtermAt(const Term& t, const Path& path) {
  const Term* cur = &t;
  for (int i : path) cur = &cur->child(i);
  return *cur;
}

namespace {

Term ReplaceFrom(const Term& t, const Path& path, std::size_t k,
                 const Term& replacement) {
  if (k == path.size()) return replacement;
  std::vector<Term> kids;
  for (int i = 0; i < t.arity(); ++i) kids.push_back(t.child(i));
  int at = path[k];
  if (at < 0 || at >= t.arity()) throw InvalidArgument("position out of range");
  kids[static_cast<std::size_t>(at)] =
      ReplaceFrom(t.child(at), path, k + 1, replacement);
  return Rebuild(t, kids);
}

}  // namespace

Term ReplaceAt(const Term& t, const Path& path, const Term& replacement) {
  return ReplaceFrom(t, path, 0, replacement);
}

// ---------------------------------------------------------------------------
// Classification

namespace {

void CollectFreeVars(const Term& t, std::set<std::string>& out) {
  if (t.is(TermKind::kVar)) {
    out.insert(t.name());
    return;
  }
  for (int i = 0; i < t.arity(); ++i) CollectFreeVars(t.child(i), out);
}

}  // namespace

std::set<std::string> FreeVars(const Term& t) {
  std::set<std::string> out;
  CollectFreeVars(t, out);
  return out;
}

bool IsClosed(const Term& t) {
  if (t.is(TermKind::kVar)) return false;
  for (int i = 0; i < t.arity(); ++i) {
    if (!IsClosed(t.child(i))) return false;
  }
  return true;
}

bool IsAtomic(const Term& t) {
  switch (t.kind()) {
    case TermKind::kAct:
      return true;
    case TermKind::kADead:
    case TermKind::kRDead:
      return t.dead_time().is_finite();
    case TermKind::kTimeout:
      return IsAtomic(t.lhs()) && IsClosed(t.rhs());
    default:
      return false;
  }
}

bool IsLinear(const Term& t) {
  switch (t.kind()) {
    case TermKind::kADead:
      return true;
    case TermKind::kAct:
      return t.action().is_actual();
    case TermKind::kSeq:
      return t.lhs().is(TermKind::kAct) && t.lhs().action().is_actual() &&
             t.rhs().is(TermKind::kVar);
    case TermKind::kAlt:
      return IsLinear(t.lhs()) && IsLinear(t.rhs());
    default:
      return false;
  }
}

bool IsLinearSpec(const RecSpec& e) {
  for (const auto& eq : e.equations()) {
    if (!IsLinear(eq.second)) return false;
  }
  return true;
}

namespace {

// Variables with an occurrence outside the second operand of a Seq.
void UnguardedVars(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::kVar:
      out.insert(t.name());
      return;
    case TermKind::kSeq:
      UnguardedVars(t.lhs(), out);
      return;
    default:
      for (int i = 0; i < t.arity(); ++i) UnguardedVars(t.child(i), out);
  }
}

}  // namespace

Guardedness IsGuardedSpec(const RecSpec& e, int unfold_budget) {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& [x, body] : e.equations()) UnguardedVars(body, edges[x]);
  // Longest chain of unguarded references; a cycle means no amount of
  // substitution makes the specification guarded.
  std::map<std::string, int> depth;
  std::set<std::string> on_stack;
  std::function<int(const std::string&)> longest = [&](const std::string& x) {
    if (auto it = depth.find(x); it != depth.end()) return it->second;
    if (on_stack.count(x)) return std::numeric_limits<int>::max() / 2;
    on_stack.insert(x);
    int best = 0;
    for (const auto& y : edges[x]) best = std::max(best, 1 + longest(y));
    on_stack.erase(x);
    depth[x] = best;
    return best;
  };
  for (const auto& eq : e.equations()) {
    if (longest(eq.first) > unfold_budget) return Guardedness::kNotShownGuarded;
  }
  return Guardedness::kGuarded;
}

namespace {

template <typename F>
void VisitWithSpecs(const Term& t, F&& f, std::set<const RecSpec*>& seen) {
  f(t);
  if (t.is(TermKind::kRecConst)) {
    const RecSpec* s = t.spec().get();
    if (seen.insert(s).second) {
      for (const auto& eq : s->equations()) VisitWithSpecs(eq.second, f, seen);
    }
    return;
  }
  for (int i = 0; i < t.arity(); ++i) VisitWithSpecs(t.child(i), f, seen);
}

}  // namespace

std::set<std::string> ChannelsOf(const Term& t) {
  std::set<std::string> out;
  std::set<const RecSpec*> seen;
  VisitWithSpecs(
      t,
      [&](const Term& s) {
        if (s.is(TermKind::kAct)) out.insert(s.action().channel());
      },
      seen);
  return out;
}

std::set<Scalar> TimeLiteralsOf(const Term& t) {
  std::set<Scalar> out;
  std::set<const RecSpec*> seen;
  VisitWithSpecs(
      t,
      [&](const Term& s) {
        switch (s.kind()) {
          case TermKind::kADead:
          case TermKind::kRDead:
            if (s.dead_time().is_finite()) out.insert(s.dead_time().value());
            break;
          case TermKind::kAct:
            out.insert(s.action().time());
            if (s.action().upper().is_finite()) out.insert(s.action().upper().value());
            break;
          case TermKind::kStateOp:
            out.insert(s.state_time());
            for (const auto& r : s.sigma().records()) out.insert(r.time);
            break;
          default:
            break;
        }
      },
      seen);
  return out;
}

std::vector<CommState> SigmasOf(const Term& t) {
  std::vector<CommState> out;
  std::set<const RecSpec*> seen;
  VisitWithSpecs(
      t,
      [&](const Term& s) {
        if (s.is(TermKind::kStateOp) &&
            std::find(out.begin(), out.end(), s.sigma()) == out.end()) {
          out.push_back(s.sigma());
        }
      },
      seen);
  return out;
}

std::size_t TermSize(const Term& t) {
  std::size_t n = 1;
  for (int i = 0; i < t.arity(); ++i) n += TermSize(t.child(i));
  return n;
}

namespace {

void CollectSummands(const Term& t, std::vector<Term>& out) {
  if (t.is(TermKind::kAlt)) {
    CollectSummands(t.lhs(), out);
    CollectSummands(t.rhs(), out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

std::vector<Term> Summands(const Term& t) {
  std::vector<Term> out;
  CollectSummands(t, out);
  return out;
}

Term AltCanonical(const Term& t) {
  if (t.is(TermKind::kAlt)) {
    std::vector<Term> parts;
    for (const auto& s : Summands(t)) parts.push_back(AltCanonical(s));
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    return AltOf(parts);
  }
  if (t.arity() == 0) return t;
  std::vector<Term> kids;
  bool changed = false;
  for (int i = 0; i < t.arity(); ++i) {
    kids.push_back(AltCanonical(t.child(i)));
    changed |= kids.back().node() != t.child(i).node();
  }
  return changed ? Rebuild(t, kids) : t;
}

namespace {

void ParComponents(const Term& t, std::vector<Term>& out) {
  if (t.is(TermKind::kPar)) {
    ParComponents(t.lhs(), out);
    ParComponents(t.rhs(), out);
  } else {
    out.push_back(t);
  }
}

Term ParSorted(const Term& t) {
  if (t.arity() == 0) return t;
  if (t.is(TermKind::kPar)) {
    std::vector<Term> parts;
    ParComponents(t, parts);
    for (auto& part : parts) part = ParSorted(part);
    std::sort(parts.begin(), parts.end());
    Term acc = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) {
      acc = Par(*it, acc);
    }
    return acc;
  }
  std::vector<Term> kids;
  bool changed = false;
  for (int i = 0; i < t.arity(); ++i) {
    kids.push_back(ParSorted(t.child(i)));
    changed |= kids.back().node() != t.child(i).node();
  }
  return changed ? Rebuild(t, kids) : t;
}

}  // namespace

Term StateCanonical(const Term& t) { return AltCanonical(ParSorted(t)); }

bool IsSummand(const Term& p, const Term& q) {
  Term cp = AltCanonical(p);
  Term cq = AltCanonical(q);
  if (cp == cq) return true;
  for (const auto& s : Summands(cq)) {
    if (s == cp) return true;
  }
  return false;
}

}  // namespace stpa
