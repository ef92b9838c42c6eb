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

#include "stpa/analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>

#include "stpa/errors.hpp"
#include "stpa/syntax.hpp"

namespace stpa {

using K = TermKind;

// ---------------------------------------------------------------------------
// Linear specifications

const Term& LinearSpec::body(const std::string& x) const {
  for (const auto& [v, b] : equations) {
    if (v == x) return b;
  }
  throw InvalidArgument("no equation for " + x);
}

RecSpecPtr LinearSpec::ToRecSpec() const { return RecSpec::Make(equations); }

Term LinearSpec::RootTerm() const { return RecConst(root, ToRecSpec()); }

std::string LinearSpec::str() const {
  std::string out = "rec " + root + " {";
  for (const auto& [v, b] : equations) {
    out += " " + v + " = " + Print(b) + ";";
  }
  out += " }";
  return out;
}

LinearSpec linearize(const ChannelSet& c, const Scalar& t,
                     const CommState& sigma, const Term& p, int depth,
                     const AxiomContext& ctx, std::size_t max_vars) {
  LinearSpec spec;
  std::unordered_map<Term, std::string, TermHash> memo;
  struct Pending {
    std::string var;
    Term tail;
    int level;
  };
  std::deque<Pending> work;
  std::vector<Term> bodies;
  std::vector<std::string> names;

  auto fresh = [&](const Term& tail, int level) {
    Term key = StateCanonical(tail);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (names.size() >= max_vars) {
      throw BudgetExceeded("linearization exceeded " +
                           std::to_string(max_vars) + " variables");
    }
    std::string v = "X" + std::to_string(names.size());
    names.push_back(v);
    bodies.emplace_back();
    memo.emplace(key, v);
    work.push_back({v, tail, level});
    return v;
  };

  auto linear_body = [&](const Term& hnf, int level) {
    std::vector<Term> parts;
    for (const Term& s : Summands(hnf)) {
      if (s.is(K::kSeq)) {
        const Term& tail = s.rhs();
        if (!tail.is(K::kStateOp)) {
          throw Error("internal: tail without state operator: " + Print(tail));
        }
        parts.push_back(Seq(s.lhs(), Var(fresh(tail, level + 1))));
      } else {
        parts.push_back(s);
      }
      // x + x = x: tails that are equal up to bracketing of || now share a
      // variable, so their summands may coincide.
      if (std::find(parts.begin(), parts.end() - 1, parts.back()) !=
          parts.end() - 1) {
        parts.pop_back();
      }
    }
    return AltOf(parts);
  };

  names.push_back("X0");
  bodies.emplace_back();
  bodies[0] = linear_body(hnf_state(c, t, sigma, p, ctx), 0);

  while (!work.empty()) {
    Pending w = std::move(work.front());
    work.pop_front();
    std::size_t idx = std::stoul(w.var.substr(1));
    if (w.level > depth) {
      spec.truncated.insert(w.var);
      bodies[idx] = ADead(w.tail.state_time());
      continue;
    }
    Term h = hnf_state(w.tail.channels(), w.tail.state_time(), w.tail.sigma(),
                       w.tail.child(0), ctx);
    bodies[idx] = linear_body(h, w.level);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    spec.equations.emplace_back(names[i], bodies[i]);
  }
  return spec;
}

LinearSpec LinearSpecFromTerm(const Term& rec_const) {
  if (!rec_const.is(K::kRecConst)) {
    throw InvalidArgument("expected a recursion constant");
  }
  const RecSpec& e = *rec_const.spec();
  if (!IsLinearSpec(e)) {
    throw InvalidArgument("specification is not linear");
  }
  LinearSpec out;
  out.root = rec_const.name();
  out.equations = e.equations();
  return out;
}

std::string BisimVerdict::str() const {
  std::string out;
  switch (kind) {
    case Kind::kBisimilar:
      out = up_to_depth ? "bisimilar up to depth" : "bisimilar";
      break;
    case Kind::kDistinguished:
      out = "distinguished";
      break;
    case Kind::kInconclusive:
      out = "inconclusive";
      break;
  }
  if (!witness.empty()) {
    out += ": ";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) out += " ; ";
      out += witness[i];
    }
  }
  if (!reason.empty()) out += " (" + reason + ")";
  return out;
}

// ---------------------------------------------------------------------------
// Graphs

namespace {

ExtScalar SummandTime(const Term& s) {
  if (s.is(K::kADead)) return s.dead_time();
  const Term& h = s.is(K::kSeq) ? s.lhs() : s;
  if (h.is(K::kAct)) return ExtScalar(h.action().time());
  throw InvalidArgument("not a linear summand: " + Print(s));
}

}  // namespace

LtsGraph LinearGraph(const LinearSpec& e) {
  LtsGraph g;
  std::map<std::string, int> index;
  for (const auto& [v, b] : e.equations) {
    index.emplace(v, static_cast<int>(index.size()));
  }
  g.out.resize(index.size());
  g.deadline.resize(index.size());
  g.truncated.resize(index.size());
  for (const auto& [v, b] : e.equations) {
    int i = index.at(v);
    g.truncated[i] = e.truncated.count(v) > 0;
    std::optional<ExtScalar> dl;
    for (const Term& s : Summands(b)) {
      ExtScalar st = SummandTime(s);
      if (!dl || *dl < st) dl = st;
      if (s.is(K::kSeq)) {
        auto it = index.find(s.rhs().name());
        if (it == index.end()) {
          throw InvalidArgument("unbound variable " + s.rhs().name());
        }
        g.out[i].push_back({s.lhs().action(), it->second});
      } else if (s.is(K::kAct)) {
        g.out[i].push_back({s.action(), -1});
      }
    }
    g.deadline[i] = dl;
  }
  g.root = index.at(e.root);
  return g;
}

LtsGraph SosGraph(const Term& p, const Scalar& t, const CommState& sigma,
                  int depth, const SemanticsOptions& opts,
                  std::size_t max_states) {
  LtsGraph g;
  Evaluator ev(opts);
  using Key = std::tuple<Term, Scalar, CommState>;
  std::map<Key, int> index;
  struct Item {
    Term term;
    Scalar t;
    CommState sigma;
    int level;
  };
  std::deque<Item> work;
  auto intern = [&](const Term& term, const Scalar& at, const CommState& s,
                    int level) {
    Key key{StateCanonical(term), at, s};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (index.size() >= max_states) {
      throw BudgetExceeded("state graph exceeded " +
                           std::to_string(max_states) + " states");
    }
    int id = static_cast<int>(index.size());
    index.emplace(std::move(key), id);
    g.out.emplace_back();
    g.deadline.emplace_back();
    g.truncated.push_back(false);
    work.push_back({term, at, s, level});
    return id;
  };
  g.root = intern(p, t, sigma, 0);
  int next = 0;
  while (!work.empty()) {
    Item it = std::move(work.front());
    work.pop_front();
    int id = next++;
    Behaviour b = ev.Eval(it.term, it.t, it.sigma);
    g.deadline[id] = b.idle.Supremum();
    if (it.level >= depth) {
      g.truncated[id] = !b.steps.empty();
      continue;
    }
    for (const auto& tr : b.steps) {
      if (tr.terminates()) {
        g.out[id].push_back({tr.label, -1});
        continue;
      }
      auto [nt, ns] = NaturalAmbient(*tr.next, bt(tr.label), it.sigma);
      int target = intern(*tr.next, nt, ns, it.level + 1);  // may grow g.out
      auto& edges = g.out[id];
      bool seen = std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
        return e.target == target && e.label == tr.label;
      });
      if (!seen) edges.push_back({tr.label, target});
    }
  }
  return g;
}

namespace {

class IsoMatcher {
 public:
  IsoMatcher(const LtsGraph& a, const LtsGraph& b)
      : a_(a), b_(b), ab_(a.size(), -2), ba_(b.size(), -2) {}

  bool Run(std::string* why) {
    why_ = why;
    if (a_.size() != b_.size()) {
      Fail("state counts differ: " + std::to_string(a_.size()) + " vs " +
           std::to_string(b_.size()));
      return false;
    }
    return Solve({{a_.root, b_.root}});
  }

 private:
  using Pairs = std::vector<std::pair<int, int>>;

  void Fail(const std::string& s) {
    if (why_ && why_->empty()) *why_ = s;
  }

  static std::vector<LtsGraph::Edge> Sorted(std::vector<LtsGraph::Edge> e) {
    std::stable_sort(e.begin(), e.end(), [](const auto& x, const auto& y) {
      if (x.label != y.label) return x.label < y.label;
      return (x.target < 0) > (y.target < 0);
    });
    return e;
  }

  // Checks everything about u and v except where their edges lead.
  bool Compatible(int u, int v, const std::vector<LtsGraph::Edge>& ea,
                  const std::vector<LtsGraph::Edge>& eb) {
    if (a_.truncated[u] != b_.truncated[v]) {
      Fail("truncation differs");
      return false;
    }
    if (!a_.truncated[u] && a_.deadline[u] != b_.deadline[v]) {
      Fail("ultimate delays differ");
      return false;
    }
    if (ea.size() != eb.size()) {
      Fail("out-degrees differ");
      return false;
    }
    for (std::size_t i = 0; i < ea.size(); ++i) {
      if (ea[i].label != eb[i].label ||
          (ea[i].target < 0) != (eb[i].target < 0)) {
        Fail("labels differ at " + Print(ea[i].label));
        return false;
      }
    }
    return true;
  }

  // Extends the current partial bijection so that every pair still pending
  // is matched.  Every choice stays open to backtracking until the whole
  // graph is consistent.
  bool Solve(Pairs pending) {
    while (!pending.empty()) {
      auto [u, v] = pending.back();
      pending.pop_back();
      if (u < 0 || v < 0) {
        if (u < 0 && v < 0) continue;
        return false;
      }
      if (ab_[u] != -2 || ba_[v] != -2) {
        if (ab_[u] == v && ba_[v] == u) continue;
        return false;
      }
      auto ea = Sorted(a_.out[u]);
      auto eb = Sorted(b_.out[v]);
      if (!Compatible(u, v, ea, eb)) return false;
      std::size_t mark = trail_.size();
      Bind(u, v);
      std::vector<bool> used(eb.size(), false);
      if (Assign(ea, eb, 0, used, pending)) return true;
      Undo(mark);
      return false;
    }
    return true;
  }

  bool Assign(const std::vector<LtsGraph::Edge>& ea,
              const std::vector<LtsGraph::Edge>& eb, std::size_t i,
              std::vector<bool>& used, Pairs& pending) {
    if (i == ea.size()) return Solve(pending);
    for (std::size_t j = 0; j < eb.size(); ++j) {
      if (used[j] || eb[j].label != ea[i].label) continue;
      if ((ea[i].target < 0) != (eb[j].target < 0)) continue;
      used[j] = true;
      pending.push_back({ea[i].target, eb[j].target});
      if (Assign(ea, eb, i + 1, used, pending)) return true;
      pending.pop_back();
      used[j] = false;
    }
    return false;
  }

  void Bind(int u, int v) {
    ab_[u] = v;
    ba_[v] = u;
    trail_.push_back({u, v});
  }
  void Undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [u, v] = trail_.back();
      trail_.pop_back();
      ab_[u] = -2;
      ba_[v] = -2;
    }
  }

  const LtsGraph& a_;
  const LtsGraph& b_;
  std::vector<int> ab_, ba_;
  std::vector<std::pair<int, int>> trail_;
  std::string* why_ = nullptr;
};

}  // namespace

bool Isomorphic(const LtsGraph& a, const LtsGraph& b, std::string* why) {
  IsoMatcher m(a, b);
  return m.Run(why);
}

// ---------------------------------------------------------------------------
// Partition refinement

BisimVerdict bisim_linear(const LinearSpec& e1, const LinearSpec& e2) {
  LtsGraph g1 = LinearGraph(e1);
  LtsGraph g2 = LinearGraph(e2);
  const int n1 = static_cast<int>(g1.size());
  const int n = n1 + static_cast<int>(g2.size());
  const int tick = n;  // the termination state
  struct State {
    std::vector<std::pair<Action, int>> edges;
    std::optional<ExtScalar> deadline;
    bool truncated = false;
  };
  std::vector<State> st(n + 1);
  auto load = [&](const LtsGraph& g, int off) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      State& s = st[off + i];
      s.deadline = g.deadline[i];
      s.truncated = g.truncated[i];
      for (const auto& e : g.out[i]) {
        s.edges.emplace_back(e.label, e.target < 0 ? tick : off + e.target);
      }
    }
  };
  load(g1, 0);
  load(g2, n1);

  // Round 0: ultimate delay, truncation and whether the state is the tick.
  std::vector<std::vector<int>> history;
  {
    using Key0 = std::tuple<bool, bool, std::optional<ExtScalar>>;
    std::map<Key0, int> ids;
    std::vector<int> block(n + 1);
    for (int i = 0; i <= n; ++i) {
      Key0 k{i == tick, st[i].truncated, st[i].deadline};
      block[i] = ids.emplace(k, static_cast<int>(ids.size())).first->second;
    }
    history.push_back(std::move(block));
  }
  for (;;) {
    const auto& prev = history.back();
    using Key = std::pair<int, std::vector<std::pair<Action, int>>>;
    std::map<Key, int> ids;
    std::vector<int> block(n + 1);
    for (int i = 0; i <= n; ++i) {
      std::vector<std::pair<Action, int>> sig;
      for (const auto& [a, t] : st[i].edges) sig.emplace_back(a, prev[t]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      Key k{prev[i], std::move(sig)};
      block[i] = ids.emplace(std::move(k), static_cast<int>(ids.size()))
                     .first->second;
    }
    std::size_t before =
        std::set<int>(prev.begin(), prev.end()).size();
    std::size_t after = ids.size();
    history.push_back(std::move(block));
    if (after == before) break;
  }

  BisimVerdict v;
  v.up_to_depth = !e1.closed() || !e2.closed();
  const int r1 = g1.root;
  const int r2 = n1 + g2.root;
  if (history.back()[r1] == history.back()[r2]) {
    v.kind = BisimVerdict::Kind::kBisimilar;
    return v;
  }
  v.kind = BisimVerdict::Kind::kDistinguished;

  auto first_split = [&](int a, int b) {
    for (std::size_t r = 0; r < history.size(); ++r) {
      if (history[r][a] != history[r][b]) return static_cast<int>(r);
    }
    return -1;
  };
  // Follow a label path that keeps the two sides apart until a difference
  // shows at round 0 or one side has no answer.
  std::function<void(int, int)> explain = [&](int a, int b) {
    int r = first_split(a, b);
    if (r <= 0) {
      auto show = [&](int s) {
        if (s == tick) return std::string("terminated");
        if (st[s].truncated) return std::string("truncated");
        return st[s].deadline ? "idles till " + st[s].deadline->str()
                              : std::string("cannot idle");
      };
      v.reason = show(a) + " vs " + show(b);
      return;
    }
    const auto& prev = history[r - 1];
    for (int side = 0; side < 2; ++side) {
      int x = side == 0 ? a : b;
      int y = side == 0 ? b : a;
      for (const auto& [lab, tx] : st[x].edges) {
        bool matched = false;
        int candidate = -1;
        for (const auto& [lab2, ty] : st[y].edges) {
          if (lab2 != lab) continue;
          if (candidate < 0) candidate = ty;
          if (prev[ty] == prev[tx]) {
            matched = true;
            break;
          }
        }
        if (matched) continue;
        v.witness.push_back(Print(lab));
        if (candidate < 0) {
          v.reason = std::string("no matching step on the ") +
                     (side == 0 ? "right" : "left");
          return;
        }
        explain(side == 0 ? tx : candidate, side == 0 ? candidate : tx);
        return;
      }
    }
    v.reason = "blocks differ";
  };
  explain(r1, r2);
  return v;
}

// ---------------------------------------------------------------------------
// Definitional game

namespace {

class Game {
 public:
  explicit Game(const SemanticsOptions& opts) : ev_(opts) {}

  // Empty optional: the pair survived `depth` rounds.
  std::optional<std::pair<std::vector<std::string>, std::string>> Play(
      const Term& p, const Instant& ap, const Term& q, const Instant& aq,
      int depth) {
    Key key{p, ap.first, ap.second, q, aq.first, aq.second};
    auto it = proven_.find(key);
    if (it != proven_.end() && it->second >= depth) return std::nullopt;

    Behaviour bp = ev_.Eval(p, ap.first, ap.second);
    Behaviour bq = ev_.Eval(q, aq.first, aq.second);
    IdleSet ip = bp.idle.After(ap.first);
    IdleSet iq = bq.idle.After(aq.first);
    if (!(ip == iq)) {
      return std::make_pair(std::vector<std::string>{},
                            "idle " + ip.str() + " vs " + iq.str());
    }
    for (int side = 0; side < 2; ++side) {
      const auto& mine = side == 0 ? bp.steps : bq.steps;
      const auto& theirs = side == 0 ? bq.steps : bp.steps;
      const Instant& amine = side == 0 ? ap : aq;
      const Instant& atheirs = side == 0 ? aq : ap;
      for (const auto& tr : mine) {
        std::optional<std::pair<std::vector<std::string>, std::string>> sub;
        bool ok = false;
        bool any = false;
        for (const auto& tr2 : theirs) {
          if (!(tr2.label == tr.label) ||
              tr2.terminates() != tr.terminates()) {
            continue;
          }
          any = true;
          if (tr.terminates() || depth <= 1) {
            ok = true;
            break;
          }
          Scalar at = bt(tr.label);
          Instant n1 = NaturalAmbient(*tr.next, at, amine.second);
          Instant n2 = NaturalAmbient(*tr2.next, at, atheirs.second);
          auto r = side == 0 ? Play(*tr.next, n1, *tr2.next, n2, depth - 1)
                             : Play(*tr2.next, n2, *tr.next, n1, depth - 1);
          if (!r) {
            ok = true;
            break;
          }
          if (!sub) sub = std::move(r);
        }
        if (ok) continue;
        std::vector<std::string> path{Print(tr.label) +
                                      (tr.terminates() ? " (terminates)" : "")};
        if (!any) {
          return std::make_pair(
              path, std::string("no matching step on the ") +
                        (side == 0 ? "right" : "left"));
        }
        path.insert(path.end(), sub->first.begin(), sub->first.end());
        return std::make_pair(path, sub->second);
      }
    }
    proven_[key] = std::max(depth, proven_[key]);
    return std::nullopt;
  }

 private:
  using Key = std::tuple<Term, Scalar, CommState, Term, Scalar, CommState>;
  Evaluator ev_;
  std::map<Key, int> proven_;
};

}  // namespace

BisimVerdict bisim_definitional(const Term& p, const Term& q,
                                const std::vector<Instant>& instants,
                                int depth, const SemanticsOptions& opts) {
  BisimVerdict v;
  v.up_to_depth = true;
  Game game(opts);
  try {
    for (const auto& at : instants) {
      auto r = game.Play(p, at, q, at, depth);
      if (r) {
        v.kind = BisimVerdict::Kind::kDistinguished;
        v.witness = std::move(r->first);
        v.reason = "at t=" + at.first.str() + " sigma=" + Print(at.second) +
                   ": " + r->second;
        return v;
      }
    }
  } catch (const BudgetExceeded& e) {
    v.kind = BisimVerdict::Kind::kInconclusive;
    v.reason = e.what();
    return v;
  }
  v.kind = BisimVerdict::Kind::kBisimilar;
  return v;
}

// ---------------------------------------------------------------------------
// Sample instants

namespace {

std::optional<Instant> StateHead(const Term& p) {
  const Term* cur = &p;
  while (cur->is(K::kMaxProg) || cur->is(K::kAuxMaxProg)) cur = &cur->child(0);
  if (cur->is(K::kStateOp)) return Instant{cur->state_time(), cur->sigma()};
  return std::nullopt;
}

}  // namespace

// When either term is headed by a state operator only its own ambient pairs
// are sampled: a state operator has no behaviour anywhere else.
std::vector<Instant> relevant_instants(const Term& p, const Term& q) {
  std::vector<Instant> out;
  auto hp = StateHead(p);
  auto hq = StateHead(q);
  if (hp || hq) {
    if (hp) out.push_back(*hp);
    if (hq && !(hp && *hp == *hq)) out.push_back(*hq);
    return out;
  }
  std::set<Scalar> lits = TimeLiteralsOf(p);
  for (const auto& s : TimeLiteralsOf(q)) lits.insert(s);
  std::set<Scalar> times{Scalar(0)};
  const Scalar* prev = nullptr;
  for (const auto& s : lits) {
    times.insert(s);
    if (prev) times.insert((*prev + s) / Scalar(2));
    prev = &s;
  }
  if (!lits.empty()) times.insert(*lits.rbegin() + Scalar(1));

  std::vector<CommState> sigmas{CommState()};
  for (const auto& s : SigmasOf(p)) sigmas.push_back(s);
  for (const auto& s : SigmasOf(q)) sigmas.push_back(s);
  std::sort(sigmas.begin(), sigmas.end());
  sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());
  for (const auto& t : times) {
    for (const auto& s : sigmas) out.emplace_back(t, s);
  }
  return out;
}

}  // namespace stpa
