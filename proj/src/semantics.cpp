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

#include "stpa/semantics.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "json.hpp"

#include "stpa/errors.hpp"
#include "stpa/syntax.hpp"

namespace stpa {

bool operator==(const Transition& a, const Transition& b) {
  return a.label == b.label && a.next == b.next;
}

std::strong_ordering operator<=>(const Transition& a, const Transition& b) {
  if (auto c = a.label <=> b.label; c != 0) return c;
  if (a.next.has_value() != b.next.has_value()) {
    return a.next.has_value() ? std::strong_ordering::greater
                              : std::strong_ordering::less;
  }
  if (!a.next) return std::strong_ordering::equal;
  return *a.next <=> *b.next;
}

namespace {

void Canonicalize(TransitionSet& steps) {
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
}

// Transitions of x filtered by the priority premise against the labels
// enabled in `guard`, each successor wrapped by `wrap`.
TransitionSet FilterByPriority(const TransitionSet& steps,
                               const TransitionSet& guard,
                               const ActionPattern& h,
                               const std::function<Term(const Term&)>& wrap) {
  TransitionSet out;
  for (const auto& tr : steps) {
    bool blocked = std::any_of(guard.begin(), guard.end(), [&](const Transition& b) {
      return priority_lt(h, tr.label, b.label);
    });
    if (blocked) continue;
    out.push_back(Transition{tr.label, tr.next ? std::optional<Term>(wrap(*tr.next))
                                               : std::nullopt});
  }
  return out;
}

// Idling is cut off at the earliest enabled H-action in `guard`.
IdleSet TruncateByPriority(const IdleSet& idle, const TransitionSet& guard,
                           const ActionPattern& h) {
  std::optional<Scalar> earliest;
  for (const auto& b : guard) {
    if (h.Matches(b.label) && (!earliest || b.label.time() < *earliest)) {
      earliest = b.label.time();
    }
  }
  return earliest ? idle.TruncateAbove(*earliest) : idle;
}

}  // namespace

Behaviour Evaluator::Eval(const Term& p, const Scalar& t,
                          const CommState& sigma) {
  unfolds_ = 0;
  Behaviour b = Visit(p, t, sigma);
  Canonicalize(b.steps);
  return b;
}

Behaviour Evaluator::VisitAction(const Action& a, const Scalar& t,
                                 const CommState& sigma) {
  Behaviour b;
  auto fire = [&](ActionKind k, const Scalar& at) {
    Action label = k == ActionKind::kAESend
                       ? Action::AESend(a.channel(), a.datum(), at, a.point())
                       : Action::AERecv(a.channel(), a.datum(), at, a.point());
    b.steps.push_back(Transition{std::move(label), std::nullopt});
  };
  switch (a.kind()) {
    case ActionKind::kAPSend:
    case ActionKind::kAESend:
    case ActionKind::kAERecv:
      if (t <= a.time()) {
        fire(a.kind() == ActionKind::kAERecv ? ActionKind::kAERecv
                                             : ActionKind::kAESend,
             a.time());
      }
      b.idle = IdleSet::Closed(t, a.time());
      break;
    case ActionKind::kRPSend:
      fire(ActionKind::kAESend, t + a.time());
      b.idle = IdleSet::Closed(t, t + a.time());
      break;
    case ActionKind::kAPRecv: {
      if (!(ExtScalar(t) < a.upper())) break;
      auto v = rcpt(sigma, a.channel(), a.datum(), max2(t, a.time()), a.upper(),
                    a.point(), opts_.speed);
      if (!v.empty()) {
        fire(ActionKind::kAERecv, v.front());
        b.idle = IdleSet::UpTo(v.front());
      } else {
        b.idle = IdleSet::Closed(t, a.upper());
      }
      break;
    }
    case ActionKind::kRPRecv: {
      auto v = rcpt(sigma, a.channel(), a.datum(), t + a.time(), t + a.upper(),
                    a.point(), opts_.speed);
      if (!v.empty()) {
        fire(ActionKind::kAERecv, v.front());
        b.idle = IdleSet::UpTo(v.front());
      } else {
        // Idling starts at the ambient instant, not at the window opening;
        // otherwise a closed window would leave a stretch with neither
        // action nor delay.
        b.idle = IdleSet::Closed(t, t + a.upper());
      }
      break;
    }
  }
  return b;
}

Behaviour Evaluator::Visit(const Term& p, const Scalar& t,
                           const CommState& sigma) {
  switch (p.kind()) {
    case TermKind::kDeadlock:
      return {};
    case TermKind::kADead:
      return Behaviour{{}, IdleSet::Closed(t, p.dead_time())};
    case TermKind::kRDead:
      return Behaviour{{}, IdleSet::Closed(t, t + p.dead_time())};
    case TermKind::kAct:
      return VisitAction(p.action(), t, sigma);
    case TermKind::kAlt: {
      Behaviour x = Visit(p.lhs(), t, sigma);
      Behaviour y = Visit(p.rhs(), t, sigma);
      x.steps.insert(x.steps.end(), y.steps.begin(), y.steps.end());
      x.idle = x.idle.Union(y.idle);
      return x;
    }
    case TermKind::kSeq: {
      Behaviour x = Visit(p.lhs(), t, sigma);
      for (auto& tr : x.steps) {
        tr.next = tr.next ? Seq(*tr.next, p.rhs()) : p.rhs();
      }
      return x;
    }
    case TermKind::kPar:
    case TermKind::kLeftMerge:
    case TermKind::kTimeout: {
      Behaviour x = Visit(p.lhs(), t, sigma);
      Behaviour y = Visit(p.rhs(), t, sigma);
      Behaviour out;
      for (const auto& tr : x.steps) {
        if (!y.idle.contains(tr.label.time())) continue;
        std::optional<Term> next;
        if (p.is(TermKind::kTimeout)) {
          next = tr.next;
        } else {
          next = tr.next ? Par(*tr.next, p.rhs()) : p.rhs();
        }
        out.steps.push_back(Transition{tr.label, std::move(next)});
      }
      if (p.is(TermKind::kPar)) {
        for (const auto& tr : y.steps) {
          if (!x.idle.contains(tr.label.time())) continue;
          out.steps.push_back(Transition{
              tr.label, tr.next ? Par(p.lhs(), *tr.next) : p.lhs()});
        }
      }
      out.idle = x.idle.Intersect(y.idle);
      return out;
    }
    case TermKind::kStateOp: {
      if (t != p.state_time() || !(sigma == p.sigma())) return {};
      Behaviour x = Visit(p.lhs(), t, sigma);
      Behaviour out;
      const ChannelSet& chans = p.channels();
      for (const auto& tr : x.steps) {
        const Action& a = tr.label;
        std::optional<Term> next;
        if (tr.next) {
          if (!chans.contains(a.channel())) {
            next = StateOp(chans, t, sigma, *tr.next);
          } else if (a.is_send()) {
            next = StateOp(chans, a.time(),
                           record_send(sigma, a.channel(), a.datum(), a.time(),
                                       a.point()),
                           *tr.next);
          } else {
            next = StateOp(chans, a.time(), sigma, *tr.next);
          }
        }
        out.steps.push_back(Transition{a, std::move(next)});
      }
      out.idle = x.idle.Union(IdleSet::UpTo(t));
      return out;
    }
    case TermKind::kMaxProg: {
      Behaviour x = Visit(p.lhs(), t, sigma);
      Canonicalize(x.steps);
      const ActionPattern& h = p.pattern();
      Behaviour out;
      out.steps = FilterByPriority(x.steps, x.steps, h,
                                   [&](const Term& n) { return MaxProg(h, n); });
      out.idle = TruncateByPriority(x.idle, x.steps, h);
      return out;
    }
    case TermKind::kAuxMaxProg: {
      Behaviour x = Visit(p.lhs(), t, sigma);
      Behaviour y = Visit(p.rhs(), t, sigma);
      const ActionPattern& h = p.pattern();
      Behaviour out;
      out.steps = FilterByPriority(x.steps, y.steps, h,
                                   [&](const Term& n) { return MaxProg(h, n); });
      out.idle = TruncateByPriority(x.idle, y.steps, h);
      return out;
    }
    case TermKind::kRecConst: {
      if (++unfolds_ > opts_.unfold_budget) {
        throw BudgetExceeded("recursion unfolding budget of " +
                             std::to_string(opts_.unfold_budget) + " exhausted");
      }
      return Visit(p.spec()->Unfold(p.name()), t, sigma);
    }
    case TermKind::kVar:
      throw InvalidArgument("open term: free variable " + p.name());
  }
  return {};
}

TransitionSet step_set(const Term& p, const Scalar& t, const CommState& sigma,
                       const SemanticsOptions& opts) {
  return Evaluator(opts).Eval(p, t, sigma).steps;
}

IdleSet idle_set(const Term& p, const Scalar& t, const CommState& sigma,
                 const SemanticsOptions& opts) {
  return Evaluator(opts).Eval(p, t, sigma).idle;
}

std::pair<Scalar, CommState> NaturalAmbient(const Term& p, const Scalar& t,
                                            const CommState& sigma) {
  const Term* cur = &p;
  while (cur->is(TermKind::kMaxProg) || cur->is(TermKind::kAuxMaxProg)) {
    cur = &cur->lhs();
  }
  if (cur->is(TermKind::kStateOp)) return {cur->state_time(), cur->sigma()};
  return {t, sigma};
}

namespace {

struct Runner {
  const RunPolicy& policy;
  Evaluator eval;
  std::vector<Trace> out;
  std::mt19937_64 rng;

  void Explore(const Term& p, const Scalar& t, const CommState& sigma,
               Trace& cur) {
    if (out.size() >= policy.max_traces) return;
    int depth = static_cast<int>(cur.steps.size());
    TransitionSet steps = eval.Eval(p, t, sigma).steps;
    if (steps.empty()) {
      cur.steps.push_back(TraceStep{t, std::nullopt, "deadlock", depth});
      out.push_back(cur);
      cur.steps.pop_back();
      return;
    }
    if (depth >= policy.depth) {
      Trace done = cur;
      done.truncated = true;
      out.push_back(std::move(done));
      return;
    }
    std::vector<std::size_t> order;
    if (policy.kind == RunPolicy::Kind::kRandom) {
      order.push_back(std::uniform_int_distribution<std::size_t>(
          0, steps.size() - 1)(rng));
    } else {
      for (std::size_t i = 0; i < steps.size(); ++i) order.push_back(i);
    }
    for (std::size_t i : order) {
      const Transition& tr = steps[i];
      cur.steps.push_back(TraceStep{t, tr.label, tr.next ? "step" : "term", depth});
      if (!tr.next) {
        out.push_back(cur);
      } else {
        auto [nt, ns] = NaturalAmbient(*tr.next, tr.label.time(), sigma);
        Explore(*tr.next, nt, ns, cur);
      }
      cur.steps.pop_back();
    }
  }
};

}  // namespace

std::vector<Trace> run(const Term& p, const Scalar& t0, const CommState& sigma0,
                       const RunPolicy& policy, const SemanticsOptions& opts) {
  Runner r{policy, Evaluator(opts), {}, std::mt19937_64(policy.seed)};
  Trace cur;
  r.Explore(p, t0, sigma0, cur);
  return r.out;
}

std::string TraceToJsonLines(const Trace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    nlohmann::ordered_json j;
    j["time"] = s.time.str();
    j["action"] = s.action ? nlohmann::ordered_json(Print(*s.action))
                           : nlohmann::ordered_json(nullptr);
    j["kind"] = s.kind;
    j["depth"] = s.depth;
    if (trace.truncated && i + 1 == trace.steps.size()) j["truncated"] = true;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace stpa
