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

#include "stpa/protocols.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "stpa/errors.hpp"
#include "stpa/syntax.hpp"

namespace stpa {

namespace {

const char* const kCh[] = {"", "ch1", "ch2", "ch3", "ch4", "ch5", "ch6"};
const char kAck[] = "ack";
const char kErr[] = "err";

ExtScalar Inf() { return ExtScalar::Infinity(); }

Term RPs(int ch, const std::string& d, const Scalar& t, const Point& p) {
  return Act(Action::RPSend(kCh[ch], d, t, p));
}

Term RPr(int ch, const std::string& d, const Scalar& lo, const ExtScalar& hi,
         const Point& p) {
  return Act(Action::RPRecv(kCh[ch], d, lo, hi, p));
}

std::string Suffix(const std::string& d, int b) {
  return "_" + d + "_" + std::to_string(b);
}

// Equations of S, R, K and L, instantiated for every datum and bit.
RecSpec::Equations ProtocolEquations(const ParParams& q) {
  RecSpec::Equations eq;
  auto add = [&](std::string x, Term body) {
    eq.emplace_back(std::move(x), std::move(body));
  };

  add("S", Var("S_0"));
  for (int b = 0; b < 2; ++b) {
    std::vector<Term> in;
    for (const auto& d : q.data) {
      in.push_back(Seq(RPr(1, d, 0, Inf(), q.xi_s), Var("Sa" + Suffix(d, b))));
    }
    add("S_" + std::to_string(b), AltOf(in));
    for (const auto& d : q.data) {
      add("Sa" + Suffix(d, b),
          Seq(RPs(3, Frame(d, b), q.t_s, q.xi_s), Var("Sb" + Suffix(d, b))));
      add("Sb" + Suffix(d, b),
          Alt(Seq(RPr(5, kAck, 0, q.timeout, q.xi_s),
                  Var("S_" + std::to_string(1 - b))),
              Seq(RPs(3, Frame(d, b), q.timeout, q.xi_s),
                  Var("Sb" + Suffix(d, b)))));
    }
  }

  add("R", Var("R_0"));
  for (int b = 0; b < 2; ++b) {
    std::vector<Term> in;
    for (const auto& d : q.data) {
      in.push_back(Seq(RPr(4, Frame(d, b), 0, Inf(), q.xi_r),
                       Var("Ra" + Suffix(d, b))));
    }
    for (const auto& d : q.data) {
      in.push_back(Seq(RPr(4, Frame(d, 1 - b), 0, Inf(), q.xi_r),
                       Var("Rb_" + std::to_string(b))));
    }
    add("R_" + std::to_string(b), AltOf(in));
    for (const auto& d : q.data) {
      add("Ra" + Suffix(d, b), Seq(RPs(2, d, q.t_r, q.xi_r),
                                   Var("Rb_" + std::to_string(1 - b))));
    }
    add("Rb_" + std::to_string(b),
        Seq(RPs(6, kAck, q.t_r_ack, q.xi_r), Var("R_" + std::to_string(b))));
  }

  std::vector<Term> k_in;
  for (const auto& d : q.data) {
    for (int b = 0; b < 2; ++b) {
      k_in.push_back(Seq(RPr(3, Frame(d, b), 0, Inf(), q.xi_k),
                         Var("Ka" + Suffix(d, b))));
    }
  }
  add("K", AltOf(k_in));
  for (const auto& d : q.data) {
    for (int b = 0; b < 2; ++b) {
      add("Ka" + Suffix(d, b),
          Alt(Seq(RPs(4, Frame(d, b), q.t_k, q.xi_k), Var("K")),
              Seq(RPs(4, kErr, q.t_k, q.xi_k), Var("K"))));
    }
  }

  add("L", Seq(RPr(6, kAck, 0, Inf(), q.xi_l), Var("La")));
  add("La", Alt(Seq(RPs(5, kAck, q.t_l, q.xi_l), Var("L")),
                Seq(RPs(5, kErr, q.t_l, q.xi_l), Var("L"))));
  return eq;
}

ChannelSet Channels(int from, int to) {
  std::vector<std::string> names;
  for (int i = from; i <= to; ++i) names.emplace_back(kCh[i]);
  return ChannelSet(std::move(names));
}

ActionPattern ReceivesOn(int from, int to) {
  ActionPattern::Atom atom;
  atom.kind = ActionPattern::Kind::kRecv;
  for (int i = from; i <= to; ++i) atom.channels.emplace_back(kCh[i]);
  return ActionPattern({atom});
}

// Exploration bookkeeping carried along every path.
struct Observer {
  int delivered = 0;
  int k_errors = 0;  // consecutive
  int l_errors = 0;
  std::string last_frame;
  bool k_error_since_send = false;
  bool retransmitted_after_k_error = false;

  friend bool operator==(const Observer&, const Observer&) = default;
  std::size_t hash() const {
    std::size_t h = std::hash<std::string>()(last_frame);
    h = HashCombine(h, static_cast<std::size_t>(delivered));
    h = HashCombine(h, static_cast<std::size_t>(k_errors * 31 + l_errors));
    return HashCombine(h, (k_error_since_send ? 1 : 0) +
                              (retransmitted_after_k_error ? 2 : 0));
  }
};

struct Key {
  Term term;
  Observer obs;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    return HashCombine(k.term.hash(), k.obs.hash());
  }
};

struct Node {
  Term term;
  Scalar t;
  CommState sigma;
  Observer obs;
  int parent = -1;
  std::optional<Action> via;
  int depth = 0;
};

class Explorer {
 public:
  Explorer(const ParParams& q, std::vector<std::string> inputs)
      : q_(q), inputs_(std::move(inputs)), eval_(q.semantics()) {}

  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return nodes_.size(); }

  int AddRoot(const Term& p) {
    auto [t, s] = NaturalAmbient(p, Scalar(0), CommState());
    return Intern(Node{p, t, s, Observer{}, -1, std::nullopt, 0}).first;
  }

  TransitionSet Steps(int i) {
    const Node& n = node(i);
    return eval_.Eval(n.term, n.t, n.sigma).steps;
  }

  // Returns the index of the successor and whether it is new.
  std::pair<int, bool> Follow(int from, const Transition& tr,
                              const Observer& obs) {
    const Node& n = node(from);
    Term next = tr.next ? *tr.next : Deadlock();
    auto [t, s] = NaturalAmbient(next, tr.label.time(), n.sigma);
    return Intern(Node{next, t, s, obs, from, tr.label, n.depth + 1});
  }

  // A step that leaves term and observer unchanged, such as the sink taking
  // the same send again at the same instant.
  bool Stutters(int from, const Transition& tr, const Observer& obs) const {
    const Node& n = node(from);
    return tr.next && *tr.next == n.term && obs == n.obs;
  }

  Trace PathTo(int i, const std::optional<Action>& extra = std::nullopt) const {
    std::vector<int> chain;
    for (int k = i; k >= 0; k = node(k).parent) chain.push_back(k);
    std::reverse(chain.begin(), chain.end());
    Trace tr;
    for (std::size_t j = 1; j < chain.size(); ++j) {
      const Node& prev = node(chain[j - 1]);
      tr.steps.push_back(TraceStep{prev.t, node(chain[j]).via, "step",
                                   static_cast<int>(j - 1)});
    }
    if (extra) {
      const Node& last = node(i);
      tr.steps.push_back(TraceStep{last.t, extra, "step", last.depth});
    }
    return tr;
  }

  // Applies a label to an observer.  Returns false when the step is
  // unfair (an error beyond the bound); sets *violation on a bad delivery.
  bool Observe(const Action& a, Observer& o, std::string* violation) const {
    if (!a.is_send()) return true;
    const std::string& c = a.channel();
    const std::string& d = a.datum();
    if (c == kCh[2]) {
      if (o.delivered < static_cast<int>(inputs_.size()) &&
          inputs_[static_cast<std::size_t>(o.delivered)] == d) {
        ++o.delivered;
      } else if (violation) {
        *violation = o.delivered < static_cast<int>(inputs_.size())
                         ? "delivered " + d + " while expecting " +
                               inputs_[static_cast<std::size_t>(o.delivered)]
                         : "extra delivery of " + d + " after all inputs";
      }
    } else if (c == kCh[4]) {
      if (d == kErr) {
        ++o.k_errors;
        o.k_error_since_send = true;
      } else {
        o.k_errors = 0;
      }
    } else if (c == kCh[5]) {
      o.l_errors = d == kErr ? o.l_errors + 1 : 0;
    } else if (c == kCh[3]) {
      if (d == o.last_frame && o.k_error_since_send) {
        o.retransmitted_after_k_error = true;
      }
      o.last_frame = d;
      o.k_error_since_send = false;
    }
    return o.k_errors <= q_.retransmission_bound &&
           o.l_errors <= q_.retransmission_bound;
  }

  bool TimedExactly(const Action& a, const CommState& sigma) const {
    if (a.is_send()) return true;
    for (const auto& r : sigma.records()) {
      if (r.channel == a.channel() && r.datum == a.datum() &&
          r.time + dist(r.point, a.point()) / q_.speed == a.time()) {
        return true;
      }
    }
    return false;
  }

 private:
  std::pair<int, bool> Intern(Node n) {
    Key k{n.term, n.obs};
    auto it = index_.find(k);
    if (it != index_.end()) return {it->second, false};
    int id = static_cast<int>(nodes_.size());
    index_.emplace(std::move(k), id);
    nodes_.push_back(std::move(n));
    return {id, true};
  }

  const ParParams& q_;
  std::vector<std::string> inputs_;
  Evaluator eval_;
  std::vector<Node> nodes_;
  std::unordered_map<Key, int, KeyHash> index_;
};

void CheckInputs(const ParParams& q, const std::vector<std::string>& inputs) {
  for (const auto& d : inputs) {
    if (std::find(q.data.begin(), q.data.end(), d) == q.data.end()) {
      throw InvalidArgument("input " + d + " is not in the data set");
    }
  }
}

}  // namespace

void ParParams::Validate() const {
  if (data.empty()) throw InvalidArgument("data set must not be empty");
  std::set<std::string> seen;
  for (const auto& d : data) {
    if (d.empty() || d == kAck || d == kErr || d.find('#') != std::string::npos) {
      throw InvalidArgument("bad datum name '" + d + "'");
    }
    if (!seen.insert(d).second) throw InvalidArgument("duplicate datum " + d);
  }
  for (const Scalar* s : {&t_s, &t_k, &t_l, &t_r, &t_r_ack}) {
    if (s->sgn() < 0) throw InvalidArgument("delays must be >= 0");
  }
  if (timeout.sgn() <= 0) throw InvalidArgument("timeout must be > 0");
  if (speed.sgn() <= 0) throw InvalidArgument("speed must be > 0");
  if (retransmission_bound < 0) {
    throw InvalidArgument("retransmission bound must be >= 0");
  }
  if (depth <= 0) throw InvalidArgument("depth must be positive");
  cycle_time(*this);  // every distance must be rational
}

SemanticsOptions ParParams::semantics() const {
  SemanticsOptions o;
  o.speed = SpeedConfig::Make(speed);
  return o;
}

std::string Frame(const std::string& d, int bit) {
  return d + "#" + std::to_string(bit);
}

ActionPattern ParPriorityPattern() { return ReceivesOn(3, 6); }

Term build_par(const ParParams& params) {
  params.Validate();
  RecSpecPtr e = RecSpec::Make(ProtocolEquations(params));
  Term body = Par(RecConst("S", e),
                  Par(RecConst("K", e), Par(RecConst("L", e), RecConst("R", e))));
  return MaxProg(ParPriorityPattern(),
                 StateOp(Channels(3, 6), 0, CommState(), body));
}

Term build_closed_par(const ParParams& params,
                      const std::vector<std::string>& inputs,
                      bool max_progress) {
  params.Validate();
  CheckInputs(params, inputs);
  RecSpec::Equations eq = ProtocolEquations(params);
  std::vector<Term> sink;
  for (const auto& d : params.data) {
    sink.push_back(Seq(RPr(2, d, 0, Inf(), params.xi_r), Var("Sink")));
  }
  eq.emplace_back("Sink", AltOf(sink));
  RecSpecPtr e = RecSpec::Make(std::move(eq));

  Term body = Par(RecConst("S", e),
                  Par(RecConst("K", e),
                      Par(RecConst("L", e),
                          Par(RecConst("R", e), RecConst("Sink", e)))));
  if (!inputs.empty()) {
    // Input i is offered, then the driver hears the sender's first frame
    // for it and only then waits for an acknowledgement.  Waiting for the
    // ack straight away would take the previous ack a second time, since a
    // receive does not consume the broadcast it matches.
    Term driver = RPs(1, inputs.back(), 0, params.xi_s);
    for (std::size_t i = inputs.size() - 1; i-- > 0;) {
      int bit = static_cast<int>(i % 2);
      driver = Seq(RPs(1, inputs[i], 0, params.xi_s),
                   Seq(RPr(3, Frame(inputs[i], bit), 0, Inf(), params.xi_s),
                       Seq(RPr(5, kAck, 0, Inf(), params.xi_s), driver)));
    }
    body = Par(driver, body);
  }
  Term closed = StateOp(Channels(1, 6), 0, CommState(), body);
  if (!max_progress) return closed;
  // The sink stays outside H: it could otherwise take the same delivery
  // again and again at one instant, and priority would stop time there.
  ActionPattern h = ParPriorityPattern();
  ActionPattern::Atom input{ActionPattern::Kind::kRecv, {kCh[1]}, std::nullopt};
  std::vector<ActionPattern::Atom> atoms = h.atoms();
  atoms.push_back(input);
  return MaxProg(ActionPattern(std::move(atoms)), closed);
}

Scalar cycle_time(const ParParams& q) {
  auto leg = [&](const Point& a, const Point& b) { return dist(a, b) / q.speed; };
  return leg(q.xi_s, q.xi_k) + q.t_k + leg(q.xi_k, q.xi_r) + q.t_r +
         q.t_r_ack + leg(q.xi_r, q.xi_l) + q.t_l + leg(q.xi_l, q.xi_s);
}

bool cycle_condition(const ParParams& q) { return q.timeout > cycle_time(q); }

std::string ToString(DeliveryResult::Verdict v) {
  switch (v) {
    case DeliveryResult::Verdict::kOk:
      return "ok";
    case DeliveryResult::Verdict::kViolation:
      return "violation";
    case DeliveryResult::Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

DeliveryResult check_delivery(const ParParams& params,
                              const std::vector<std::string>& inputs,
                              std::size_t max_states) {
  Term root = build_closed_par(params, inputs, true);
  Explorer ex(params, inputs);
  DeliveryResult res;
  std::deque<int> queue{ex.AddRoot(root)};
  auto fail = [&](std::string why, Trace tr) {
    res.verdict = DeliveryResult::Verdict::kViolation;
    res.reason = std::move(why);
    res.trace = std::move(tr);
  };

  bool capped = false;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    if (ex.size() >= max_states) {
      capped = true;
      break;
    }
    TransitionSet steps = ex.Steps(cur);
    std::vector<std::pair<const Transition*, Observer>> fair;
    for (const auto& tr : steps) {
      if (!ex.TimedExactly(tr.label, ex.node(cur).sigma)) {
        res.receptions_timed_exactly = false;
      }
      Observer o = ex.node(cur).obs;
      std::string violation;
      bool keep = ex.Observe(tr.label, o, &violation);
      if (!violation.empty()) {
        fail(violation, ex.PathTo(cur, tr.label));
        res.states = ex.size();
        return res;
      }
      if (!keep) {
        ++res.pruned_transitions;
      } else if (!ex.Stutters(cur, tr, o)) {
        fair.emplace_back(&tr, o);
      }
    }

    // Quiescent: nothing fair changes the state any more.
    const Node& n = ex.node(cur);
    if (fair.empty()) {
      ++res.maximal_states;
      if (n.obs.delivered != static_cast<int>(inputs.size())) {
        Trace tr = ex.PathTo(cur);
        tr.steps.push_back(TraceStep{n.t, std::nullopt, "deadlock", n.depth});
        fail("maximal trace stops after " + std::to_string(n.obs.delivered) +
                 " of " + std::to_string(inputs.size()) + " deliveries",
             std::move(tr));
        res.states = ex.size();
        return res;
      }
      if (!res.sample_complete) res.sample_complete = ex.PathTo(cur);
      continue;
    }
    if (n.depth >= params.depth) {
      ++res.truncated_states;
      continue;
    }
    for (const auto& [tr, o] : fair) {
      auto [next, fresh] = ex.Follow(cur, *tr, o);
      if (!fresh) continue;
      if (o.retransmitted_after_k_error && !res.retransmission_after_k_error) {
        res.retransmission_after_k_error = ex.PathTo(next);
      }
      queue.push_back(next);
    }
  }
  res.states = ex.size();
  if (capped) {
    res.verdict = DeliveryResult::Verdict::kInconclusive;
    res.reason = "state limit of " + std::to_string(max_states) + " reached";
  } else if (res.maximal_states == 0) {
    res.verdict = DeliveryResult::Verdict::kInconclusive;
    res.reason = "no trace completes within depth " +
                 std::to_string(params.depth);
  } else if (res.truncated_states > 0) {
    res.reason = std::to_string(res.truncated_states) +
                 " states at the depth bound were not expanded";
  }
  return res;
}

AnomalyResult find_priority_anomaly(const ParParams& params,
                                    const std::vector<std::string>& inputs,
                                    bool max_progress, std::size_t max_states) {
  Term root = build_closed_par(params, inputs, max_progress);
  ActionPattern h = ParPriorityPattern();
  Explorer ex(params, inputs);
  AnomalyResult res;
  std::deque<int> queue{ex.AddRoot(root)};
  bool capped = false;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    TransitionSet steps = ex.Steps(cur);
    for (const auto& a : steps) {
      for (const auto& b : steps) {
        if (h.Matches(b.label) && b.label.time() < a.label.time()) {
          res.found = true;
          res.trace = ex.PathTo(cur, a.label);
          res.skipped = Print(b.label);
          res.taken = Print(a.label);
          res.states = ex.size();
          return res;
        }
      }
    }
    if (ex.node(cur).depth >= params.depth) continue;
    for (const auto& tr : steps) {
      Observer o = ex.node(cur).obs;
      if (!ex.Observe(tr.label, o, nullptr)) continue;
      if (ex.size() >= max_states) {
        capped = true;
        break;
      }
      auto [next, fresh] = ex.Follow(cur, tr, o);
      if (fresh) queue.push_back(next);
    }
  }
  res.states = ex.size();
  res.exhausted = !capped;
  return res;
}

Trace run_par(const ParParams& params, const std::vector<std::string>& inputs,
              std::uint64_t seed) {
  Term root = build_closed_par(params, inputs, true);
  RunPolicy policy;
  policy.kind = RunPolicy::Kind::kRandom;
  policy.depth = params.depth;
  policy.seed = seed;
  auto [t, s] = NaturalAmbient(root, Scalar(0), CommState());
  auto traces = run(root, t, s, policy, params.semantics());
  return traces.empty() ? Trace{} : traces.front();
}

}  // namespace stpa
