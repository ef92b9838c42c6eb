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

#ifndef STPA_SEMANTICS_HPP_
#define STPA_SEMANTICS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stpa/comm.hpp"
#include "stpa/terms.hpp"

namespace stpa {

// Finite union of intervals over the rationals, kept sorted, disjoint and
// non-adjacent.  A missing lower (upper) bound stands for minus (plus)
// infinity.
class IdleSet {
 public:
  struct Bound {
    bool infinite = true;
    Scalar value;
    bool closed = false;
    friend bool operator==(const Bound&, const Bound&) = default;
  };
  struct Interval {
    Bound lo, hi;
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  IdleSet() = default;
  static IdleSet Empty() { return IdleSet(); }
  // [lo, hi], or [lo, +inf) when hi is infinite; empty when hi < lo.
  static IdleSet Closed(const Scalar& lo, const ExtScalar& hi);
  // (-inf, hi]
  static IdleSet UpTo(const Scalar& hi);
  static IdleSet Make(std::vector<Interval> parts);

  bool empty() const { return parts_.empty(); }
  bool contains(const Scalar& s) const;
  IdleSet Union(const IdleSet& o) const;
  IdleSet Intersect(const IdleSet& o) const;
  // Intersection with (-inf, m].
  IdleSet TruncateAbove(const Scalar& m) const;
  // Intersection with (t, +inf): the part of the set that lies in the
  // future of an ambient instant t.
  IdleSet After(const Scalar& t) const;
  // Least upper bound; nullopt when empty, infinity when unbounded above.
  std::optional<ExtScalar> Supremum() const;
  const std::vector<Interval>& intervals() const { return parts_; }
  std::string str() const;

  friend bool operator==(const IdleSet&, const IdleSet&) = default;

 private:
  std::vector<Interval> parts_;
};

struct Transition {
  Action label;               // always an actual action
  std::optional<Term> next;   // nullopt stands for successful termination

  bool terminates() const { return !next.has_value(); }
  friend bool operator==(const Transition& a, const Transition& b);
  friend std::strong_ordering operator<=>(const Transition& a,
                                          const Transition& b);
};

using TransitionSet = std::vector<Transition>;

struct Behaviour {
  TransitionSet steps;  // sorted, duplicate-free
  IdleSet idle;
};

struct SemanticsOptions {
  SpeedConfig speed;
  std::int64_t unfold_budget = 10000;
};

// Computes behaviours from the rule tables.  Child behaviours are computed
// before their parents, which makes the negative premises of the maximal
// progress rules well defined.  Each top-level call gets its own unfolding
// budget.
class Evaluator {
 public:
  explicit Evaluator(SemanticsOptions opts = {}) : opts_(std::move(opts)) {}

  Behaviour Eval(const Term& p, const Scalar& t, const CommState& sigma);
  const SemanticsOptions& options() const { return opts_; }

 private:
  Behaviour Visit(const Term& p, const Scalar& t, const CommState& sigma);
  Behaviour VisitAction(const Action& a, const Scalar& t,
                        const CommState& sigma);

  SemanticsOptions opts_;
  std::int64_t unfolds_ = 0;
};

TransitionSet step_set(const Term& p, const Scalar& t, const CommState& sigma,
                       const SemanticsOptions& opts = {});
IdleSet idle_set(const Term& p, const Scalar& t, const CommState& sigma,
                 const SemanticsOptions& opts = {});

// The ambient pair at which a successor should next be evaluated: the
// parameters of its outermost state operator (looking through maximal
// progress operators), or (bt(a), fallback sigma) otherwise.
std::pair<Scalar, CommState> NaturalAmbient(const Term& p, const Scalar& t,
                                            const CommState& sigma);

struct TraceStep {
  Scalar time;                   // ambient time before the step
  std::optional<Action> action;  // absent for a final deadlock entry
  std::string kind;              // "step", "term" or "deadlock"
  int depth = 0;
};

struct Trace {
  std::vector<TraceStep> steps;
  bool truncated = false;  // depth bound reached with transitions left
};

struct RunPolicy {
  enum class Kind { kExhaustive, kRandom };
  Kind kind = Kind::kExhaustive;
  int depth = 20;
  std::uint64_t seed = 0;
  std::size_t max_traces = 10000;
};

// Maximal transition sequences from (t0, sigma0).  Exhaustive runs list
// every branch in transition order; random runs follow one branch chosen
// with a seeded generator.
std::vector<Trace> run(const Term& p, const Scalar& t0, const CommState& sigma0,
                       const RunPolicy& policy,
                       const SemanticsOptions& opts = {});

std::string TraceToJsonLines(const Trace& trace);

}  // namespace stpa

#endif  // STPA_SEMANTICS_HPP_
