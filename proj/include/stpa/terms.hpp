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

#ifndef STPA_TERMS_HPP_
#define STPA_TERMS_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stpa/meadow.hpp"
#include "stpa/state.hpp"

namespace stpa {

enum class ActionKind : std::uint8_t {
  kAPSend,  // absolute potential send
  kRPSend,  // relative potential send
  kAPRecv,  // absolute potential receive, window [lo, hi]
  kRPRecv,  // relative potential receive, window [lo, hi]
  kAESend,  // actual send
  kAERecv,  // actual receive
};

class Action {
 public:
  static Action APSend(std::string c, std::string d, Scalar t, Point p);
  static Action RPSend(std::string c, std::string d, Scalar t, Point p);
  static Action APRecv(std::string c, std::string d, Scalar lo, ExtScalar hi,
                       Point p);
  static Action RPRecv(std::string c, std::string d, Scalar lo, ExtScalar hi,
                       Point p);
  static Action AESend(std::string c, std::string d, Scalar t, Point p);
  static Action AERecv(std::string c, std::string d, Scalar t, Point p);

  ActionKind kind() const { return kind_; }
  const std::string& channel() const { return channel_; }
  const std::string& datum() const { return datum_; }
  // Single time of sends and actual receives; window start otherwise.
  const Scalar& time() const { return time_; }
  // Window end of potential receives; equals time() for the other kinds.
  const ExtScalar& upper() const { return upper_; }
  const Point& point() const { return point_; }

  bool is_potential() const { return kind_ <= ActionKind::kRPRecv; }
  bool is_actual() const { return !is_potential(); }
  bool is_relative() const {
    return kind_ == ActionKind::kRPSend || kind_ == ActionKind::kRPRecv;
  }
  bool is_absolute() const { return !is_relative(); }
  bool is_send() const {
    return kind_ == ActionKind::kAPSend || kind_ == ActionKind::kRPSend ||
           kind_ == ActionKind::kAESend;
  }
  bool is_receive() const { return !is_send(); }
  // Member of PRAct: a potential receive, the only kind with a window.
  bool is_potential_receive() const {
    return kind_ == ActionKind::kAPRecv || kind_ == ActionKind::kRPRecv;
  }

  // Same channel, datum and point with a different time (or window).
  Action WithTime(const Scalar& t) const;

  std::size_t hash() const { return hash_; }
  friend bool operator==(const Action& a, const Action& b);
  friend std::strong_ordering operator<=>(const Action& a, const Action& b);

 private:
  Action(ActionKind k, std::string c, std::string d, Scalar t, ExtScalar hi,
         Point p);

  ActionKind kind_;
  std::string channel_;
  std::string datum_;
  Scalar time_;
  ExtScalar upper_;
  Point point_;
  std::size_t hash_;
};

Scalar lbt(const Action& a);
ExtScalar ubt(const Action& a);
// Throws InvalidArgument on potential receives.
Scalar bt(const Action& a);
const std::string& chan(const Action& a);

// A finite union of (kind, channels, optional data) atoms over actual
// actions.  Every timing and point is matched.
class ActionPattern {
 public:
  enum class Kind : std::uint8_t { kSend, kRecv, kAny };
  struct Atom {
    Kind kind;
    std::vector<std::string> channels;  // sorted, unique
    std::optional<std::vector<std::string>> data;  // sorted, unique
    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
  };

  ActionPattern() = default;
  explicit ActionPattern(std::vector<Atom> atoms);

  // Potential actions never match.
  bool Matches(const Action& a) const;
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t hash() const;

  friend bool operator==(const ActionPattern&, const ActionPattern&) = default;
  friend auto operator<=>(const ActionPattern&, const ActionPattern&) = default;

 private:
  std::vector<Atom> atoms_;
};

enum class TermKind : std::uint8_t {
  kDeadlock,  // immediate deadlock
  kADead,
  kRDead,
  kAct,
  kAlt,
  kSeq,
  kPar,
  kLeftMerge,
  kTimeout,
  kStateOp,
  kMaxProg,
  kAuxMaxProg,
  kRecConst,
  kVar,
};

struct TermNode;
class RecSpec;
using RecSpecPtr = std::shared_ptr<const RecSpec>;

// Immutable, structurally shared process term.  Hash is cached, so equality
// and hashing of large terms is cheap when they differ.
class Term {
 public:
  Term();  // immediate deadlock

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }
  int arity() const;

  const ExtScalar& dead_time() const;   // kADead, kRDead
  const Action& action() const;         // kAct
  const Term& child(int i) const;       // binary operators, state/maxprog body
  const Term& lhs() const { return child(0); }
  const Term& rhs() const { return child(1); }
  const ChannelSet& channels() const;   // kStateOp
  const Scalar& state_time() const;     // kStateOp
  const CommState& sigma() const;       // kStateOp
  const ActionPattern& pattern() const;  // kMaxProg, kAuxMaxProg
  const std::string& name() const;      // kVar, kRecConst
  const RecSpecPtr& spec() const;       // kRecConst

  std::size_t hash() const;
  const TermNode* node() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  friend struct TermFactory;
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

Term Deadlock();
Term ADead(const ExtScalar& t);
Term RDead(const ExtScalar& t);
Term Act(const Action& a);
Term Alt(const Term& a, const Term& b);
Term Seq(const Term& a, const Term& b);
Term Par(const Term& a, const Term& b);
Term LeftMerge(const Term& a, const Term& b);
Term Timeout(const Term& a, const Term& b);
Term StateOp(const ChannelSet& c, const Scalar& t, const CommState& sigma,
             const Term& body);
Term MaxProg(const ActionPattern& h, const Term& body);
Term AuxMaxProg(const ActionPattern& h, const Term& a, const Term& b);
Term RecConst(const std::string& var, const RecSpecPtr& spec);
Term Var(const std::string& name);
// Right-nested alternative composition; the empty list yields Deadlock().
Term AltOf(const std::vector<Term>& summands);
// Binary node of the same kind (and pattern, for AuxMaxProg) as `like`.
Term Rebuild(const Term& like, const std::vector<Term>& kids);

// A recursive specification: distinct variables with their right-hand
// sides.  Variables free in a right-hand side must be among the keys.
class RecSpec : public std::enable_shared_from_this<RecSpec> {
 public:
  using Equations = std::vector<std::pair<std::string, Term>>;

  static RecSpecPtr Make(Equations equations);

  const Equations& equations() const { return equations_; }
  bool has(const std::string& x) const { return index_of(x) >= 0; }
  int index_of(const std::string& x) const;
  const Term& body(const std::string& x) const;
  // The right-hand side with every variable Y replaced by <Y|E>.
  // Memoized per variable.
  Term Unfold(const std::string& x) const;
  std::size_t hash() const { return hash_; }

 private:
  explicit RecSpec(Equations eqs);
  Equations equations_;
  std::size_t hash_;
  mutable std::mutex mu_;
  mutable std::vector<std::optional<Term>> unfolded_;
};

bool operator==(const RecSpec& a, const RecSpec& b);
std::strong_ordering Compare(const RecSpec& a, const RecSpec& b);

// Positions are child-index paths from the root.
using Path = std::vector<int>;
const Term& SubtermAt(const Term& t, const Path& path);
Term ReplaceAt(const Term& t, const Path& path, const Term& replacement);

// Static classification.
std::set<std::string> FreeVars(const Term& t);
bool IsClosed(const Term& t);
bool IsAtomic(const Term& t);  // AProc
bool IsLinear(const Term& t);  // LProc
bool IsLinearSpec(const RecSpec& e);
enum class Guardedness { kGuarded, kNotShownGuarded };
Guardedness IsGuardedSpec(const RecSpec& e, int unfold_budget = 8);
// Channels occurring anywhere, including inside recursion specifications.
std::set<std::string> ChannelsOf(const Term& t);
// Finite time literals, state-operator times and record times.
std::set<Scalar> TimeLiteralsOf(const Term& t);
// Communication states carried by state operators.
std::vector<CommState> SigmasOf(const Term& t);
std::size_t TermSize(const Term& t);

// Alternatives of the Alt spine, left to right.
std::vector<Term> Summands(const Term& t);
// Flattened, sorted, duplicate-free alternatives, applied at every depth.
Term AltCanonical(const Term& t);
// AltCanonical, and in addition parallel components flattened and sorted.
// Used to identify states that differ only in how || is bracketed.
Term StateCanonical(const Term& t);
// True iff p is an alternative of q, or p equals q, modulo ACI.
bool IsSummand(const Term& p, const Term& q);

}  // namespace stpa

#endif  // STPA_TERMS_HPP_
