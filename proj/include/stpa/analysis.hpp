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

#ifndef STPA_ANALYSIS_HPP_
#define STPA_ANALYSIS_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stpa/axioms.hpp"
#include "stpa/semantics.hpp"

namespace stpa {

// Linear recursive specification produced by `linearize`.  Bodies refer to
// other equations through Var terms.  Frontier variables reached at the
// depth bound are listed in `truncated` and have body ADead(their time).
struct LinearSpec {
  std::vector<std::pair<std::string, Term>> equations;  // root first
  std::string root = "X0";
  std::set<std::string> truncated;

  bool closed() const { return truncated.empty(); }
  const Term& body(const std::string& x) const;
  RecSpecPtr ToRecSpec() const;
  // The root as a recursion constant, ready for the SOS.
  Term RootTerm() const;
  std::string str() const;  // rec X0 { X0 = ...; ... }
};

LinearSpec linearize(const ChannelSet& c, const Scalar& t,
                     const CommState& sigma, const Term& p, int depth,
                     const AxiomContext& ctx = {},
                     std::size_t max_vars = 100000);

// Reads a linear specification from a parsed `rec` term.
LinearSpec LinearSpecFromTerm(const Term& rec_const);

struct BisimVerdict {
  enum class Kind { kBisimilar, kDistinguished, kInconclusive };
  Kind kind = Kind::kBisimilar;
  bool up_to_depth = false;
  std::vector<std::string> witness;  // distinguishing label path
  std::string reason;

  bool bisimilar() const { return kind == Kind::kBisimilar; }
  std::string str() const;
};

// Partition refinement over both specifications plus a termination state.
BisimVerdict bisim_linear(const LinearSpec& e1, const LinearSpec& e2);

using Instant = std::pair<Scalar, CommState>;

// Bounded bisimulation game.  Both terms start at each supplied ambient;
// successors continue at their natural ambient.  Idle capabilities are
// compared on the open future of the ambient time.
BisimVerdict bisim_definitional(const Term& p, const Term& q,
                                const std::vector<Instant>& instants,
                                int depth,
                                const SemanticsOptions& opts = {});

std::vector<Instant> relevant_instants(const Term& p, const Term& q);

// Rooted labelled transition graph with ultimate delays.
struct LtsGraph {
  struct Edge {
    Action label;
    int target;  // -1 for successful termination
  };
  std::vector<std::vector<Edge>> out;
  std::vector<std::optional<ExtScalar>> deadline;  // nullopt: cannot idle
  std::vector<bool> truncated;
  int root = 0;

  std::size_t size() const { return out.size(); }
};

// Explores the SOS from (t, sigma), identifying states by their alternative
// canonical form and ambient.
LtsGraph SosGraph(const Term& p, const Scalar& t, const CommState& sigma,
                  int depth, const SemanticsOptions& opts = {},
                  std::size_t max_states = 100000);
LtsGraph LinearGraph(const LinearSpec& e);
// Root-preserving isomorphism respecting labels, termination and deadlines.
bool Isomorphic(const LtsGraph& a, const LtsGraph& b,
                std::string* why = nullptr);

}  // namespace stpa

#endif  // STPA_ANALYSIS_HPP_
