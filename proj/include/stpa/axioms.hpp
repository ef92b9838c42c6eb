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

#ifndef STPA_AXIOMS_HPP_
#define STPA_AXIOMS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stpa/comm.hpp"
#include "stpa/terms.hpp"

namespace stpa {

// Axiom identifiers:
//   A1-A7, M1-M4, AD1-AD4, RD1-RD5, TO1-TO17   first table, in order
//   S1-S31                                     state operator table
//   MP1-MP7                                    maximal progress table
//   RDP                                        recursion unfolding
// Rules marked `derived` are consequences used by the normalizers:
//   TO16r   the TO16 equation read right to left
//   AC      flatten, sort and deduplicate an alternative composition
//   D1      drop an inaction summand that another summand outlasts
//   <id>*   the same schema with an infinite inaction time admitted

struct AxiomContext {
  SpeedConfig speed;
  std::int64_t unfold_budget = 10000;
};

using Bindings = std::vector<std::pair<std::string, std::string>>;

struct RuleMatch {
  Term result;
  Bindings bindings;
};

struct AxiomInfo {
  std::string id;
  std::string group;     // "I", "II", "MP", "REC" or "derived"
  std::string equation;  // ASCII rendering of the schema
  bool derived = false;
};

const std::vector<AxiomInfo>& axiom_list();
bool IsAxiomId(const std::string& id);

// Applies schema `id` at the root of p only.  Throws InvalidArgument for an
// unknown id.  Bindings are filled only when want_bindings is set.
std::optional<RuleMatch> ApplyAtRoot(const std::string& id, const Term& p,
                                     const AxiomContext& ctx,
                                     bool want_bindings = false);

struct RewriteStep {
  std::string axiom;
  Path position;
  Bindings bindings;
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

// Contracts the outermost (then leftmost) redex of schema `id`.
std::optional<Term> apply_axiom(const std::string& id, const Term& p,
                                const AxiomContext& ctx = {},
                                RewriteStep* step = nullptr);

// Replays a trace from `source`; throws InvalidArgument when a recorded step
// no longer matches.
Term Replay(const Term& source, const RewriteTrace& trace,
            const AxiomContext& ctx = {});

std::string TraceToJsonLines(const RewriteTrace& trace);

enum class NormalFormClass { kSHProc, kHProc, kOther };

struct Classification {
  NormalFormClass cls;
  std::string witness;  // for kOther: the offending subterm, printed
};

Classification ClassifyNormalForm(const Term& p);
bool IsSHProc(const Term& p);
bool IsHProc(const Term& p);
const char* ToString(NormalFormClass c);

Term alt_canonical(const Term& p);

// Normalizers.  Each one optionally appends its derivation to `trace`; the
// positions recorded there are absolute in the term being rewritten.
Term shnf(const Term& p, const AxiomContext& ctx = {},
          RewriteTrace* trace = nullptr);
Term hnf_state(const ChannelSet& c, const Scalar& t, const CommState& sigma,
               const Term& p, const AxiomContext& ctx = {},
               RewriteTrace* trace = nullptr);
Term maxpr_eliminate(const ActionPattern& h, const Term& p,
                     const AxiomContext& ctx = {},
                     RewriteTrace* trace = nullptr);
// Head normalization followed by normalization of action tails, down to
// `depth` action prefixes.
Term normalize(const Term& p, int depth, const AxiomContext& ctx = {},
               RewriteTrace* trace = nullptr);

}  // namespace stpa

#endif  // STPA_AXIOMS_HPP_
