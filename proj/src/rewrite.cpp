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

#include <deque>

#include "json.hpp"
#include "stpa/axioms.hpp"
#include "stpa/errors.hpp"
#include "stpa/syntax.hpp"

namespace stpa {

std::optional<Term> apply_axiom(const std::string& id, const Term& p,
                                const AxiomContext& ctx, RewriteStep* step) {
  if (!IsAxiomId(id)) throw InvalidArgument("unknown axiom: " + id);
  // Breadth-first, so that shallower redexes win and ties go left.
  std::deque<Path> queue{Path{}};
  while (!queue.empty()) {
    Path path = std::move(queue.front());
    queue.pop_front();
    const Term& sub = SubtermAt(p, path);
    if (auto m = ApplyAtRoot(id, sub, ctx, step != nullptr)) {
      if (step) *step = RewriteStep{id, path, std::move(m->bindings)};
      return ReplaceAt(p, path, m->result);
    }
    for (int i = 0; i < sub.arity(); ++i) {
      Path next = path;
      next.push_back(i);
      queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

Term Replay(const Term& source, const RewriteTrace& trace,
            const AxiomContext& ctx) {
  Term cur = source;
  std::size_t n = 0;
  for (const auto& s : trace.steps) {
    ++n;
    const Term& sub = SubtermAt(cur, s.position);
    auto m = ApplyAtRoot(s.axiom, sub, ctx);
    if (!m) {
      throw InvalidArgument("trace step " + std::to_string(n) + " (" +
                            s.axiom + ") does not match");
    }
    cur = ReplaceAt(cur, s.position, m->result);
  }
  return cur;
}

std::string TraceToJsonLines(const RewriteTrace& trace) {
  std::string out;
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json j;
    j["axiom"] = s.axiom;
    j["position"] = s.position;
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.bindings) b[k] = v;
    j["bindings"] = b;
    out += j.dump();
    out += '\n';
  }
  return out;
}

namespace {

using K = TermKind;

bool IsSHPrime(const Term& p) {
  switch (p.kind()) {
    case K::kADead:
    case K::kRDead:
    case K::kAct:
      return true;
    case K::kTimeout:
      return IsSHPrime(p.lhs()) && IsSHPrime(p.rhs());
    default:
      return false;
  }
}

bool IsHSummand(const Term& p) {
  if (p.is(K::kADead)) return true;
  const Term& h = p.is(K::kSeq) ? p.lhs() : p;
  return h.is(K::kAct) && h.action().is_actual();
}

bool IsSHSummand(const Term& p) {
  if (p.is(K::kSeq)) return IsSHPrime(p.lhs());
  return IsSHPrime(p);
}

}  // namespace

// Inaction constants with an infinite time are accepted in both classes:
// the state operator table yields them for receive windows without end.
Classification ClassifyNormalForm(const Term& p) {
  bool h = true;
  for (const Term& s : Summands(p)) {
    if (!IsSHSummand(s)) {
      return Classification{NormalFormClass::kOther, Print(s)};
    }
    if (!IsHSummand(s)) h = false;
  }
  return Classification{h ? NormalFormClass::kHProc : NormalFormClass::kSHProc,
                        ""};
}

bool IsSHProc(const Term& p) {
  return ClassifyNormalForm(p).cls != NormalFormClass::kOther;
}

bool IsHProc(const Term& p) {
  return ClassifyNormalForm(p).cls == NormalFormClass::kHProc;
}

const char* ToString(NormalFormClass c) {
  switch (c) {
    case NormalFormClass::kSHProc:
      return "SHProc";
    case NormalFormClass::kHProc:
      return "HProc";
    case NormalFormClass::kOther:
      break;
  }
  return "Other";
}

Term alt_canonical(const Term& p) { return AltCanonical(p); }

}  // namespace stpa
