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

#ifndef STPA_SOUNDNESS_HPP_
#define STPA_SOUNDNESS_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stpa/analysis.hpp"

namespace stpa {

// Random closed terms for property checks.  Points lie on one axis so that
// every distance is rational.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  int Int(int lo, int hi);
  bool Coin(int percent);

  Scalar Time();                     // 0..6 in halves
  ExtScalar DeadTime(bool allow_inf);
  Point Where();
  std::string Chan();
  std::string Datum();

  Action AnyAction();
  Action ActionOf(ActionKind k);
  Action AbsoluteNonWindow();  // absolute potential send or actual action
  Term Atomic(bool allow_inf = false);
  Term Any(int depth);
  Term HNF(int summands);  // head normal form built from actual actions
  CommState Sigma(const std::string& c, const std::string& d);
  ActionPattern Pattern();
  ChannelSet Covering(const Term& t, bool extra);
  Term RecTerm();

 private:
  std::mt19937_64 rng_;
};

struct SoundnessRow {
  std::string id;
  std::string group;
  bool derived = false;
  int instances = 0;        // instances whose side condition held
  int discrepancies = 0;
  int skipped = 0;          // generation attempts that did not match
  std::string counterexample;
};

struct SoundnessOptions {
  int instances = 100;
  int game_depth = 2;
  std::uint64_t seed = 1;
  std::vector<std::string> only;  // empty: every schema
};

// For each schema: random closed left-hand sides, contracted at the root,
// compared with the bisimulation game at every relevant instant.
std::vector<SoundnessRow> CheckAxiomSoundness(const SoundnessOptions& opts);

// A random left-hand side for schema `id` (not necessarily matching).
std::optional<Term> RandomRedex(const std::string& id, TermGen& g);

}  // namespace stpa

#endif  // STPA_SOUNDNESS_HPP_
