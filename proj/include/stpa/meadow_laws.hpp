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

#ifndef STPA_MEADOW_LAWS_HPP_
#define STPA_MEADOW_LAWS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stpa/meadow.hpp"

namespace stpa {

struct LawReport {
  std::string name;
  std::string equation;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string counterexample;  // first failing instance
};

// Random rationals with a bias towards 0, +-1, small values and a few
// values large enough to leave the inline representation.
Scalar RandomScalar(std::mt19937_64& rng);

// Checks every signed-meadow-with-square-root law, plus the two derived
// facts, on `samples` random instances each.  Square root laws draw their
// arguments among signed squares of random rationals.
std::vector<LawReport> MeadowSelfTest(std::size_t samples, std::uint64_t seed);

}  // namespace stpa

#endif  // STPA_MEADOW_LAWS_HPP_
