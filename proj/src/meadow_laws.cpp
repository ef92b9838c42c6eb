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

#include "stpa/meadow_laws.hpp"

#include <functional>

namespace stpa {

Scalar RandomScalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 19);
  int k = pick(rng);
  if (k == 0) return Scalar(0);
  if (k == 1) return Scalar(1);
  if (k == 2) return Scalar(-1);
  if (k == 3) {
    // Beyond 64 bits once multiplied out.
    std::uniform_int_distribution<long long> big(1LL << 40, 1LL << 62);
    Scalar a(big(rng), big(rng) | 1);
    return (rng() & 1) ? a * a : -(a * a);
  }
  std::uniform_int_distribution<long long> num(-1000, 1000);
  std::uniform_int_distribution<long long> den(1, 60);
  return Scalar(num(rng), den(rng));
}

namespace {

using Fn3 = std::function<bool(const Scalar&, const Scalar&, const Scalar&)>;

struct Law {
  const char* name;
  const char* equation;
  bool radicands;  // draw u, v as signed squares
  Fn3 holds;
};

Scalar SignedSquare(std::mt19937_64& rng) {
  Scalar a = RandomScalar(rng);
  Scalar s = a * a;
  return (rng() & 1) ? s : -s;
}

}  // namespace

std::vector<LawReport> MeadowSelfTest(std::size_t samples,
                                      std::uint64_t seed) {
  const Scalar one(1);
  auto s = [](const Scalar& u) { return signum(u); };
  auto r = [](const Scalar& u) { return sqrt_total(u); };
  const std::vector<Law> laws = {
      {"add-assoc", "(u + v) + w = u + (v + w)", false,
       [](auto& u, auto& v, auto& w) { return (u + v) + w == u + (v + w); }},
      {"add-comm", "u + v = v + u", false,
       [](auto& u, auto& v, auto&) { return u + v == v + u; }},
      {"add-zero", "u + 0 = u", false,
       [](auto& u, auto&, auto&) { return u + Scalar(0) == u; }},
      {"add-neg", "u + (-u) = 0", false,
       [](auto& u, auto&, auto&) { return u + (-u) == Scalar(0); }},
      {"mul-assoc", "(u * v) * w = u * (v * w)", false,
       [](auto& u, auto& v, auto& w) { return (u * v) * w == u * (v * w); }},
      {"mul-comm", "u * v = v * u", false,
       [](auto& u, auto& v, auto&) { return u * v == v * u; }},
      {"mul-one", "u * 1 = u", false,
       [](auto& u, auto&, auto&) { return u * Scalar(1) == u; }},
      {"distrib", "u * (v + w) = u * v + u * w", false,
       [](auto& u, auto& v, auto& w) { return u * (v + w) == u * v + u * w; }},
      {"inv-inv", "(u^-1)^-1 = u", false,
       [](auto& u, auto&, auto&) { return inv(inv(u)) == u; }},
      {"restricted-inverse", "u * (u * u^-1) = u", false,
       [](auto& u, auto&, auto&) { return u * (u * inv(u)) == u; }},
      {"sign-unit", "s(u / u) = u / u", false,
       [s](auto& u, auto&, auto&) { return s(div(u, u)) == div(u, u); }},
      {"sign-coUnit", "s(1 - u / u) = 1 - u / u", false,
       [s, one](auto& u, auto&, auto&) {
         return s(one - div(u, u)) == one - div(u, u);
       }},
      {"sign-minus-one", "s(-1) = -1", false,
       [s](auto&, auto&, auto&) { return s(Scalar(-1)) == Scalar(-1); }},
      {"sign-inv", "s(u^-1) = s(u)", false,
       [s](auto& u, auto&, auto&) { return s(inv(u)) == s(u); }},
      {"sign-mul", "s(u * v) = s(u) * s(v)", false,
       [s](auto& u, auto& v, auto&) { return s(u * v) == s(u) * s(v); }},
      {"sign-add",
       "(1 - (s(u) - s(v)) / (s(u) - s(v))) * (s(u + v) - s(u)) = 0", false,
       [s, one](auto& u, auto& v, auto&) {
         Scalar d = s(u) - s(v);
         return (one - div(d, d)) * (s(u + v) - s(u)) == Scalar(0);
       }},
      {"sqrt-inv", "sqrt(u^-1) = (sqrt u)^-1", true,
       [r](auto& u, auto&, auto&) { return r(inv(u)) == inv(r(u)); }},
      {"sqrt-mul", "sqrt(u * v) = sqrt(u) * sqrt(v)", true,
       [r](auto& u, auto& v, auto&) { return r(u * v) == r(u) * r(v); }},
      {"sqrt-square", "sqrt(u^2 * s(u)) = u", false,
       [r, s](auto& u, auto&, auto&) { return r(square(u) * s(u)) == u; }},
      {"sqrt-sign", "s(sqrt(u) - sqrt(v)) = s(u - v)", true,
       [r, s](auto& u, auto& v, auto&) {
         return s(r(u) - r(v)) == s(u - v);
       }},
      {"derived-inv-zero", "0^-1 = 0", false,
       [](auto&, auto&, auto&) { return inv(Scalar(0)) == Scalar(0); }},
      {"derived-sqrt-odd", "sqrt(u) = -sqrt(-u)", true,
       [r](auto& u, auto&, auto&) { return r(u) == -r(-u); }},
  };

  std::mt19937_64 rng(seed);
  std::vector<LawReport> out;
  for (const auto& law : laws) {
    LawReport rep{law.name, law.equation, 0, 0, ""};
    for (std::size_t i = 0; i < samples; ++i) {
      Scalar u = law.radicands ? SignedSquare(rng) : RandomScalar(rng);
      Scalar v = law.radicands ? SignedSquare(rng) : RandomScalar(rng);
      Scalar w = RandomScalar(rng);
      ++rep.checked;
      if (!law.holds(u, v, w)) {
        if (rep.failed++ == 0) {
          rep.counterexample =
              "u=" + u.str() + " v=" + v.str() + " w=" + w.str();
        }
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace stpa
