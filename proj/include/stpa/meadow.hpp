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

#ifndef STPA_MEADOW_HPP_
#define STPA_MEADOW_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace stpa {

// Exact rational number with the totalized operations of a signed meadow.
//
// Values whose numerator and denominator fit in 63 bits are kept inline;
// anything larger spills into a shared, immutable mpq_class.  The inline
// form is canonical: a value that fits is never stored as a big number, so
// equality can compare representations directly.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n);  // NOLINT(google-explicit-constructor)
  Scalar(long long num, long long den);

  static Scalar FromMpq(const mpq_class& q);
  // Accepts "n", "-n", "n/m" with m > 0.  Throws SyntaxError otherwise.
  static Scalar Parse(std::string_view text);

  mpq_class ToMpq() const;
  std::string str() const;
  int sgn() const;
  bool is_zero() const { return sgn() == 0; }
  bool is_integer() const;
  double ToDouble() const;
  std::size_t hash() const;

  // Totalized inverse: 0 maps to 0.
  Scalar inv() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  // a / b is a * inv(b), so division by zero yields zero.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  // Native rational comparison, used for container ordering.  The meadow
  // predicates lt/le below derive the same order from signum.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  bool small() const { return big_ == nullptr; }
  static Scalar Normalize(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

// Meadow operations.  sign and the order predicates follow the signed
// meadow axioms literally; min and max are expressed through sign so that
// they stay within the equational theory.
Scalar inv(const Scalar& u);
Scalar signum(const Scalar& u);
Scalar sub(const Scalar& u, const Scalar& v);
Scalar div(const Scalar& u, const Scalar& v);
Scalar square(const Scalar& u);
// Totalized square root: sqrt(-u) = -sqrt(u).  Throws NotRepresentable when
// |u| is not the square of a rational.
Scalar sqrt_total(const Scalar& u);
std::optional<Scalar> try_sqrt_total(const Scalar& u);
bool lt(const Scalar& u, const Scalar& v);
bool le(const Scalar& u, const Scalar& v);
Scalar min2(const Scalar& u, const Scalar& v);
Scalar max2(const Scalar& u, const Scalar& v);

// A time value, possibly infinite (only allowed as an upper bound).
class ExtScalar {
 public:
  ExtScalar() : value_(Scalar()) {}
  ExtScalar(const Scalar& v) : value_(v) {}  // NOLINT
  ExtScalar(long long v) : value_(Scalar(v)) {}  // NOLINT
  static ExtScalar Infinity() {
    ExtScalar e;
    e.value_.reset();
    return e;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  // Precondition: is_finite().
  const Scalar& value() const;
  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) = default;
  friend std::strong_ordering operator<=>(const ExtScalar& a,
                                          const ExtScalar& b);

 private:
  std::optional<Scalar> value_;
};

ExtScalar operator+(const Scalar& a, const ExtScalar& b);

struct Point {
  Scalar x, y, z;
  std::string str() const;
  std::size_t hash() const;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Euclidean distance; throws NotRepresentable when irrational.
Scalar dist(const Point& a, const Point& b);
// Squared distance, always exact.
Scalar dist_squared(const Point& a, const Point& b);

inline std::size_t HashCombine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace stpa

#endif  // STPA_MEADOW_HPP_
