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

#include "stpa/meadow.hpp"

#include <cctype>
#include <cstdlib>
#include <functional>
#include <limits>

#include "stpa/errors.hpp"

namespace stpa {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 Gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

mpz_class MpzFrom128(i128 v) {
  bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(mag >> 64));
  mpz_class lo(static_cast<unsigned long>(mag & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool FitsSmall(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) &&
         z != std::numeric_limits<long>::min();
}

}  // namespace

Scalar::Scalar(long long n) : num_(n), den_(1) {
  if (n == std::numeric_limits<long long>::min()) *this = Normalize(n, 1);
}

Scalar::Scalar(long long num, long long den) {
  if (den == 0) throw InvalidArgument("rational literal with zero denominator");
  *this = Normalize(num, den);
}

Scalar Scalar::Normalize(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Scalar();
  u128 mag = num < 0 ? static_cast<u128>(-num) : static_cast<u128>(num);
  u128 g = Gcd(mag, static_cast<u128>(den));
  num /= static_cast<i128>(g);
  den /= static_cast<i128>(g);
  if (num <= kMax && num >= -kMax && den <= kMax) {
    Scalar s;
    s.num_ = static_cast<std::int64_t>(num);
    s.den_ = static_cast<std::int64_t>(den);
    return s;
  }
  mpq_class q(MpzFrom128(num), MpzFrom128(den));
  q.canonicalize();
  Scalar s;
  s.big_ = std::make_shared<const mpq_class>(std::move(q));
  return s;
}

Scalar Scalar::FromMpq(const mpq_class& q_in) {
  mpq_class q(q_in);
  q.canonicalize();
  if (FitsSmall(q.get_num()) && FitsSmall(q.get_den())) {
    Scalar s;
    s.num_ = q.get_num().get_si();
    s.den_ = q.get_den().get_si();
    return s;
  }
  Scalar s;
  s.big_ = std::make_shared<const mpq_class>(std::move(q));
  return s;
}

Scalar Scalar::Parse(std::string_view text) {
  std::size_t i = 0;
  auto digits = [&](std::size_t start) {
    std::size_t j = start;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == start) throw SyntaxError("expected digits in rational", start);
    return j;
  };
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t end = digits(i);
  std::string num(text.substr(0, end));
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  std::string den = "1";
  if (end < text.size() && text[end] == '/') {
    std::size_t dend = digits(end + 1);
    den = std::string(text.substr(end + 1, dend - end - 1));
    end = dend;
  }
  if (end != text.size()) throw SyntaxError("trailing characters in rational", end);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw SyntaxError("zero denominator", 0);
  return FromMpq(mpq_class(n, d));
}

mpq_class Scalar::ToMpq() const {
  if (!small()) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)),
                   mpz_class(static_cast<long>(den_)));
}

std::string Scalar::str() const {
  if (!small()) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

int Scalar::sgn() const {
  if (!small()) return ::sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Scalar::is_integer() const {
  return small() ? den_ == 1 : big_->get_den() == 1;
}

double Scalar::ToDouble() const {
  return small() ? static_cast<double>(num_) / static_cast<double>(den_)
                 : big_->get_d();
}

std::size_t Scalar::hash() const {
  if (small()) {
    return HashCombine(std::hash<std::int64_t>()(num_),
                       std::hash<std::int64_t>()(den_));
  }
  return std::hash<std::string>()(big_->get_str());
}

Scalar Scalar::inv() const {
  if (is_zero()) return Scalar();
  if (small()) return Normalize(den_, num_);
  return FromMpq(1 / *big_);
}

Scalar Scalar::operator-() const {
  if (small()) {
    Scalar s = *this;
    s.num_ = -num_;
    return s;
  }
  return FromMpq(-*big_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.small() && b.small()) {
    return Scalar::Normalize(static_cast<i128>(a.num_) * b.den_ +
                                 static_cast<i128>(b.num_) * a.den_,
                             static_cast<i128>(a.den_) * b.den_);
  }
  return Scalar::FromMpq(a.ToMpq() + b.ToMpq());
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.small() && b.small()) {
    return Scalar::Normalize(static_cast<i128>(a.num_) * b.num_,
                             static_cast<i128>(a.den_) * b.den_);
  }
  return Scalar::FromMpq(a.ToMpq() * b.ToMpq());
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.small() != b.small()) return false;
  if (a.small()) return a.num_ == b.num_ && a.den_ == b.den_;
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.small() && b.small()) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }
  int c = cmp(a.ToMpq(), b.ToMpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

Scalar inv(const Scalar& u) { return u.inv(); }
Scalar signum(const Scalar& u) { return Scalar(u.sgn()); }
Scalar sub(const Scalar& u, const Scalar& v) { return u - v; }
Scalar div(const Scalar& u, const Scalar& v) { return u * v.inv(); }
Scalar square(const Scalar& u) { return u * u; }

std::optional<Scalar> try_sqrt_total(const Scalar& u) {
  if (u.is_zero()) return Scalar();
  mpq_class q = u.ToMpq();
  mpz_class n = abs(q.get_num());
  mpz_class d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) ||
      !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Scalar root = Scalar::FromMpq(mpq_class(rn, rd));
  return u.sgn() < 0 ? -root : root;
}

Scalar sqrt_total(const Scalar& u) {
  auto r = try_sqrt_total(u);
  if (!r) throw NotRepresentable("square root of " + u.str() + " is not rational");
  return *r;
}

bool lt(const Scalar& u, const Scalar& v) {
  return signum(u - v) == Scalar(-1);
}

bool le(const Scalar& u, const Scalar& v) {
  return signum(signum(u - v) - Scalar(1)) == Scalar(-1);
}

Scalar min2(const Scalar& u, const Scalar& v) {
  Scalar s = signum(signum(u - v) - Scalar(1));
  return div(s, s) * (u - v) + v;
}

Scalar max2(const Scalar& u, const Scalar& v) {
  Scalar s = signum(signum(u - v) + Scalar(1));
  return div(s, s) * (u - v) + v;
}

const Scalar& ExtScalar::value() const {
  if (!value_) throw InvalidArgument("infinite time used where a finite one is required");
  return *value_;
}

std::string ExtScalar::str() const { return value_ ? value_->str() : "inf"; }

std::size_t ExtScalar::hash() const {
  return value_ ? value_->hash() : 0x5bd1e995u;
}

std::strong_ordering operator<=>(const ExtScalar& a, const ExtScalar& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  return a.value() <=> b.value();
}

ExtScalar operator+(const Scalar& a, const ExtScalar& b) {
  if (b.is_infinite()) return b;
  return ExtScalar(a + b.value());
}

std::string Point::str() const {
  return "(" + x.str() + "," + y.str() + "," + z.str() + ")";
}

std::size_t Point::hash() const {
  return HashCombine(HashCombine(x.hash(), y.hash()), z.hash());
}

Scalar dist_squared(const Point& a, const Point& b) {
  return square(a.x - b.x) + square(a.y - b.y) + square(a.z - b.z);
}

Scalar dist(const Point& a, const Point& b) {
  auto r = try_sqrt_total(dist_squared(a, b));
  if (!r) {
    throw NotRepresentable("distance between " + a.str() + " and " + b.str() +
                           " is irrational");
  }
  return *r;
}

}  // namespace stpa
