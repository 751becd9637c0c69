// Copyright 2026 The dynsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dynsched/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace dynsched {

namespace {
BigInt big_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  return boost::multiprecision::gcd(a, b);
}
}  // namespace

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw InputError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = big_gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto parse_int = [](std::string_view s, BigInt* out) -> bool {
    if (s.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) return false;
    BigInt v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
      v = v * 10 + (s[i] - '0');
    }
    *out = neg ? -v : v;
    return true;
  };
  BigInt n, d = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!parse_int(text.substr(0, slash), &n)) return std::nullopt;
    if (!parse_int(text.substr(slash + 1), &d)) return std::nullopt;
    if (d <= 0) return std::nullopt;
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view tail = text.substr(dot + 1);
    if (tail.empty() || tail.find_first_not_of("0123456789") !=
                            std::string_view::npos) {
      return std::nullopt;
    }
    if (!parse_int(head.empty() ? "0" : head, &n)) return std::nullopt;
    bool neg = n < 0;
    if (neg) n = -n;
    for (char c : tail) {
      n = n * 10 + (c - '0');
      d *= 10;
    }
    if (neg) n = -n;
  } else {
    if (!parse_int(text, &n)) return std::nullopt;
  }
  return Rational(std::move(n), std::move(d));
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) --q;
  return q;
}

BigInt Rational::ceil() const {
  BigInt q = num_ / den_;
  if (num_ > 0 && q * den_ != num_) ++q;
  return q;
}

Rational Rational::floor_to_multiple(const Rational& g) const {
  if (g.sign() <= 0) throw InputError("floor_to_multiple needs positive step");
  Rational q = *this / g;
  return Rational(q.floor(), 1) * g;
}

Rational Rational::ceil_to_multiple(const Rational& g) const {
  if (g.sign() <= 0) throw InputError("ceil_to_multiple needs positive step");
  Rational q = *this / g;
  return Rational(q.ceil(), 1) * g;
}

std::optional<BigInt> Rational::integer_quotient(const Rational& g) const {
  if (g.is_zero()) return std::nullopt;
  Rational q = *this / g;
  if (!q.is_integer()) return std::nullopt;
  return q.num();
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

double Rational::to_double() const {
  return num_.convert_to<double>() / den_.convert_to<double>();
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw InputError("rational division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

Rational Rational::pow(const Rational& base, long long e) {
  if (base.is_zero() && e <= 0) throw InputError("0^nonpositive");
  bool invert = e < 0;
  unsigned long long k = invert ? -static_cast<unsigned long long>(e) : e;
  Rational acc = 1;
  Rational b = base;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  if (invert) return Rational(1) / acc;
  return acc;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return abs(b);
  if (b.is_zero()) return abs(a);
  // gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s)
  BigInt n = big_gcd(a.num() * b.den(), b.num() * a.den());
  return Rational(n, a.den() * b.den());
}

}  // namespace dynsched
