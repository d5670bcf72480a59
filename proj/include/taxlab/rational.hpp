// Copyright 2026 The taxlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TAXLAB_RATIONAL_HPP_
#define TAXLAB_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>

#include "taxlab/errors.hpp"

namespace taxlab {

// Exact reduced fraction num/den with den > 0, extended by a single
// positive infinity. Arithmetic is checked and throws OverflowError.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit
  Rat(std::int64_t n, std::int64_t d) { Assign(n, d); }

  static constexpr Rat Infinity() {
    Rat r;
    r.inf_ = true;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }
  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  bool is_integer() const { return !inf_ && den_ == 1; }

  // Parses "n", "n/d", or "inf".
  static Rat Parse(const std::string& text) {
    if (text == "inf" || text == "Infinity" || text == "infinity") {
      return Infinity();
    }
    auto slash = text.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        long long n = std::stoll(text, &used);
        if (used != text.size()) throw DomainError("bad rational: " + text);
        return Rat(n);
      }
      std::string a = text.substr(0, slash);
      std::string b = text.substr(slash + 1);
      long long n = std::stoll(a, &used);
      if (used != a.size()) throw DomainError("bad rational: " + text);
      long long d = std::stoll(b, &used);
      if (used != b.size()) throw DomainError("bad rational: " + text);
      if (d == 0) throw DomainError("zero denominator: " + text);
      return Rat(n, d);
    } catch (const std::logic_error&) {
      throw DomainError("bad rational: " + text);
    }
  }

  std::string ToString() const {
    if (inf_) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Largest integer not above a finite value.
  std::int64_t Floor() const {
    RequireFinite("Floor");
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  // Nearest integer, halves rounded up.
  std::int64_t RoundHalfUp() const {
    return (*this + Rat(1, 2)).Floor();
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    if (a.inf_ || b.inf_) return Infinity();
    __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                 static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return FromWide(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    if (b.inf_) throw DomainError("subtracting infinity");
    if (a.inf_) return Infinity();
    __int128 n = static_cast<__int128>(a.num_) * b.den_ -
                 static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return FromWide(n, d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    if (a.inf_ || b.inf_) {
      const Rat& f = a.inf_ ? b : a;
      if (!f.inf_ && f.num_ <= 0) {
        throw DomainError("infinity times non-positive value");
      }
      return Infinity();
    }
    __int128 n = static_cast<__int128>(a.num_) * b.num_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return FromWide(n, d);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    a.RequireFinite("division");
    b.RequireFinite("division");
    if (b.num_ == 0) throw DomainError("division by zero");
    __int128 n = static_cast<__int128>(a.num_) * b.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.num_;
    return FromWide(n, d);
  }
  Rat operator-() const {
    RequireFinite("negation");
    return Rat(-num_, den_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (a.inf_ || b.inf_) {
      return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
    }
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.ToString();
  }

  std::size_t Hash() const {
    std::size_t h = std::hash<std::int64_t>()(num_);
    return h * 1000003u ^ std::hash<std::int64_t>()(inf_ ? -1 : den_);
  }

 private:
  void RequireFinite(const char* what) const {
    if (inf_) throw DomainError(std::string("infinite operand in ") + what);
  }

  void Assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("zero denominator");
    *this = FromWide(n, d);
  }

  static Rat FromWide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) {
      throw OverflowError("rational overflow");
    }
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  bool inf_ = false;
};

inline Rat Min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat Max(const Rat& a, const Rat& b) { return a < b ? b : a; }

struct RatHash {
  std::size_t operator()(const Rat& r) const { return r.Hash(); }
};

// Smallest k with 2^k >= x; zero for x <= 1.
inline int CeilLog2(std::uint64_t x) {
  int k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < x) ++k;
  return k;
}

}  // namespace taxlab

#endif  // TAXLAB_RATIONAL_HPP_
