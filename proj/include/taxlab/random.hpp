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

#ifndef TAXLAB_RANDOM_HPP_
#define TAXLAB_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

#include "taxlab/bundle.hpp"
#include "taxlab/rational.hpp"
#include "taxlab/valuation.hpp"

namespace taxlab {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed for a named substream; stable across platforms.
inline std::uint64_t StreamSeed(std::uint64_t seed, std::string_view name,
                                std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return SplitMix64(SplitMix64(seed ^ h) + index);
}

// std::mt19937_64 output is fixed by the standard; distributions are not,
// so draws go through Below().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0)
      : engine_(StreamSeed(seed, stream, index)) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform integer in [0, n).
  std::uint64_t Below(std::uint64_t n) { return engine_() % n; }
  bool Coin() { return engine_() & 1u; }
  std::uint32_t Mask(int m) {
    return static_cast<std::uint32_t>(engine_() & ((1u << m) - 1));
  }

 private:
  std::mt19937_64 engine_;
};

// Monotone valuation built bundle by bundle: the best strict subset plus
// a random increment in {0, 1/den, ..., top/den}.
inline Valuation RandomMonotone(int m, Rng& rng, int top = 4, int den = 2) {
  std::vector<Rat> t(NumBundles(m));
  for (std::uint32_t s = 1; s < t.size(); ++s) {
    Rat base = 0;
    for (int j : Bundle(s).items()) base = Max(base, t[s & ~(1u << j)]);
    t[s] = base + Rat(static_cast<std::int64_t>(rng.Below(top + 1)), den);
  }
  return Valuation(m, std::move(t));
}

inline Valuation RandomAdditive(int m, Rng& rng, int top = 4, int den = 2) {
  std::vector<Rat> items(m);
  for (auto& x : items) {
    x = Rat(static_cast<std::int64_t>(rng.Below(top + 1)), den);
  }
  return Valuation::Additive(items);
}

}  // namespace taxlab

#endif  // TAXLAB_RANDOM_HPP_
