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

#ifndef TAXLAB_BUNDLE_HPP_
#define TAXLAB_BUNDLE_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "taxlab/errors.hpp"

namespace taxlab {

inline constexpr int kMaxItems = 16;

// A set of items encoded as a bitmask; item j (0-based) is bit j.
// Bundles order by mask, so "lexicographically first" means smallest mask.
class Bundle {
 public:
  constexpr Bundle() = default;
  constexpr explicit Bundle(std::uint32_t mask) : mask_(mask) {}

  static Bundle Full(int m) { return Bundle((std::uint32_t{1} << m) - 1); }
  static Bundle Single(int item) { return Bundle(std::uint32_t{1} << item); }
  static Bundle Of(std::initializer_list<int> items) {
    std::uint32_t mask = 0;
    for (int j : items) mask |= std::uint32_t{1} << j;
    return Bundle(mask);
  }

  constexpr std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(int item) const { return (mask_ >> item) & 1u; }
  bool subset_of(Bundle o) const { return (mask_ & ~o.mask_) == 0; }
  Bundle with(int item) const { return Bundle(mask_ | (1u << item)); }
  Bundle without(int item) const { return Bundle(mask_ & ~(1u << item)); }
  Bundle operator|(Bundle o) const { return Bundle(mask_ | o.mask_); }
  Bundle operator&(Bundle o) const { return Bundle(mask_ & o.mask_); }
  Bundle minus(Bundle o) const { return Bundle(mask_ & ~o.mask_); }
  Bundle complement(int m) const { return Bundle(~mask_ & Full(m).mask_); }

  std::vector<int> items() const {
    std::vector<int> out;
    for (std::uint32_t x = mask_; x != 0; x &= x - 1) {
      out.push_back(std::countr_zero(x));
    }
    return out;
  }

  // 1-based set notation, e.g. "{1,3}".
  std::string ToString() const {
    std::string s = "{";
    bool first = true;
    for (int j : items()) {
      if (!first) s += ",";
      s += std::to_string(j + 1);
      first = false;
    }
    return s + "}";
  }

  friend std::ostream& operator<<(std::ostream& os, Bundle b) {
    return os << b.ToString();
  }

  friend constexpr bool operator==(Bundle, Bundle) = default;
  friend constexpr auto operator<=>(Bundle a, Bundle b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  std::uint32_t mask_ = 0;
};

inline void CheckItemCount(int m) {
  if (m < 0) throw DomainError("negative item count");
  if (m > kMaxItems) {
    throw CapacityError("item count above 16: " + std::to_string(m));
  }
}

inline std::size_t NumBundles(int m) { return std::size_t{1} << m; }

// All bundles of size k over m items, ascending by mask.
inline std::vector<Bundle> BundlesOfSize(int m, int k) {
  std::vector<Bundle> out;
  for (std::uint32_t s = 0; s < NumBundles(m); ++s) {
    if (std::popcount(s) == k) out.emplace_back(s);
  }
  return out;
}

}  // namespace taxlab

#endif  // TAXLAB_BUNDLE_HPP_
