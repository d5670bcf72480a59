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

#ifndef TAXLAB_MENU_HPP_
#define TAXLAB_MENU_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "taxlab/bundle.hpp"
#include "taxlab/errors.hpp"
#include "taxlab/rational.hpp"
#include "taxlab/valuation.hpp"

namespace taxlab {

// A price in Rat or infinity for every bundle.
class Menu {
 public:
  Menu() = default;
  Menu(int m, std::vector<Rat> prices) : m_(m), price_(std::move(prices)) {
    CheckItemCount(m_);
    if (price_.size() != NumBundles(m_)) {
      throw DomainError("menu table has wrong size");
    }
  }

  // Price 0 on the empty bundle, infinity elsewhere.
  static Menu Empty(int m) {
    std::vector<Rat> p(NumBundles(m), Rat::Infinity());
    p[0] = 0;
    return Menu(m, std::move(p));
  }

  int m() const { return m_; }
  const std::vector<Rat>& prices() const { return price_; }
  const Rat& operator[](Bundle s) const { return price_[s.mask()]; }
  void set(Bundle s, Rat p) { price_[s.mask()] = p; }

  bool IsNormalized() const {
    if (price_[0] != 0) return false;
    for (std::uint32_t s = 0; s < price_.size(); ++s) {
      for (int j = 0; j < m_; ++j) {
        std::uint32_t t = s | (1u << j);
        if (t != s && price_[t] < price_[s]) return false;
      }
    }
    return true;
  }

  // Largest finite price.
  Rat MaxFinite() const {
    Rat b = 0;
    for (const Rat& p : price_) {
      if (p.is_finite()) b = Max(b, p);
    }
    return b;
  }

  std::string ToString() const {
    std::string s = "[";
    for (std::uint32_t b = 0; b < price_.size(); ++b) {
      if (b) s += " ";
      s += Bundle(b).ToString() + ":" + price_[b].ToString();
    }
    return s + "]";
  }

  friend bool operator==(const Menu& a, const Menu& b) {
    return a.m_ == b.m_ && a.price_ == b.price_;
  }
  friend bool operator<(const Menu& a, const Menu& b) {
    if (a.m_ != b.m_) return a.m_ < b.m_;
    return a.price_ < b.price_;
  }

 private:
  int m_ = 0;
  std::vector<Rat> price_{Rat(0)};
};

struct MenuHash {
  std::size_t operator()(const Menu& menu) const {
    std::size_t h = static_cast<std::size_t>(menu.m());
    for (const Rat& p : menu.prices()) h = h * 1000003u ^ p.Hash();
    return h;
  }
};

// Lowers each price to the cheapest superset price, then shifts so the
// empty bundle costs 0.
inline Menu normalize_menu(const Menu& raw) {
  if (raw[Bundle(0)].is_infinite()) {
    throw DomainError("menu price of the empty bundle is infinite");
  }
  const int m = raw.m();
  std::vector<Rat> p = raw.prices();
  for (int j = 0; j < m; ++j) {
    const std::uint32_t bit = 1u << j;
    for (std::uint32_t s = 0; s < p.size(); ++s) {
      if (!(s & bit) && p[s | bit] < p[s]) p[s] = p[s | bit];
    }
  }
  const Rat shift = p[0];
  for (Rat& x : p) {
    if (x.is_finite()) x -= shift;
  }
  return Menu(m, std::move(p));
}

// All bundles of maximum profit, ascending mask; infinite prices excluded.
inline std::vector<Bundle> profit_argmax_set(const Menu& menu,
                                             const Valuation& v) {
  if (menu.m() != v.m()) throw DomainError("item count mismatch");
  std::vector<Bundle> best;
  Rat best_profit;
  bool have = false;
  for (std::uint32_t s = 0; s < menu.prices().size(); ++s) {
    const Rat& price = menu[Bundle(s)];
    if (price.is_infinite()) continue;
    Rat profit = v[Bundle(s)] - price;
    if (!have || profit > best_profit) {
      best.clear();
      best_profit = profit;
      have = true;
    }
    if (profit == best_profit) best.emplace_back(s);
  }
  return best;
}

struct MenuComplexity {
  int count = 0;
  std::vector<Bundle> bundles;
};

// Bundles whose every strict superset is strictly more expensive; the
// grand bundle counts when its price is finite.
inline MenuComplexity menu_complexity(const Menu& menu) {
  if (!menu.IsNormalized()) {
    throw ContractError("menu_complexity requires a normalized menu");
  }
  const int m = menu.m();
  const Bundle full = Bundle::Full(m);
  MenuComplexity mc;
  for (std::uint32_t s = 0; s < menu.prices().size(); ++s) {
    const Bundle b(s);
    bool in = true;
    if (b == full) {
      in = menu[b].is_finite();
    } else {
      // For monotone menus the immediate supersets are the binding ones.
      for (int j = 0; j < m && in; ++j) {
        if (b.contains(j)) continue;
        if (!(menu[b] < menu[b.with(j)])) in = false;
      }
    }
    if (in) mc.bundles.push_back(b);
  }
  mc.count = static_cast<int>(mc.bundles.size());
  return mc;
}

// Pointwise minimum of additive price vectors plus offsets, with
// explicitly priced exception bundles.
struct MinAffineMenu {
  int m = 0;
  std::vector<std::vector<Rat>> vectors;
  std::vector<Rat> offsets;
  std::map<Bundle, Rat> exceptions;

  int alpha() const { return static_cast<int>(vectors.size()); }
  int beta() const { return static_cast<int>(exceptions.size()); }

  void Validate() const {
    CheckItemCount(m);
    if (vectors.size() != offsets.size()) {
      throw DomainError("min-affine vectors/offsets length mismatch");
    }
    for (const auto& p : vectors) {
      if (static_cast<int>(p.size()) != m) {
        throw DomainError("min-affine vector length mismatch");
      }
      for (const Rat& x : p) {
        if (x.is_finite() && x < 0) {
          throw DomainError("min-affine price is negative");
        }
      }
    }
    for (const Rat& r : offsets) {
      if (r.is_infinite() || r < 0) {
        throw DomainError("min-affine offset must be finite and >= 0");
      }
    }
  }
};

inline Rat eval_min_affine(const MinAffineMenu& ma, Bundle s) {
  if (auto it = ma.exceptions.find(s); it != ma.exceptions.end()) {
    return it->second;
  }
  Rat best = Rat::Infinity();
  for (std::size_t k = 0; k < ma.vectors.size(); ++k) {
    Rat sum = ma.offsets[k];
    for (int j : s.items()) {
      sum += ma.vectors[k][j];
      if (sum.is_infinite()) break;
    }
    best = Min(best, sum);
  }
  return best;
}

// The full price table of a min-affine menu.
inline Menu min_affine_table(const MinAffineMenu& ma) {
  std::vector<Rat> p(NumBundles(ma.m));
  for (std::uint32_t s = 0; s < p.size(); ++s) {
    p[s] = eval_min_affine(ma, Bundle(s));
  }
  return Menu(ma.m, std::move(p));
}

}  // namespace taxlab

#endif  // TAXLAB_MENU_HPP_
