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

#ifndef TAXLAB_LIBRARY_HPP_
#define TAXLAB_LIBRARY_HPP_

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "taxlab/demand_menus.hpp"
#include "taxlab/mechanism.hpp"
#include "taxlab/random.hpp"
#include "taxlab/valuation.hpp"

namespace taxlab {

// ---------------------------------------------------------------------------
// Disjointness encodings.

inline int BinomialHalf(int m) {
  return static_cast<int>(BundlesOfSize(m, m / 2).size());
}

// 0 below m/2, `high` above, and high * bit on half-size bundles; bit k
// belongs to the k-th half-size bundle in mask order.
inline Valuation EncodeDisjointness(int m, const std::string& bits,
                                    const Rat& high) {
  const auto half = BundlesOfSize(m, m / 2);
  if (bits.size() != half.size()) {
    throw DomainError("disjointness string has wrong length");
  }
  std::vector<Rat> t(NumBundles(m), Rat(0));
  for (std::uint32_t s = 0; s < t.size(); ++s) {
    if (2 * Bundle(s).size() > m) t[s] = high;
  }
  for (std::size_t k = 0; k < half.size(); ++k) {
    if (bits[k] == '1') t[half[k].mask()] = high;
  }
  return Valuation(m, std::move(t));
}

inline bool StringsIntersect(const std::string& a, const std::string& b) {
  for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
    if (a[k] == '1' && b[k] == '1') return true;
  }
  return false;
}

inline std::string RandomBits(int len, Rng& rng) {
  std::string s(len, '0');
  for (auto& c : s) c = rng.Coin() ? '1' : '0';
  return s;
}

// Bits v(S) >= threshold over half-size bundles.
inline std::string HalfSizeBits(const Valuation& v, const Rat& threshold,
                                bool exact = false) {
  const auto half = BundlesOfSize(v.m(), v.m() / 2);
  std::string s(half.size(), '0');
  for (std::size_t k = 0; k < half.size(); ++k) {
    const Rat& x = v[half[k]];
    if (exact ? x == threshold : x >= threshold) s[k] = '1';
  }
  return s;
}

inline bool AllZeroOne(const Valuation& v) {
  for (const Rat& x : v.table()) {
    if (x != 0 && x != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Helpers shared by the mechanisms.

inline Outcome EmptyOutcome(int n) {
  return {std::vector<Bundle>(n), std::vector<Rat>(n, Rat(0))};
}

inline std::int64_t RoundClamp(const Rat& x, std::int64_t lo, std::int64_t hi) {
  return std::clamp(x.RoundHalfUp(), lo, hi);
}

// A price protocol that needs no communication: the menu is a constant.
inline PriceRun ConstantPrice(const Menu& menu, Bundle s) {
  return {menu[s], Transcript()};
}

// ---------------------------------------------------------------------------
// Two players; Alice's rounded value t for item a in 1..2^c is sent in c
// bits and Bob buys a at price t when his value reaches it.
inline MechanismSpec MakeWarmupTightness(int c) {
  if (c < 1 || c > 16) throw DomainError("warmup_tightness needs 1 <= c <= 16");
  MechanismSpec spec;
  spec.id = "warmup_tightness";
  spec.label = "warmup_tightness(c=" + std::to_string(c) + ")";
  spec.n = 2;
  spec.m = 2;
  spec.B = Rat(std::int64_t{1} << c);
  spec.mode = Mode::kBit;
  spec.value_bits = c;
  const std::int64_t top = std::int64_t{1} << c;
  spec.program = [c, top](Execution& ex) {
    const std::int64_t t = RoundClamp(ex.own(0)[Bundle::Single(0)], 1, top);
    ex.Send(0, static_cast<std::uint64_t>(t - 1), c);
    Outcome out = EmptyOutcome(2);
    if (ex.SendBit(1, ex.own(1)[Bundle::Single(0)] >= Rat(t))) {
      out.allocation[1] = Bundle::Single(0);
      out.payments[1] = Rat(t);
    }
    return out;
  };
  spec.tie_protocol = [](const MechanismSpec&,
                         const std::vector<const Valuation*>&) { return 1; };
  return spec;
}

inline ValuationCatalog WarmupCatalog(int c) {
  const std::int64_t top = std::int64_t{1} << c;
  std::vector<Valuation> alice, bob;
  for (std::int64_t x = 1; x <= top; ++x) {
    alice.push_back(Valuation::Additive({Rat(x), Rat(0)}));
  }
  for (std::int64_t y = 0; y <= top + 1; ++y) {
    bob.push_back(Valuation::Additive({Rat(y), Rat(0)}));
  }
  return ValuationCatalog({alice, bob});
}

// ---------------------------------------------------------------------------
// Value-query tightness: Bob chooses among bundles T_1..T_c priced |T_k|,
// except T_t (t = Alice's rounded value) which costs |T_t| + 1/2.
inline MechanismSpec MakeValueTightness(int m, std::vector<Bundle> family,
                                        int value_bits = 4) {
  const int c = static_cast<int>(family.size());
  if (c < 1) throw DomainError("value_tightness needs a nonempty family");
  Rat b = 0;
  for (Bundle t : family) {
    if (t.empty() || !t.subset_of(Bundle::Full(m))) {
      throw DomainError("value_tightness bundles must be nonempty and in range");
    }
    b = Max(b, Rat(t.size()) + Rat(1, 2));
  }
  MechanismSpec spec;
  spec.id = "value_tightness";
  spec.label = "value_tightness(m=" + std::to_string(m) +
               ",c=" + std::to_string(c) + ")";
  spec.n = 2;
  spec.m = m;
  spec.B = b;
  spec.mode = Mode::kValue;
  spec.value_bits = value_bits;
  spec.program = [family, c](Execution& ex) {
    const Rat x = ex.ValueQuery(0, Bundle::Single(0));
    const std::int64_t t = RoundClamp(x, 1, c);
    Outcome out = EmptyOutcome(2);
    Rat best_profit = 0;
    for (int k = 0; k < c; ++k) {
      Rat price = Rat(family[k].size()) + (k + 1 == t ? Rat(1, 2) : Rat(0));
      Rat profit = ex.ValueQuery(1, family[k]) - price;
      bool better = profit > best_profit ||
                    (profit == best_profit &&
                     (out.allocation[1].empty() || family[k] < out.allocation[1]));
      if (better) {
        best_profit = profit;
        out.allocation[1] = family[k];
        out.payments[1] = price;
      }
    }
    return out;
  };
  spec.tie_protocol = [c](const MechanismSpec&,
                          const std::vector<const Valuation*>&) {
    return CeilLog2(static_cast<std::uint64_t>(c) + 1);
  };
  return spec;
}

inline std::vector<Bundle> SingletonFamily(int c) {
  std::vector<Bundle> f;
  for (int k = 0; k < c; ++k) f.push_back(Bundle::Single(k));
  return f;
}

inline std::vector<Valuation> SmallAdditiveList(int m, int count,
                                                std::uint64_t seed) {
  Rng rng(seed, "catalog");
  std::vector<Valuation> out;
  out.push_back(Valuation::Zero(m));
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 50 * count) {
    Valuation v = RandomAdditive(m, rng, 4, 2);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

inline std::vector<Valuation> SmallMonotoneList(int m, int count,
                                                std::uint64_t seed,
                                                int top = 3, int den = 2) {
  Rng rng(seed, "catalog-monotone");
  std::vector<Valuation> out;
  out.push_back(Valuation::Zero(m));
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 50 * count) {
    Valuation v = RandomMonotone(m, rng, top, den);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

inline ValuationCatalog ValueTightnessCatalog(int m, int c, int bob_count = 12) {
  std::vector<Valuation> alice;
  for (int x = 1; x <= c; ++x) {
    std::vector<Rat> items(m, Rat(0));
    items[0] = x;
    alice.push_back(Valuation::Additive(items));
  }
  return ValuationCatalog({alice, SmallMonotoneList(m, bob_count, 11)});
}

// ---------------------------------------------------------------------------
// Demand-query tightness: 2^c menus indexed by Alice's rounded value, each
// the minimum of alpha affine price vectors on the first m/2 items, plus
// `beta` singleton bundles outside them bought through value queries.

struct DemandTightnessMenu {
  MinAffineMenu affine;   // beta = 0, items outside the first half priced inf
  std::vector<Bundle> extras;
  std::vector<Rat> extra_prices;
};

inline DemandTightnessMenu DefaultDemandTightnessMenu(int m, int alpha, int beta,
                                                      int t) {
  DemandTightnessMenu menu;
  menu.affine.m = m;
  const int half = m / 2;
  for (int k = 0; k < alpha; ++k) {
    std::vector<Rat> p(m, Rat::Infinity());
    for (int j = 0; j < half; ++j) {
      p[j] = k == 0 ? Rat(t) : Rat((t + k + j) % 3 + 1, k + 1);
    }
    menu.affine.vectors.push_back(std::move(p));
    menu.affine.offsets.push_back(Rat(k, 2));
  }
  for (int k = 0; k < beta; ++k) {
    menu.extras.push_back(Bundle::Single(half + k));
    menu.extra_prices.push_back(Rat(1) + Rat((t + k) % 2, 2));
  }
  return menu;
}

inline MechanismSpec MakeDemandTightness(int m, int alpha, int beta, int c,
                                         std::vector<DemandTightnessMenu> menus = {},
                                         int value_bits = 8) {
  if (m < 2 || m % 2 != 0) throw DomainError("demand_tightness needs even m >= 2");
  if (alpha < 1) throw DomainError("demand_tightness needs alpha >= 1");
  if (beta < 0 || beta > m / 2) throw DomainError("demand_tightness needs 0 <= beta <= m/2");
  const int count = 1 << c;
  if (menus.empty()) {
    for (int t = 1; t <= count; ++t) {
      menus.push_back(DefaultDemandTightnessMenu(m, alpha, beta, t));
    }
  }
  if (static_cast<int>(menus.size()) != count) {
    throw DomainError("demand_tightness needs 2^c menus");
  }
  Rat b = 1;
  for (const auto& menu : menus) {
    menu.affine.Validate();
    Menu table = min_affine_table(menu.affine);
    b = Max(b, table.MaxFinite());
    for (const Rat& x : menu.extra_prices) b = Max(b, x);
  }
  MechanismSpec spec;
  spec.id = "demand_tightness";
  spec.label = "demand_tightness(m=" + std::to_string(m) + ",alpha=" +
               std::to_string(alpha) + ",beta=" + std::to_string(beta) +
               ",c=" + std::to_string(c) + ")";
  spec.n = 2;
  spec.m = m;
  spec.B = b;
  spec.mode = Mode::kDemand;
  spec.value_bits = value_bits;
  spec.program = [menus, count](Execution& ex) {
    const Rat x = ex.ValueQuery(0, Bundle::Single(0));
    const auto& menu = menus[RoundClamp(x, 1, count) - 1];
    ArgmaxResult r = min_affine_argmax(menu.affine, [&](const std::vector<Rat>& p) {
      return ex.DemandQuery(1, p);
    });
    Bundle best = r.bundle;
    Rat best_profit = r.profit;
    Rat best_price = eval_min_affine(menu.affine, best);
    if (best.empty()) best_price = 0;
    for (std::size_t k = 0; k < menu.extras.size(); ++k) {
      Rat profit = ex.ValueQuery(1, menu.extras[k]) - menu.extra_prices[k];
      if (profit > best_profit || (profit == best_profit && menu.extras[k] < best)) {
        best = menu.extras[k];
        best_profit = profit;
        best_price = menu.extra_prices[k];
      }
    }
    Outcome out = EmptyOutcome(2);
    out.allocation[1] = best;
    out.payments[1] = best_price;
    return out;
  };
  return spec;
}

inline ValuationCatalog DemandTightnessCatalog(int m, int c, int bob_count = 12) {
  std::vector<Valuation> alice;
  for (int x = 1; x <= (1 << c); ++x) {
    std::vector<Rat> items(m, Rat(0));
    items[0] = x;
    alice.push_back(Valuation::Additive(items));
  }
  return ValuationCatalog({alice, SmallMonotoneList(m, bob_count, 23, 4, 2)});
}

// ---------------------------------------------------------------------------
// Menu gadget: player 1 hides a half-size bundle T (value 1/4); player 2
// buys from |S| + [S = T]/2 using the three-phase demand procedure.

inline bool GadgetDomain(int player, const Valuation& v) {
  if (player != 0) return true;
  int hits = 0;
  for (Bundle s : BundlesOfSize(v.m(), v.m() / 2)) {
    if (v[s] == Rat(1, 4)) ++hits;
  }
  return hits <= 1;
}

inline MechanismSpec MakeMtGadget(int m, int value_bits = 4) {
  if (m < 2 || m % 2 != 0) throw DomainError("mt_gadget needs even m >= 2");
  MechanismSpec spec;
  spec.id = "mt_gadget";
  spec.label = "mt_gadget(m=" + std::to_string(m) + ")";
  spec.n = 2;
  spec.m = m;
  spec.B = Rat(m);
  spec.mode = Mode::kDemand;
  spec.value_bits = value_bits;
  spec.domain = GadgetDomain;
  spec.general_truthful = {false, true};
  spec.program = [m](Execution& ex) {
    DemandOracle bob = [&](const std::vector<Rat>& p) { return ex.DemandQuery(1, p); };
    DemandOracle alice = [&](const std::vector<Rat>& p) { return ex.DemandQuery(0, p); };
    ArgmaxResult r = mt_gadget_argmax(
        m, bob, [&](Bundle s) { return GadgetPriceCheck(m, s, alice); });
    Outcome out = EmptyOutcome(2);
    out.allocation[1] = r.bundle;
    out.payments[1] = ex.own(1)[r.bundle] - r.profit;
    return out;
  };
  spec.price_protocol = [](const MechanismSpec& sp, int i,
                           const std::vector<const Valuation*>& profile,
                           Bundle s) -> PriceRun {
    if (i == 0) return ConstantPrice(Menu::Empty(sp.m), s);
    MechanismSpec probe_spec = sp;
    Transcript tr;
    bool hidden = false;
    if (s.size() * 2 == sp.m) {
      std::vector<Rat> p(sp.m, Rat::Infinity());
      for (int j : s.items()) p[j] = 0;
      DemandAnswer a = demand_query(*profile[0], p);
      tr.Append({0, sp.m + sp.value_bits,
                 "d" + std::to_string(a.bundle.mask()) + ":" + a.value.ToString()});
      hidden = a.bundle == s && a.value == Rat(1, 4);
    }
    return {Rat(s.size()) + (hidden ? Rat(1, 2) : Rat(0)), tr};
  };
  spec.tie_protocol = [](const MechanismSpec& sp,
                         const std::vector<const Valuation*>&) { return sp.m; };
  return spec;
}

inline ValuationCatalog MtGadgetCatalog(int m, int bob_count = 8) {
  std::vector<Valuation> alice;
  for (Bundle t : BundlesOfSize(m, m / 2)) alice.push_back(GadgetValuation(m, t));
  return ValuationCatalog({alice, SmallMonotoneList(m, bob_count, 31, 3, 2)});
}

// ---------------------------------------------------------------------------
// Disjointness reductions. Items a and b are items 1 and 2.

inline MechanismSpec MakeDropTie(int m) {
  if (m < 4 || m % 2 != 0) throw DomainError("drop_tie needs even m >= 4");
  MechanismSpec spec;
  spec.id = "drop_tie";
  spec.label = "drop_tie(m=" + std::to_string(m) + ")";
  spec.n = 2;
  spec.m = m;
  spec.B = 1;
  spec.mode = Mode::kBit;
  spec.program = [m](Execution& ex) {
    const Bundle a = Bundle::Single(0), b = Bundle::Single(1);
    const Valuation& v2 = ex.own(1);
    Outcome out = EmptyOutcome(2);
    if (v2[a] > v2[b]) {
      ex.Send(1, 0, 2);
      out.allocation[1] = a;
      return out;
    }
    if (v2[b] > v2[a]) {
      ex.Send(1, 1, 2);
      out.allocation[1] = b;
      return out;
    }
    ex.Send(1, 2, 2);
    const bool alice_01 = ex.SendBit(0, AllZeroOne(ex.own(0)));
    const bool bob_01 = ex.SendBit(1, AllZeroOne(v2));
    if (!alice_01 || !bob_01) {
      out.allocation[1] = a;
      return out;
    }
    const std::string bits = HalfSizeBits(ex.own(0), Rat(1), true);
    Transcript dummy;
    for (char c : bits) ex.SendBit(0, c == '1');
    const bool hit = ex.SendBit(1, StringsIntersect(bits, HalfSizeBits(v2, Rat(1), true)));
    out.allocation[1] = hit ? a : b;
    (void)m;
    return out;
  };
  spec.price_protocol = [](const MechanismSpec& sp, int i,
                           const std::vector<const Valuation*>&, Bundle s) {
    Menu menu = Menu::Empty(sp.m);
    if (i == 1) {
      menu.set(Bundle::Single(0), 0);
      menu.set(Bundle::Single(1), 0);
    }
    return ConstantPrice(menu, s);
  };
  spec.tie_protocol = [](const MechanismSpec& sp,
                         const std::vector<const Valuation*>& profile) {
    return run_mechanism(sp, profile).transcript.bits();
  };
  return spec;
}

inline MechanismSpec MakeDropTax(int m) {
  if (m < 4 || m % 2 != 0) throw DomainError("drop_tax needs even m >= 4");
  MechanismSpec spec;
  spec.id = "drop_tax";
  spec.label = "drop_tax(m=" + std::to_string(m) + ")";
  spec.n = 2;
  spec.m = m;
  spec.B = 1;
  spec.mode = Mode::kBit;
  spec.program = [m](Execution& ex) {
    const auto half = BundlesOfSize(m, m / 2);
    const std::string offered = HalfSizeBits(ex.own(0), Rat(1));
    for (char c : offered) ex.SendBit(0, c == '1');
    const Valuation& v2 = ex.own(1);
    Bundle best;
    Rat best_value;
    bool have = false;
    for (std::size_t k = 0; k < half.size(); ++k) {
      if (offered[k] != '1' || v2[half[k]] < 1) continue;
      if (!have || v2[half[k]] > best_value) {
        best = half[k];
        best_value = v2[half[k]];
        have = true;
      }
    }
    ex.Send(1, best.mask(), m);
    Outcome out = EmptyOutcome(2);
    if (have) {
      out.allocation[1] = best;
      out.payments[1] = 1;
    }
    return out;
  };
  spec.price_protocol = [](const MechanismSpec& sp, int i,
                           const std::vector<const Valuation*>& profile,
                           Bundle s) -> PriceRun {
    if (i == 0 || s.empty()) {
      return {s.empty() ? Rat(0) : Rat::Infinity(), Transcript()};
    }
    bool offered = false;
    if (2 * s.size() <= sp.m) {
      for (Bundle t : BundlesOfSize(sp.m, sp.m / 2)) {
        if (s.subset_of(t) && (*profile[0])[t] >= 1) offered = true;
      }
    }
    Transcript tr;
    tr.Append({0, 1, offered ? "1" : "0"});
    return {offered ? Rat(1) : Rat::Infinity(), tr};
  };
  spec.tie_protocol = [](const MechanismSpec& sp,
                         const std::vector<const Valuation*>&) { return sp.m; };
  return spec;
}

inline MechanismSpec MakeDropPrice(int m) {
  if (m < 4 || m % 2 != 0) throw DomainError("drop_price needs even m >= 4");
  MechanismSpec spec;
  spec.id = "drop_price";
  spec.label = "drop_price(m=" + std::to_string(m) + ")";
  spec.n = 3;
  spec.m = m;
  spec.B = 2;
  spec.mode = Mode::kBit;
  auto price_of_a = [](Execution* ex, const Valuation& v1, const Valuation& v2,
                       Transcript* tr) {
    const std::string bits = HalfSizeBits(v1, Rat(1), true);
    const bool hit = StringsIntersect(bits, HalfSizeBits(v2, Rat(1), true));
    if (ex) {
      for (char c : bits) ex->SendBit(0, c == '1');
      ex->SendBit(1, hit);
    } else {
      tr->Append({0, static_cast<int>(bits.size()), bits});
      tr->Append({1, 1, hit ? "1" : "0"});
    }
    return hit ? Rat(1) : Rat(2);
  };
  spec.program = [price_of_a](Execution& ex) {
    const Rat price = price_of_a(&ex, ex.own(0), ex.own(1), nullptr);
    Outcome out = EmptyOutcome(3);
    if (ex.SendBit(2, ex.own(2)[Bundle::Single(0)] >= price)) {
      out.allocation[2] = Bundle::Single(0);
      out.payments[2] = price;
    }
    return out;
  };
  spec.price_protocol = [price_of_a](const MechanismSpec& sp, int i,
                                     const std::vector<const Valuation*>& profile,
                                     Bundle s) -> PriceRun {
    if (s.empty()) return {Rat(0), Transcript()};
    if (i != 2 || s != Bundle::Single(0)) return {Rat::Infinity(), Transcript()};
    Transcript tr;
    Rat p = price_of_a(nullptr, *profile[0], *profile[1], &tr);
    (void)sp;
    return {p, tr};
  };
  spec.tie_protocol = [](const MechanismSpec&,
                         const std::vector<const Valuation*>&) { return 0; };
  return spec;
}

inline std::vector<Valuation> EncodedList(int m, int count, const Rat& high,
                                          std::uint64_t seed) {
  Rng rng(seed, "encoded");
  const int len = BinomialHalf(m);
  std::vector<Valuation> out;
  out.push_back(EncodeDisjointness(m, std::string(len, '0'), high));
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 50 * count) {
    Valuation v = EncodeDisjointness(m, RandomBits(len, rng), high);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

inline ValuationCatalog DropTieCatalog(int m, int count = 8) {
  return ValuationCatalog({EncodedList(m, count, 1, 41), EncodedList(m, count, 1, 42)});
}

inline ValuationCatalog DropTaxCatalog(int m, int count = 8) {
  return ValuationCatalog({EncodedList(m, count, 1, 51), EncodedList(m, count, 2, 52)});
}

inline ValuationCatalog DropPriceCatalog(int m, int count = 6) {
  std::vector<Valuation> carol;
  for (Rat x : {Rat(0), Rat(1), Rat(3, 2), Rat(2), Rat(3)}) {
    std::vector<Rat> items(m, Rat(0));
    items[0] = x;
    carol.push_back(Valuation::Additive(items));
  }
  return ValuationCatalog({EncodedList(m, count, 1, 61), EncodedList(m, count, 1, 62), carol});
}

// ---------------------------------------------------------------------------
// Posted item prices; players buy in index order from the items still
// unsold, through one demand query each or by value-querying every bundle.
inline MechanismSpec MakePostedPrices(std::vector<Rat> prices, int n,
                                      Mode mode = Mode::kDemand,
                                      int value_bits = 4) {
  const int m = static_cast<int>(prices.size());
  CheckItemCount(m);
  if (n < 1) throw DomainError("posted_prices needs n >= 1");
  if (mode == Mode::kBit) throw DomainError("posted_prices is a query mechanism");
  Rat b = 0;
  std::string plist;
  for (const Rat& p : prices) {
    if (p.is_infinite() || p < 0) throw DomainError("posted price must be finite and >= 0");
    b += p;
    plist += (plist.empty() ? "" : ",") + p.ToString();
  }
  MechanismSpec spec;
  spec.id = "posted_prices";
  spec.label = "posted_prices(p=" + plist + ",n=" + std::to_string(n) + "," +
               ModeName(mode) + ")";
  spec.n = n;
  spec.m = m;
  spec.B = Max(b, Rat(1));
  spec.mode = mode;
  spec.value_bits = value_bits;
  spec.program = [prices, n, m, mode](Execution& ex) {
    Outcome out = EmptyOutcome(n);
    Bundle left = Bundle::Full(m);
    for (int i = 0; i < n; ++i) {
      Bundle got;
      if (mode == Mode::kDemand) {
        std::vector<Rat> q(m, Rat::Infinity());
        for (int j : left.items()) q[j] = prices[j];
        got = ex.DemandQuery(i, q).bundle;
      } else {
        Rat best = 0;
        for (std::uint32_t s = 1; s < NumBundles(m); ++s) {
          Bundle b(s);
          if (!b.subset_of(left)) continue;
          Rat cost = 0;
          for (int j : b.items()) cost += prices[j];
          Rat profit = ex.ValueQuery(i, b) - cost;
          if (profit > best) {
            best = profit;
            got = b;
          }
        }
      }
      Rat pay = 0;
      for (int j : got.items()) pay += prices[j];
      out.allocation[i] = got;
      out.payments[i] = pay;
      left = left.minus(got);
    }
    return out;
  };
  return spec;
}

inline ValuationCatalog PostedCatalog(int m, int n, int count = 6) {
  std::vector<std::vector<Valuation>> players;
  for (int i = 0; i < n; ++i) {
    players.push_back(SmallMonotoneList(m, count, 71 + i, 3, 2));
  }
  return ValuationCatalog(players);
}

// ---------------------------------------------------------------------------
// JSON instantiation: {"id": ..., "params": {...}}.

inline std::vector<Rat> RatList(const nlohmann::json& j) {
  std::vector<Rat> out;
  for (const auto& x : j) {
    out.push_back(x.is_string() ? Rat::Parse(x.get<std::string>())
                                : Rat(x.get<std::int64_t>()));
  }
  return out;
}

inline MechanismSpec make_example(const std::string& id,
                                  const nlohmann::json& params = nlohmann::json::object()) {
  auto get = [&](const char* key, int dflt) {
    return params.contains(key) ? params.at(key).get<int>() : dflt;
  };
  if (id == "warmup_tightness") return MakeWarmupTightness(get("c", 2));
  if (id == "value_tightness") {
    const int c = get("c", 2);
    const int m = get("m", std::max(c, 1));
    std::vector<Bundle> family = SingletonFamily(c);
    if (params.contains("family")) {
      family.clear();
      for (const auto& b : params.at("family")) {
        family.emplace_back(b.get<std::uint32_t>());
      }
    }
    return MakeValueTightness(m, family);
  }
  if (id == "demand_tightness") {
    return MakeDemandTightness(get("m", 4), get("alpha", 2), get("beta", 0), get("c", 1));
  }
  if (id == "mt_gadget") return MakeMtGadget(get("m", 4));
  if (id == "drop_tie") return MakeDropTie(get("m", 4));
  if (id == "drop_tax") return MakeDropTax(get("m", 4));
  if (id == "drop_price") return MakeDropPrice(get("m", 4));
  if (id == "posted_prices") {
    std::vector<Rat> p = params.contains("p") ? RatList(params.at("p"))
                                              : std::vector<Rat>{1, 1};
    Mode mode = Mode::kDemand;
    if (params.contains("mode")) {
      const std::string name = params.at("mode").get<std::string>();
      if (name == "value") {
        mode = Mode::kValue;
      } else if (name != "demand") {
        throw DomainError("posted_prices mode must be value or demand");
      }
    }
    return MakePostedPrices(p, get("n", 1), mode);
  }
  throw DomainError("unknown mechanism id: " + id);
}

// Canonical catalog for a library mechanism instance.
inline ValuationCatalog DefaultCatalog(const MechanismSpec& spec,
                                       const nlohmann::json& params = nlohmann::json::object()) {
  auto get = [&](const char* key, int dflt) {
    return params.contains(key) ? params.at(key).get<int>() : dflt;
  };
  const int m = spec.m;
  if (spec.id == "warmup_tightness") return WarmupCatalog(get("c", 2));
  if (spec.id == "value_tightness") return ValueTightnessCatalog(m, get("c", 2));
  if (spec.id == "demand_tightness") return DemandTightnessCatalog(m, get("c", 1));
  if (spec.id == "mt_gadget") return MtGadgetCatalog(m);
  if (spec.id == "drop_tie") return DropTieCatalog(m);
  if (spec.id == "drop_tax") return DropTaxCatalog(m);
  if (spec.id == "drop_price") return DropPriceCatalog(m);
  if (spec.id == "posted_prices") return PostedCatalog(m, spec.n);
  throw DomainError("no default catalog for " + spec.id);
}

struct LibraryInstance {
  MechanismSpec spec;
  ValuationCatalog catalog;
  nlohmann::json params;
};

// The library mechanisms at desk-scale sizes with m <= max_m.
inline std::vector<LibraryInstance> LibraryInstances(int max_m = 6) {
  std::vector<std::pair<std::string, nlohmann::json>> ids = {
      {"warmup_tightness", {{"c", 1}}},
      {"warmup_tightness", {{"c", 2}}},
      {"warmup_tightness", {{"c", 3}}},
      {"value_tightness", {{"c", 2}, {"m", 2}}},
      {"value_tightness", {{"c", 3}, {"m", 4}}},
      {"demand_tightness", {{"m", 4}, {"alpha", 2}, {"beta", 0}, {"c", 1}}},
      {"demand_tightness", {{"m", 4}, {"alpha", 3}, {"beta", 1}, {"c", 2}}},
      {"mt_gadget", {{"m", 4}}},
      {"mt_gadget", {{"m", 6}}},
      {"drop_tie", {{"m", 4}}},
      {"drop_tax", {{"m", 4}}},
      {"drop_price", {{"m", 4}}},
      {"posted_prices", {{"p", {1, 2}}, {"n", 1}}},
      {"posted_prices", {{"p", {1, 1, 2}}, {"n", 2}}},
      {"posted_prices", {{"p", {1, 2, 1}}, {"n", 2}, {"mode", "value"}}},
      {"posted_prices", {{"p", {1, 1}}, {"n", 3}}},
  };
  std::vector<LibraryInstance> out;
  for (auto& [id, params] : ids) {
    MechanismSpec spec = make_example(id, params);
    if (spec.m > max_m) continue;
    ValuationCatalog cat = DefaultCatalog(spec, params);
    out.push_back({std::move(spec), std::move(cat), params});
  }
  return out;
}

}  // namespace taxlab

#endif  // TAXLAB_LIBRARY_HPP_
