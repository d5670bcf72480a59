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

#ifndef TAXLAB_DEMAND_MENUS_HPP_
#define TAXLAB_DEMAND_MENUS_HPP_

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "taxlab/mechanism.hpp"
#include "taxlab/menu.hpp"
#include "taxlab/valuation.hpp"

namespace taxlab {

using DemandOracle = std::function<DemandAnswer(const std::vector<Rat>&)>;

struct ArgmaxResult {
  Bundle bundle;
  Rat profit;
  int queries = 0;
};

// Profit-maximizing bundle for a menu with no exceptions, one demand
// query per price vector.
inline ArgmaxResult min_affine_argmax(const MinAffineMenu& ma,
                                      const DemandOracle& demand) {
  if (ma.beta() != 0) {
    throw ContractError("min_affine_argmax requires a menu without exceptions");
  }
  ArgmaxResult best{Bundle(0), Rat(0), 0};
  Rat empty_price = eval_min_affine(ma, Bundle(0));
  bool have = empty_price.is_finite();
  if (have) best.profit = -empty_price;
  for (const auto& p : ma.vectors) {
    DemandAnswer a = demand(p);
    ++best.queries;
    Rat price = eval_min_affine(ma, a.bundle);
    if (price.is_infinite()) continue;
    Rat profit = a.value - price;
    if (!have || profit > best.profit ||
        (profit == best.profit && a.bundle < best.bundle)) {
      best.bundle = a.bundle;
      best.profit = profit;
      have = true;
    }
  }
  return best;
}

// The menu |S|, raised by 1/2 on T.
inline Menu GadgetMenu(int m, Bundle t) {
  std::vector<Rat> p(NumBundles(m));
  for (std::uint32_t s = 0; s < p.size(); ++s) {
    p[s] = Rat(Bundle(s).size());
  }
  if (t.size() * 2 == m) p[t.mask()] += Rat(1, 2);
  return Menu(m, std::move(p));
}

// Player 1's valuation hiding T: 0 below m/2, 1/4 on T, 1 above m/2.
inline Valuation GadgetValuation(int m, Bundle t) {
  return Valuation::FromFunction(m, [&](Bundle s) {
    const int k = s.size();
    if (2 * k < m) return Rat(0);
    if (2 * k > m) return Rat(1);
    return s == t ? Rat(1, 4) : Rat(0);
  });
}

// Whether s is the hidden bundle, answered by one demand query to a
// player holding a gadget valuation (prices 0 on s, infinity elsewhere).
inline bool GadgetPriceCheck(int m, Bundle s, const DemandOracle& player1) {
  if (s.size() * 2 != m) return false;
  std::vector<Rat> p(m, Rat::Infinity());
  for (int j : s.items()) p[j] = 0;
  DemandAnswer a = player1(p);
  return a.bundle == s && a.value == Rat(1, 4);
}

// Finds a bundle maximizing v(S) - M_T(S) without knowing T: one all-ones
// query, one price check, then two batches of single-item variations.
inline ArgmaxResult mt_gadget_argmax(
    int m, const DemandOracle& demand,
    const std::function<bool(Bundle)>& is_hidden_bundle,
    int* price_checks = nullptr) {
  if (m % 2 != 0) throw ContractError("gadget needs an even item count");
  ArgmaxResult res;
  std::vector<Rat> ones(m, Rat(1));
  DemandAnswer first = demand(ones);
  res.queries = 1;
  const bool hit = is_hidden_bundle(first.bundle);
  if (price_checks) ++*price_checks;
  if (!hit) {
    res.bundle = first.bundle;
    res.profit = first.value - Rat(first.bundle.size());
    return res;
  }
  const Bundle t = first.bundle;
  const Menu menu = GadgetMenu(m, t);
  res.bundle = t;
  res.profit = first.value - menu[t];
  auto consider = [&](const DemandAnswer& a) {
    Rat profit = a.value - menu[a.bundle];
    if (profit > res.profit || (profit == res.profit && a.bundle < res.bundle)) {
      res.bundle = a.bundle;
      res.profit = profit;
    }
  };
  consider({Bundle(0), Rat(0)});
  for (int j : t.items()) {
    std::vector<Rat> p(m, Rat(1));
    p[j] = Rat::Infinity();
    consider(demand(p));
    ++res.queries;
  }
  for (int j : t.complement(m).items()) {
    std::vector<Rat> p(m, Rat(1));
    for (int k : t.items()) p[k] = 0;
    p[j] = Rat(1, 2);
    consider(demand(p));
    ++res.queries;
  }
  return res;
}

// The half-size bundles a demand query covers: at most the set of items
// priced at most 1/4, and only when it is the answer under its own
// hiding valuation.
inline std::vector<Bundle> demand_cover(const std::vector<Rat>& p, int m) {
  if (m % 2 != 0) throw ContractError("demand_cover needs an even item count");
  if (static_cast<int>(p.size()) != m) throw DomainError("price length mismatch");
  Bundle c;
  for (int j = 0; j < m; ++j) {
    if (p[j] <= Rat(1, 4)) c = c.with(j);
  }
  if (c.size() * 2 != m) return {};
  if (demand_query(GadgetValuation(m, c), p).bundle != c) return {};
  return {c};
}

struct MinAffineExtraction {
  MinAffineMenu menu;
  Menu truth;
  std::vector<std::vector<Rat>> raw_vectors;  // harvested before clamping
  std::vector<Rat> raw_offsets;
  int demand_queries = 0;
  int value_queries = 0;
  int at_most_violations = 0;
  int exactly_violations = 0;
  int exactly_exempt = 0;  // empty bundle or a same-price superset is an exception
};

// Player i's valuation reproducing the menu: M(S) when finite, (m+1)B
// otherwise.
inline Valuation MenuValuation(const Menu& menu, const Rat& B) {
  const Rat cap = (menu.m() + 1) * B;
  return Valuation::FromFunction(menu.m(), [&](Bundle s) {
    return menu[s].is_finite() ? menu[s] : cap;
  });
}

inline MinAffineExtraction extract_min_affine(
    const MechanismSpec& spec, int i, const std::vector<Valuation>& v_minus_i) {
  if (spec.mode == Mode::kBit) {
    throw ContractError(spec.id + ": min-affine extraction needs a query-mode mechanism");
  }
  if (!IsGeneralTruthful(spec, i)) {
    throw ContractError(spec.id + ": not truthful for general valuations");
  }
  MinAffineExtraction ex;
  ex.truth = extract_menu(spec, i, v_minus_i);
  const int m = spec.m;
  const Valuation vi = MenuValuation(ex.truth, spec.B);
  std::vector<const Valuation*> others;
  for (const Valuation& v : v_minus_i) others.push_back(&v);
  RunResult run = run_mechanism(spec, WithPlayer(others, i, &vi));

  MinAffineMenu& ma = ex.menu;
  ma.m = m;
  std::set<Bundle> queried;
  for (const QueryRecord& q : run.log.trace) {
    if (q.player != i) continue;
    if (q.kind == QueryKind::kValue) {
      ++ex.value_queries;
      queried.insert(q.bundle);
      continue;
    }
    ++ex.demand_queries;
    Rat cost = 0;
    for (int j : q.bundle.items()) cost += q.prices[j];
    Rat r = q.value - cost;
    ex.raw_vectors.push_back(q.prices);
    ex.raw_offsets.push_back(r);
    std::vector<Rat> p = q.prices;
    for (Rat& x : p) {
      if (x > spec.B || r > spec.B) x = Rat::Infinity();
    }
    ma.vectors.push_back(std::move(p));
    ma.offsets.push_back(r);
  }
  for (Bundle s : queried) ma.exceptions[s] = ex.truth[s];

  // Consistency checks on the unclamped harvest.
  for (std::uint32_t s = 0; s < NumBundles(m); ++s) {
    const Bundle b(s);
    if (queried.count(b) || ex.truth[b].is_infinite()) continue;
    bool equal_somewhere = false;
    for (std::size_t k = 0; k < ex.raw_vectors.size(); ++k) {
      Rat sum = ex.raw_offsets[k];
      for (int j : b.items()) sum += ex.raw_vectors[k][j];
      if (sum < ex.truth[b]) ++ex.at_most_violations;
      if (sum == ex.truth[b]) equal_somewhere = true;
    }
    if (equal_somewhere) continue;
    bool exempt = b.empty();
    for (Bundle t : queried) {
      if (b.subset_of(t) && ex.truth[t] == ex.truth[b]) exempt = true;
    }
    if (exempt) {
      ++ex.exactly_exempt;
    } else {
      ++ex.exactly_violations;
    }
  }

  // The empty bundle is priced 0 by normalization; compare canonical forms.
  Menu table = min_affine_table(ma);
  table.set(Bundle(0), Rat(0));
  Menu canon = normalize_menu(table);
  for (std::uint32_t s = 0; s < NumBundles(m); ++s) {
    if (canon[Bundle(s)] != ex.truth[Bundle(s)]) {
      throw SoundnessError(spec.id + ": min-affine characterization violated at " +
                           Bundle(s).ToString() + " (extracted " +
                           canon[Bundle(s)].ToString() + ", menu " +
                           ex.truth[Bundle(s)].ToString() + ")");
    }
  }
  return ex;
}

}  // namespace taxlab

#endif  // TAXLAB_DEMAND_MENUS_HPP_
