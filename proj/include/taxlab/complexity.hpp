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

#ifndef TAXLAB_COMPLEXITY_HPP_
#define TAXLAB_COMPLEXITY_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "taxlab/mechanism.hpp"
#include "taxlab/menu.hpp"
#include "taxlab/valuation.hpp"

namespace taxlab {

// Runs fn(k) for k in [0, count) on up to `jobs` threads. Callers write
// results into pre-sized slots, so merge order never depends on timing.
template <typename Fn>
void ParallelFor(std::size_t count, int jobs, Fn fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = w; k < count; k += jobs) fn(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Mixed-radix enumeration of the profiles of every player except i.
class OthersEnumerator {
 public:
  OthersEnumerator(const ValuationCatalog& catalog, int i)
      : catalog_(catalog), i_(i) {
    count_ = 1;
    for (int j = 0; j < catalog.n(); ++j) {
      if (j != i) count_ *= catalog.size(j);
    }
  }

  std::uint64_t count() const { return count_; }

  // Per-player catalog indices; entry i is left at 0.
  std::vector<std::size_t> Indices(std::uint64_t code) const {
    std::vector<std::size_t> idx(catalog_.n(), 0);
    for (int j = 0; j < catalog_.n(); ++j) {
      if (j == i_) continue;
      idx[j] = code % catalog_.size(j);
      code /= catalog_.size(j);
    }
    return idx;
  }

  std::uint64_t Code(const std::vector<std::size_t>& idx) const {
    std::uint64_t code = 0;
    for (int j = catalog_.n() - 1; j >= 0; --j) {
      if (j == i_) continue;
      code = code * catalog_.size(j) + idx[j];
    }
    return code;
  }

  // Profile pointers with slot i set to `self`.
  std::vector<const Valuation*> Profile(std::uint64_t code,
                                        const Valuation* self) const {
    std::vector<std::size_t> idx = Indices(code);
    std::vector<const Valuation*> p(catalog_.n());
    for (int j = 0; j < catalog_.n(); ++j) {
      p[j] = j == i_ ? self : &catalog_.player(j)[idx[j]];
    }
    return p;
  }

 private:
  const ValuationCatalog& catalog_;
  int i_;
  std::uint64_t count_ = 1;
};

// Distinct normalized menus presented to one player over the catalog.
struct PlayerMenus {
  std::vector<Menu> menus;           // sorted, distinct
  std::vector<int> menu_of;          // others-code -> index into menus
  std::vector<Rat> empty_payment;    // others-code -> raw price of the empty bundle
  int probe_bits = 0;                // largest probe-run transcript

  int tax_bits() const {
    return CeilLog2(static_cast<std::uint64_t>(menus.size()));
  }
};

inline PlayerMenus BuildPlayerMenus(const MechanismSpec& spec,
                                    const ValuationCatalog& catalog, int i,
                                    int jobs = 1) {
  OthersEnumerator others(catalog, i);
  const std::uint64_t count = others.count();
  std::vector<Extraction> ex(count);
  Valuation placeholder = Valuation::Zero(spec.m);
  ParallelFor(count, jobs, [&](std::size_t code) {
    ex[code] = ExtractMenuDetailed(spec, i, others.Profile(code, &placeholder));
  });
  PlayerMenus pm;
  std::set<Menu> distinct;
  for (const auto& e : ex) distinct.insert(e.menu);
  pm.menus.assign(distinct.begin(), distinct.end());
  pm.menu_of.resize(count);
  pm.empty_payment.resize(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    pm.menu_of[code] = static_cast<int>(
        std::lower_bound(pm.menus.begin(), pm.menus.end(), ex[code].menu) -
        pm.menus.begin());
    pm.empty_payment[code] = ex[code].raw[Bundle(0)];
    pm.probe_bits = std::max(pm.probe_bits, ex[code].max_bits);
  }
  return pm;
}

struct ComplexityReport {
  std::string mechanism;
  int m = 0;
  int n = 0;
  int tax = 0;
  int cc = 0;
  int price = 0;
  int tie = 0;
  int mc = 0;
  int val = 0;
  int dem = 0;
  int d = 0;
  bool valid = true;
  std::string witness;  // first profile failing the taxation check
  int catalog_cc = 0;   // cc over catalog profiles only
  std::vector<PlayerMenus> players;
};

// Checks the taxation principle on one run: allocated bundles maximize
// profit against the presented menu, at exactly the menu price.
inline bool TaxationHolds(const std::vector<const Valuation*>& profile,
                          const Outcome& out,
                          const std::vector<const Menu*>& menus,
                          const std::vector<Rat>& empty_payments) {
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Menu& menu = *menus[i];
    const Bundle s = out.allocation[i];
    if (menu[s].is_infinite()) return false;
    if (out.payments[i] != menu[s] + empty_payments[i]) return false;
    auto best = profit_argmax_set(menu, *profile[i]);
    if (!std::binary_search(best.begin(), best.end(), s)) return false;
  }
  return true;
}

inline std::string ProfileName(const std::vector<std::size_t>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + ")";
}

inline ComplexityReport measure_complexities(const MechanismSpec& spec,
                                             const ValuationCatalog& catalog,
                                             int jobs = 1) {
  if (catalog.n() != spec.n || catalog.m() != spec.m) {
    throw DomainError("catalog shape does not match " + spec.id);
  }
  ComplexityReport rep;
  rep.mechanism = spec.label.empty() ? spec.id : spec.label;
  rep.m = spec.m;
  rep.n = spec.n;
  std::set<Rat> prices;
  int probe_bits = 0;
  for (int i = 0; i < spec.n; ++i) {
    rep.players.push_back(BuildPlayerMenus(spec, catalog, i, jobs));
    const PlayerMenus& pm = rep.players.back();
    rep.tax = std::max(rep.tax, pm.tax_bits());
    probe_bits = std::max(probe_bits, pm.probe_bits);
    for (const Menu& menu : pm.menus) {
      rep.mc = std::max(rep.mc, menu_complexity(menu).count);
      for (const Rat& p : menu.prices()) {
        if (p.is_finite()) prices.insert(p);
      }
    }
  }
  rep.d = static_cast<int>(prices.size());

  if (spec.price_protocol) {
    Valuation placeholder = Valuation::Zero(spec.m);
    for (int i = 0; i < spec.n; ++i) {
      OthersEnumerator others(catalog, i);
      for (std::uint64_t code = 0; code < others.count(); ++code) {
        auto profile = others.Profile(code, &placeholder);
        for (std::uint32_t s = 0; s < NumBundles(spec.m); ++s) {
          rep.price = std::max(
              rep.price,
              spec.price_protocol(spec, i, profile, Bundle(s)).transcript.bits());
        }
      }
    }
  } else {
    rep.price = probe_bits;
  }

  const std::uint64_t total = catalog.NumProfiles();
  struct Row {
    int bits = 0, val = 0, dem = 0, tie = 0;
    bool ok = true;
  };
  std::vector<Row> rows(total);
  ParallelFor(total, jobs, [&](std::size_t code) {
    std::vector<std::size_t> idx = catalog.Decode(code);
    std::vector<const Valuation*> profile;
    for (int i = 0; i < spec.n; ++i) {
      profile.push_back(&catalog.player(i)[idx[i]]);
    }
    RunResult r = run_mechanism(spec, profile);
    Row row;
    row.bits = r.transcript.bits();
    row.val = r.log.TotalValue();
    row.dem = r.log.TotalDemand();
    row.tie = RunTieProtocol(spec, profile);
    std::vector<const Menu*> menus;
    std::vector<Rat> empty;
    for (int i = 0; i < spec.n; ++i) {
      OthersEnumerator others(catalog, i);
      const std::uint64_t oc = others.Code(idx);
      menus.push_back(&rep.players[i].menus[rep.players[i].menu_of[oc]]);
      empty.push_back(rep.players[i].empty_payment[oc]);
    }
    row.ok = TaxationHolds(profile, r.outcome, menus, empty);
    rows[code] = row;
  });
  for (std::uint64_t code = 0; code < total; ++code) {
    const Row& row = rows[code];
    rep.catalog_cc = std::max(rep.catalog_cc, row.bits);
    rep.val = std::max(rep.val, row.val);
    rep.dem = std::max(rep.dem, row.dem);
    rep.tie = std::max(rep.tie, row.tie);
    if (!row.ok && rep.valid) {
      rep.valid = false;
      rep.witness = ProfileName(catalog.Decode(code));
    }
  }
  rep.cc = std::max(rep.catalog_cc, probe_bits);
  return rep;
}

}  // namespace taxlab

#endif  // TAXLAB_COMPLEXITY_HPP_
