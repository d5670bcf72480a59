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

#ifndef TAXLAB_TRANSFORMS_HPP_
#define TAXLAB_TRANSFORMS_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "taxlab/complexity.hpp"
#include "taxlab/mechanism.hpp"
#include "taxlab/menu.hpp"
#include "taxlab/random.hpp"

namespace taxlab {

// A strategy in the dominant-strategy wrapper: the menu index announced
// for the opponent, the bundle announced for oneself (unset means the
// smallest profit maximizer of the inner type), and the catalog type
// whose truthful play is used inside the original mechanism.
struct DeviationStrategy {
  int menu_index = 0;
  std::optional<Bundle> bundle;
  std::size_t inner = 0;

  std::string Name() const {
    return "menu=" + std::to_string(menu_index) +
           ",bundle=" + (bundle ? bundle->ToString() : std::string("best")) +
           ",type=" + std::to_string(inner);
  }
};

struct DominantRun {
  Outcome outcome;
  long long bits = 0;
  long long inner_bits = 0;
  bool consistent = true;
  int inconsistent = -1;  // player blamed at the first inconsistent message
  std::array<Bundle, 2> announced;
};

// The wrapper that announces menu indices and bundles before running the
// original two-player mechanism, then punishes the first inconsistent
// sender.
class DominantTransform {
 public:
  DominantTransform(const MechanismSpec& spec, const ValuationCatalog& catalog,
                    int jobs = 1)
      : spec_(spec), catalog_(catalog) {
    if (spec.n != 2 || catalog.n() != 2) {
      throw ContractError(spec.id + ": the dominant-strategy wrapper needs two players");
    }
    for (int i = 0; i < 2; ++i) menus_[i] = BuildPlayerMenus(spec, catalog, i, jobs);
    const std::size_t k0 = catalog.size(0), k1 = catalog.size(1);
    runs_.resize(k0 * k1);
    for (std::size_t a = 0; a < k0; ++a) {
      for (std::size_t b = 0; b < k1; ++b) {
        runs_[a * k1 + b] = run_mechanism(
            spec, std::vector<const Valuation*>{&catalog.player(0)[a], &catalog.player(1)[b]});
      }
    }
  }

  // Menus presented to player i, indexed by the opponent's catalog type.
  const PlayerMenus& menus(int i) const { return menus_[i]; }

  // Index of the menu that player j of type v presents to the opponent.
  int TruthfulIndex(int j, std::size_t v) const { return menus_[1 - j].menu_of[v]; }

  // Bits of player j's index announcement.
  int IndexBits(int j) const { return menus_[1 - j].tax_bits(); }

  DeviationStrategy Truthful(int j, std::size_t v) const {
    return {TruthfulIndex(j, v), std::nullopt, v};
  }

  const RunResult& InnerRun(std::size_t a, std::size_t b) const {
    return runs_[a * catalog_.size(1) + b];
  }

  DominantRun Run(const std::array<DeviationStrategy, 2>& s) const {
    DominantRun res;
    const int m = spec_.m;
    std::array<const Menu*, 2> shown{nullptr, nullptr};
    for (int j = 0; j < 2; ++j) {
      const int idx = s[1 - j].menu_index;
      if (idx >= 0 && idx < static_cast<int>(menus_[j].menus.size())) {
        shown[j] = &menus_[j].menus[idx];
      }
      if (s[j].bundle) {
        res.announced[j] = *s[j].bundle;
      } else if (shown[j]) {
        res.announced[j] =
            profit_argmax_set(*shown[j], catalog_.player(j)[s[j].inner]).front();
      }
    }
    const RunResult& inner = InnerRun(s[0].inner, s[1].inner);
    const auto& msgs = inner.transcript.messages();
    res.inner_bits = inner.transcript.bits();
    res.bits = IndexBits(0) + IndexBits(1) + 2 * m + res.inner_bits;

    // Longest prefix shared with some truthful profile; bundle
    // announcements are not part of the truthful strategies and always match.
    const std::size_t total = 4 + msgs.size();
    std::size_t longest = 0;
    std::optional<std::pair<std::size_t, std::size_t>> match;
    for (std::size_t a = 0; a < catalog_.size(0); ++a) {
      for (std::size_t b = 0; b < catalog_.size(1); ++b) {
        std::size_t k = 0;
        if (s[0].menu_index == TruthfulIndex(0, a)) {
          k = 1;
          if (s[1].menu_index == TruthfulIndex(1, b)) {
            k = 4;
            const auto& other = InnerRun(a, b).transcript.messages();
            std::size_t t = 0;
            while (t < msgs.size() && t < other.size() && msgs[t] == other[t]) ++t;
            k += t;
            if (t == msgs.size() && t == other.size()) {
              const bool own = a == s[0].inner && b == s[1].inner;
              if (!match || own) match = std::make_pair(a, b);
              k = total + 1;
            } else if (t == msgs.size()) {
              throw MechanismError(spec_.id + ": transcripts are not prefix-free");
            }
          }
        }
        longest = std::max(longest, k);
      }
    }
    if (match) {
      res.outcome = InnerRun(match->first, match->second).outcome;
      return res;
    }
    res.consistent = false;
    const int blamed = longest == 0 ? 0 : longest == 1 ? 1 : msgs[longest - 4].player;
    res.inconsistent = blamed;
    res.outcome.allocation.assign(2, Bundle(0));
    res.outcome.payments.assign(2, Rat(0));
    const int other = 1 - blamed;
    if (shown[other]) {
      const Rat price = (*shown[other])[res.announced[other]];
      if (price.is_finite()) {
        res.outcome.allocation[other] = res.announced[other];
        res.outcome.payments[other] = price;
      }
    }
    return res;
  }

 private:
  const MechanismSpec& spec_;
  const ValuationCatalog& catalog_;
  std::array<PlayerMenus, 2> menus_;
  std::vector<RunResult> runs_;
};

inline DominantRun to_dominant_run(const MechanismSpec& spec, const ValuationCatalog& catalog,
                                   const std::array<DeviationStrategy, 2>& strategies) {
  return DominantTransform(spec, catalog).Run(strategies);
}

struct AuditRow {
  int player = 0;
  std::size_t valuation = 0;
  std::string deviation;
  Rat truthful_utility;
  Rat deviating_utility;
  Rat gap;  // deviating minus truthful; positive is a dominance failure
};

struct AuditReport {
  std::string mechanism;
  long long cases = 0;
  Rat max_violation = Rat(0);
  std::string worst;
  int violations = 0;
  std::vector<AuditRow> rows;  // worst opponent per (player, type, deviation)
};

inline Rat Utility(const Valuation& v, const Outcome& out, int j) {
  return v[out.allocation[j]] - out.payments[j];
}

// Truthful play against every opponent (index, type) pair versus every
// menu lie, bundle lie and type misreport. The opponent's bundle never
// affects the auditing player's outcome, so it is left at its default.
inline AuditReport deviation_audit(const MechanismSpec& spec, const ValuationCatalog& catalog,
                                   bool keep_rows = true) {
  DominantTransform tr(spec, catalog);
  AuditReport rep;
  rep.mechanism = spec.label.empty() ? spec.id : spec.label;
  bool first = true;
  for (int j = 0; j < 2; ++j) {
    const int o = 1 - j;
    const int own_menus = static_cast<int>(tr.menus(o).menus.size());
    const int opp_menus = static_cast<int>(tr.menus(j).menus.size());
    std::vector<DeviationStrategy> devs;
    for (int idx = 0; idx < own_menus; ++idx) {
      for (std::size_t t = 0; t < catalog.size(j); ++t) {
        devs.push_back({idx, std::nullopt, t});
        for (std::uint32_t s = 0; s < NumBundles(spec.m); ++s) {
          devs.push_back({idx, Bundle(s), t});
        }
      }
    }
    for (std::size_t a = 0; a < catalog.size(j); ++a) {
      const Valuation& v = catalog.player(j)[a];
      const DeviationStrategy honest = tr.Truthful(j, a);
      for (const DeviationStrategy& dev : devs) {
        AuditRow row{j, a, dev.Name(), 0, 0, 0};
        bool have = false;
        for (int idx = 0; idx < opp_menus; ++idx) {
          for (std::size_t b = 0; b < catalog.size(o); ++b) {
            const DeviationStrategy opp{idx, std::nullopt, b};
            std::array<DeviationStrategy, 2> s1, s2;
            s1[j] = honest;
            s1[o] = opp;
            s2[j] = dev;
            s2[o] = opp;
            const Rat u1 = Utility(v, tr.Run(s1).outcome, j);
            const Rat u2 = Utility(v, tr.Run(s2).outcome, j);
            ++rep.cases;
            const Rat gap = u2 - u1;
            if (!have || gap > row.gap) {
              row.truthful_utility = u1;
              row.deviating_utility = u2;
              row.gap = gap;
              have = true;
            }
            if (gap > 0) ++rep.violations;
            if (first || gap > rep.max_violation) {
              rep.max_violation = gap;
              rep.worst = "player " + std::to_string(j + 1) + " type " + std::to_string(a) +
                          " " + dev.Name() + " vs " + opp.Name();
              first = false;
            }
          }
        }
        if (keep_rows) rep.rows.push_back(std::move(row));
      }
    }
  }
  return rep;
}

// Adds eps*|S|/(2m) to every bundle.
inline Valuation Tilt(const Valuation& v, const Rat& eps) {
  const int m = v.m();
  if (!(eps > 0)) throw ConfigError("strictify needs eps > 0");
  return Valuation::FromFunction(m, [&](Bundle s) {
    return v[s] + eps * Rat(s.size()) / Rat(2 * m);
  });
}

// Tilt plus independent noise from the grid_l evenly spaced rationals in
// [0, eps/(2m)].
inline Valuation strictify(const Valuation& v, const Rat& eps, std::int64_t grid_l,
                           std::uint64_t seed) {
  if (grid_l < 2) throw ConfigError("strictify needs grid_l >= 2");
  const int m = std::max(v.m(), 1);
  const Valuation tilted = Tilt(v, eps);
  const Rat step = eps / Rat(2 * m) / Rat(grid_l - 1);
  Rng rng(seed, "strictify");
  std::vector<Rat> t(NumBundles(v.m()));
  for (std::uint32_t s = 0; s < t.size(); ++s) {
    t[s] = tilted[Bundle(s)];
    if (s != 0) {
      t[s] += step * Rat(static_cast<std::int64_t>(rng.Below(static_cast<std::uint64_t>(grid_l))));
    }
  }
  return Valuation(v.m(), std::move(t));
}

inline bool PreciseAgainst(const Valuation& v, const std::vector<Menu>& menus) {
  for (const Menu& menu : menus) {
    if (profit_argmax_set(menu, v).size() != 1) return false;
  }
  return true;
}

struct StrictifyResult {
  Valuation v;
  int attempts = 0;
};

// Resamples the noise (seed streams 0, 1, ...) until every menu has a
// unique profit maximizer.
inline StrictifyResult StrictifyPrecise(const Valuation& v, const std::vector<Menu>& menus,
                                        const Rat& eps, std::int64_t grid_l,
                                        std::uint64_t seed, int max_attempts = 64) {
  for (int k = 0; k < max_attempts; ++k) {
    Valuation w = strictify(v, eps, grid_l, StreamSeed(seed, "precise", k));
    if (PreciseAgainst(w, menus)) return {std::move(w), k + 1};
  }
  throw SamplingError("strictify found no precise valuation");
}

// Each player announces the index of the menu it presents; player 1
// receives the union of bundles its types could pick against the
// announced pair, player 2 the rest.
class SimultaneousTable {
 public:
  SimultaneousTable(const MechanismSpec& spec, const ValuationCatalog& catalog,
                    int jobs = 1)
      : spec_(spec), catalog_(catalog) {
    if (spec.n != 2 || catalog.n() != 2) {
      throw ContractError(spec.id + ": simultaneous conversion needs two players");
    }
    for (int i = 0; i < 2; ++i) menus_[i] = BuildPlayerMenus(spec, catalog, i, jobs);
    for (int i = 0; i < 2; ++i) {
      for (std::size_t v = 0; v < catalog.size(i); ++v) {
        for (std::size_t k = 0; k < menus_[i].menus.size(); ++k) {
          if (profit_argmax_set(menus_[i].menus[k], catalog.player(i)[v]).size() != 1) {
            throw ContractError(spec.id + ": not precise for player " + std::to_string(i + 1) +
                                " valuation " + std::to_string(v) + " on menu " +
                                std::to_string(k));
          }
        }
      }
    }
    const std::size_t rows = menus_[0].menus.size(), cols = menus_[1].menus.size();
    table_.assign(rows * cols, Bundle(0));
    for (std::size_t k = 0; k < rows; ++k) {
      for (std::size_t a = 0; a < catalog.size(0); ++a) {
        const std::size_t kp = menus_[1].menu_of[a];
        Bundle& cell = table_[k * cols + kp];
        cell = cell | profit_argmax_set(menus_[0].menus[k], catalog.player(0)[a]).front();
      }
    }
  }

  std::size_t rows() const { return menus_[0].menus.size(); }
  std::size_t cols() const { return menus_[1].menus.size(); }
  Bundle At(std::size_t presented_to_1, std::size_t presented_by_1) const {
    return table_[presented_to_1 * cols() + presented_by_1];
  }
  // Both players pad their index to tax(A) bits.
  int bits() const { return 2 * std::max(menus_[0].tax_bits(), menus_[1].tax_bits()); }

  // Allocation for catalog types (a, b).
  std::array<Bundle, 2> Run(std::size_t a, std::size_t b) const {
    const Bundle s = At(menus_[0].menu_of[b], menus_[1].menu_of[a]);
    return {s, s.complement(spec_.m)};
  }

 private:
  const MechanismSpec& spec_;
  const ValuationCatalog& catalog_;
  std::array<PlayerMenus, 2> menus_;
  std::vector<Bundle> table_;
};

inline SimultaneousTable to_simultaneous(const MechanismSpec& spec,
                                         const ValuationCatalog& catalog) {
  return SimultaneousTable(spec, catalog);
}

// Strictified two-player catalog on which the mechanism's menus are
// precise. Imprecise types are resampled against the menus the current
// opposite catalog induces, for up to max_rounds passes.
inline ValuationCatalog StrictifyCatalog(const MechanismSpec& spec,
                                         const ValuationCatalog& catalog, const Rat& eps,
                                         std::int64_t grid_l, std::uint64_t seed,
                                         int max_rounds = 8, int jobs = 1) {
  if (catalog.n() != 2) throw ContractError("strictified catalogs need two players");
  std::vector<std::vector<Valuation>> players(2);
  for (int i = 0; i < 2; ++i) {
    for (std::size_t v = 0; v < catalog.size(i); ++v) {
      players[i].push_back(strictify(catalog.player(i)[v], eps, grid_l,
                                     StreamSeed(seed, "strict-type", 1000 * i + v)));
    }
  }
  for (int round = 0; round < max_rounds; ++round) {
    ValuationCatalog current(players);
    bool changed = false;
    for (int i = 0; i < 2; ++i) {
      const PlayerMenus pm = BuildPlayerMenus(spec, current, i, jobs);
      for (std::size_t v = 0; v < current.size(i); ++v) {
        if (PreciseAgainst(players[i][v], pm.menus)) continue;
        players[i][v] = StrictifyPrecise(catalog.player(i)[v], pm.menus, eps, grid_l,
                                         StreamSeed(seed, "strict-retry",
                                                    (round * 2 + i) * 1000 + v))
                            .v;
        changed = true;
      }
    }
    if (!changed) return current;
  }
  throw SamplingError(spec.id + ": strictified catalog did not stabilize");
}

struct SimultaneousCheck {
  long long profiles = 0;
  int bits = 0;
  int tax = 0;
  int containment_failures = 0;
  int overlap_failures = 0;
  int welfare_failures = 0;
  std::string witness;  // first failing profile
};

// Runs the compiled table against the mechanism on every catalog profile.
inline SimultaneousCheck CheckSimultaneous(const MechanismSpec& spec,
                                           const ValuationCatalog& catalog) {
  const SimultaneousTable table(spec, catalog);
  SimultaneousCheck res;
  res.bits = table.bits();
  for (int i = 0; i < 2; ++i) {
    res.tax = std::max(res.tax, BuildPlayerMenus(spec, catalog, i).tax_bits());
  }
  for (std::size_t a = 0; a < catalog.size(0); ++a) {
    for (std::size_t b = 0; b < catalog.size(1); ++b) {
      const Valuation& va = catalog.player(0)[a];
      const Valuation& vb = catalog.player(1)[b];
      const RunResult r = run_mechanism(spec, std::vector<const Valuation*>{&va, &vb});
      const auto split = table.Run(a, b);
      const bool contained = r.outcome.allocation[0].subset_of(split[0]) &&
                             r.outcome.allocation[1].subset_of(split[1]);
      const bool disjoint = (split[0] & split[1]) == Bundle(0);
      const bool welfare = va[split[0]] + vb[split[1]] >=
                           va[r.outcome.allocation[0]] + vb[r.outcome.allocation[1]];
      res.containment_failures += !contained;
      res.overlap_failures += !disjoint;
      res.welfare_failures += !welfare;
      if ((!contained || !disjoint || !welfare) && res.witness.empty()) {
        res.witness = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
      ++res.profiles;
    }
  }
  return res;
}

}  // namespace taxlab

#endif  // TAXLAB_TRANSFORMS_HPP_
