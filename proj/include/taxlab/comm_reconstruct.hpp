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

#ifndef TAXLAB_COMM_RECONSTRUCT_HPP_
#define TAXLAB_COMM_RECONSTRUCT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "taxlab/complexity.hpp"
#include "taxlab/disjointness.hpp"
#include "taxlab/mechanism.hpp"
#include "taxlab/menu.hpp"
#include "taxlab/random.hpp"

namespace taxlab {

// Candidate menus still consistent with every price learned so far.
struct LiveMenuSet {
  int m = 0;
  std::vector<Menu> menus;
  std::vector<Rat> p;     // most frequent price per bundle, smallest on ties
  std::vector<int> freq;  // its multiplicity

  LiveMenuSet(int m_, std::vector<Menu> menus_) : m(m_), menus(std::move(menus_)) {
    Refresh();
  }

  void Refresh() {
    p.assign(NumBundles(m), Rat(0));
    freq.assign(NumBundles(m), 0);
    for (std::uint32_t s = 0; s < NumBundles(m); ++s) {
      std::map<Rat, int> count;
      for (const Menu& menu : menus) ++count[menu[Bundle(s)]];
      for (const auto& [price, c] : count) {
        if (c > freq[s]) {
          freq[s] = c;
          p[s] = price;
        }
      }
    }
  }

  int size() const { return static_cast<int>(menus.size()); }

  std::vector<Bundle> Witnesses(const Menu& menu) const {
    return WitnessBundles(menu, p);
  }

  static std::vector<Bundle> WitnessBundles(const Menu& menu, const std::vector<Rat>& p) {
    std::vector<Bundle> w;
    for (std::uint32_t s = 0; s < p.size(); ++s) {
      if (menu[Bundle(s)] != p[s]) w.push_back(Bundle(s));
    }
    return w;
  }

  // Keeps menus pricing s at `price`.
  void Filter(Bundle s, const Rat& price) {
    std::erase_if(menus, [&](const Menu& menu) { return menu[s] != price; });
    Refresh();
  }
};

// log2 |Z'| floored at 1, so singleton bands still sample.
inline double RepresentationLog(std::size_t zprime) {
  return std::max(1.0, std::log2(static_cast<double>(zprime)));
}

// Bundles such that every menu of `band` has a witness among them and no
// menu of `zprime` has more than 8 log2|Z'| of them. Verified per attempt.
inline std::vector<Bundle> representation_set(const std::vector<Menu>& zprime,
                                              const std::vector<Menu>& band, int z,
                                              const std::vector<Rat>& p,
                                              std::uint64_t seed,
                                              int* attempts_used = nullptr) {
  if (band.empty()) throw ContractError("representation_set needs a nonempty band");
  const double log_z = RepresentationLog(zprime.size());
  const double rate = std::min(1.0, 4.0 * log_z / std::max(z, 1));
  const double cap = 8.0 * log_z;
  const std::uint64_t scale = std::uint64_t{1} << 40;
  const auto threshold = static_cast<std::uint64_t>(rate * static_cast<double>(scale));
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng rng(seed, "represent", static_cast<std::uint64_t>(attempt));
    std::vector<Bundle> chosen;
    std::vector<std::uint8_t> in(p.size(), 0);
    for (std::uint32_t s = 0; s < p.size(); ++s) {
      if (rate >= 1.0 || rng.Below(scale) < threshold) {
        chosen.push_back(Bundle(s));
        in[s] = 1;
      }
    }
    bool ok = true;
    for (const Menu& menu : band) {
      bool hit = false;
      for (Bundle s : LiveMenuSet::WitnessBundles(menu, p)) hit = hit || in[s.mask()];
      ok = ok && hit;
    }
    for (const Menu& menu : zprime) {
      int inside = 0;
      for (Bundle s : LiveMenuSet::WitnessBundles(menu, p)) inside += in[s.mask()];
      ok = ok && inside <= cap;
    }
    if (ok) {
      if (attempts_used) *attempts_used = attempt + 1;
      return chosen;
    }
  }
  throw SamplingError("no representing bundle set after 64 attempts");
}

// Normalized-price protocol results for player i over every profile of
// the others, cached per (others code, bundle). The protocol runs the
// declared price protocol on the empty bundle and on S; its transcript is
// the pair.
class ProofTable {
 public:
  struct Entry {
    std::string key;
    Rat price;
    int bits = 0;
  };

  ProofTable(const MechanismSpec& spec, const ValuationCatalog& catalog, int i)
      : spec_(spec), catalog_(catalog), i_(i), others_(catalog, i),
        placeholder_(Valuation::Zero(spec.m)),
        base_(others_.count()),
        cells_(others_.count() * NumBundles(spec.m)) {}

  const OthersEnumerator& others() const { return others_; }

  const Entry& At(std::uint64_t code, Bundle s) {
    auto& cell = cells_[code * NumBundles(spec_.m) + s.mask()];
    if (cell) return *cell;
    if (s.empty()) {
      cell = Entry{"", Rat(0), 0};
      return *cell;
    }
    const auto profile = others_.Profile(code, &placeholder_);
    if (!base_[code]) {
      PriceRun b = RunPriceProtocol(spec_, i_, profile, Bundle(0));
      if (b.price.is_infinite()) {
        throw ContractError(spec_.id + ": empty bundle has no price");
      }
      base_[code] = Entry{b.transcript.Key(), b.price, b.transcript.bits()};
    }
    PriceRun r = RunPriceProtocol(spec_, i_, profile, s);
    const Entry& b = *base_[code];
    cell = Entry{b.key + "#" + r.transcript.Key(),
                 r.price.is_infinite() ? r.price : r.price - b.price,
                 b.bits + r.transcript.bits()};
    return *cell;
  }

 private:
  const MechanismSpec& spec_;
  const ValuationCatalog& catalog_;
  int i_;
  OthersEnumerator others_;
  Valuation placeholder_;
  std::vector<std::optional<Entry>> base_;
  std::vector<std::optional<Entry>> cells_;
};

struct DisjointnessBuild {
  ZDisjointnessInstance inst;
  std::vector<int> players;              // original indices of the instance's players
  std::vector<Bundle> bit_bundle;        // block of each bit
  std::vector<std::string> bit_transcript;
  std::vector<std::vector<BitString>> rows;  // per instance player, per catalog valuation
  int tight_z = 0;  // exact largest intersection count over the allowed sets
};

// One block per bundle of P, one bit per realizable transcript; a bit is
// set when some completion by the remaining players produces that
// transcript with a price other than p_S. Allowed sets are the rows of
// valuations that occur in some profile flagged in `consistent` (all
// profiles when it is empty).
inline DisjointnessBuild build_disjointness_instance(
    const MechanismSpec& spec, const ValuationCatalog& catalog, int i,
    const std::vector<Bundle>& P, const std::vector<Rat>& p, std::uint64_t true_code,
    ProofTable& table, int z, const std::vector<std::uint8_t>& consistent = {}) {
  DisjointnessBuild out;
  const OthersEnumerator& others = table.others();
  for (int j = 0; j < spec.n; ++j) {
    if (j != i) out.players.push_back(j);
  }
  const int q = static_cast<int>(out.players.size());
  // Realizable transcripts per block.
  std::vector<std::map<std::string, int>> offset(P.size());
  int l = 0;
  for (std::size_t b = 0; b < P.size(); ++b) {
    std::map<std::string, int> keys;
    for (std::uint64_t code = 0; code < others.count(); ++code) {
      keys.emplace(table.At(code, P[b]).key, 0);
    }
    for (auto& [key, pos] : keys) {
      pos = l++;
      out.bit_bundle.push_back(P[b]);
      out.bit_transcript.push_back(key);
    }
    offset[b] = std::move(keys);
  }
  out.rows.resize(q);
  for (int a = 0; a < q; ++a) {
    out.rows[a].assign(catalog.size(out.players[a]), BitString(l, 0));
  }
  for (std::uint64_t code = 0; code < others.count(); ++code) {
    const auto idx = others.Indices(code);
    for (std::size_t b = 0; b < P.size(); ++b) {
      const auto& e = table.At(code, P[b]);
      if (e.price == p[P[b].mask()]) continue;
      const int bit = offset[b].at(e.key);
      for (int a = 0; a < q; ++a) out.rows[a][idx[out.players[a]]][bit] = 1;
    }
  }
  std::vector<std::vector<std::uint8_t>> usable(q);
  for (int a = 0; a < q; ++a) usable[a].assign(catalog.size(out.players[a]), 0);
  for (std::uint64_t code = 0; code < others.count(); ++code) {
    if (!consistent.empty() && !consistent[code]) continue;
    const auto idx = others.Indices(code);
    for (int a = 0; a < q; ++a) usable[a][idx[out.players[a]]] = 1;
  }
  const auto true_idx = others.Indices(true_code);
  out.inst.n = q;
  out.inst.l = l;
  out.inst.z = z;
  for (int a = 0; a < q; ++a) {
    std::vector<BitString> uniq;
    for (std::size_t v = 0; v < out.rows[a].size(); ++v) {
      if (usable[a][v]) uniq.push_back(out.rows[a][v]);
    }
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    out.inst.allowed.push_back(std::move(uniq));
    out.inst.inputs.push_back(out.rows[a][true_idx[out.players[a]]]);
  }
  out.inst.Validate();
  out.tight_z = MaxIntersections(out.inst.allowed, l);
  return out;
}

struct CommStep {
  std::string kind;  // "direct", "witness" or "no-witness"
  int live_before = 0;
  int live_after = 0;
  Bundle bundle;
  int bands = 0;                  // disjointness instances solved
  long long price_bits = 0;
  long long disjointness_bits = 0;
  int max_l = 0;
  int max_z = 0;       // declared promise
  int max_tight_z = 0;  // promise actually solved
};

struct CommReconstruction {
  Menu menu;
  long long bits = 0;
  long long price_bits = 0;
  long long disjointness_bits = 0;
  long long bookkeeping_bits = 0;
  int catalog_menus = 0;
  std::vector<CommStep> steps;
};

// Reconstructs player i's menu for one profile of the others, reusing the
// menu sweep and the price-protocol cache across calls.
class CommReconstructor {
 public:
  CommReconstructor(const MechanismSpec& spec, const ValuationCatalog& catalog, int i,
                    int jobs = 1)
      : spec_(spec), catalog_(catalog), i_(i),
        menus_(BuildPlayerMenus(spec, catalog, i, jobs)), table_(spec, catalog, i) {}

  const PlayerMenus& menus() const { return menus_; }
  const OthersEnumerator& others() const { return table_.others(); }
  ProofTable& table() { return table_; }

  CommReconstruction Run(std::uint64_t code, std::uint64_t seed = 0) {
    const int m = spec_.m;
    const Menu& truth = menus_.menus[menus_.menu_of[code]];
    CommReconstruction res;
    res.catalog_menus = static_cast<int>(menus_.menus.size());
    LiveMenuSet live(m, menus_.menus);
    const int book = CeilLog2(static_cast<std::uint64_t>(m) + 2);
    auto query = [&](Bundle s, CommStep& step) {
      const auto& e = table_.At(code, s);
      if (e.price != truth[s]) {
        throw SoundnessError(spec_.id + ": price protocol disagrees with the menu at " +
                             s.ToString());
      }
      step.price_bits += e.bits;
      step.bundle = s;
      live.Filter(s, e.price);
    };
    for (int j = 0; live.size() > 1; ++j) {
      CommStep step;
      step.live_before = live.size();
      res.bookkeeping_bits += book;
      std::optional<Bundle> rare;
      for (std::uint32_t s = 0; s < NumBundles(m) && !rare; ++s) {
        if (2 * live.freq[s] < live.size()) rare = Bundle(s);
      }
      if (rare) {
        step.kind = "direct";
        query(*rare, step);
      } else {
        std::vector<Menu> zprime = live.menus;
        bool found = false;
        for (int t = 1 << m; t >= 1 && !found; t /= 2) {
          std::vector<Menu> band;
          for (const Menu& menu : zprime) {
            const int w = static_cast<int>(live.Witnesses(menu).size());
            if (2 * w >= t && w <= t) band.push_back(menu);
          }
          if (band.empty()) continue;
          const std::uint64_t band_seed =
              StreamSeed(seed, "band", static_cast<std::uint64_t>(j) * 64 + CeilLog2(t));
          const auto P = representation_set(zprime, band, t, live.p, band_seed);
          const int z = static_cast<int>(std::floor(8.0 * RepresentationLog(zprime.size())));
          std::vector<std::uint8_t> consistent(others().count(), 0);
          for (std::uint64_t c = 0; c < others().count(); ++c) {
            const Menu& menu = menus_.menus[menus_.menu_of[c]];
            consistent[c] =
                std::find(zprime.begin(), zprime.end(), menu) != zprime.end();
          }
          DisjointnessBuild build = build_disjointness_instance(
              spec_, catalog_, i_, P, live.p, code, table_, z, consistent);
          // Everyone knows the allowed sets, so the exact promise is free.
          build.inst.z = build.tight_z;
          DisjointnessResult dr = solve_z_disjointness(build.inst);
          ++step.bands;
          step.disjointness_bits += dr.bits;
          step.max_l = std::max(step.max_l, build.inst.l);
          step.max_z = std::max(step.max_z, z);
          step.max_tight_z = std::max(step.max_tight_z, build.tight_z);
          if (dr.intersect) {
            step.kind = "witness";
            query(build.bit_bundle[dr.bit], step);
            found = true;
          } else {
            std::erase_if(zprime, [&](const Menu& menu) {
              return std::find(band.begin(), band.end(), menu) != band.end();
            });
          }
        }
        if (!found) {
          step.kind = "no-witness";
          std::erase_if(live.menus, [&](const Menu& menu) {
            return !live.Witnesses(menu).empty();
          });
          live.Refresh();
        }
      }
      step.live_after = live.size();
      res.price_bits += step.price_bits;
      res.disjointness_bits += step.disjointness_bits;
      res.steps.push_back(step);
      if (live.size() == 0) {
        throw SoundnessError(spec_.id + ": true menu eliminated during reconstruction");
      }
    }
    res.menu = live.menus.front();
    if (!(res.menu == truth)) {
      throw SoundnessError(spec_.id + ": reconstructed menu differs from extraction");
    }
    res.bits = res.price_bits + res.disjointness_bits + res.bookkeeping_bits;
    return res;
  }

 private:
  const MechanismSpec& spec_;
  const ValuationCatalog& catalog_;
  int i_;
  PlayerMenus menus_;
  ProofTable table_;
};

// Catalog index of each other player's valuation.
inline std::uint64_t OthersCode(const ValuationCatalog& catalog, int i,
                                const std::vector<Valuation>& v_minus_i) {
  if (static_cast<int>(v_minus_i.size()) != catalog.n() - 1) {
    throw DomainError("v_minus_i must have n-1 valuations");
  }
  std::vector<std::size_t> idx(catalog.n(), 0);
  for (int j = 0, k = 0; j < catalog.n(); ++j) {
    if (j == i) continue;
    const auto& list = catalog.player(j);
    auto it = std::find(list.begin(), list.end(), v_minus_i[k++]);
    if (it == list.end()) {
      throw DomainError("valuation of player " + std::to_string(j + 1) +
                        " is not in the catalog");
    }
    idx[j] = static_cast<std::size_t>(it - list.begin());
  }
  return OthersEnumerator(catalog, i).Code(idx);
}

inline CommReconstruction reconstruct_menu_comm(const MechanismSpec& spec,
                                                const ValuationCatalog& catalog, int i,
                                                const std::vector<Valuation>& v_minus_i,
                                                std::uint64_t seed = 0) {
  CommReconstructor rec(spec, catalog, i);
  return rec.Run(OthersCode(catalog, i, v_minus_i), seed);
}

}  // namespace taxlab

#endif  // TAXLAB_COMM_RECONSTRUCT_HPP_
