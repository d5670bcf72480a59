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

#ifndef TAXLAB_VALUATION_HPP_
#define TAXLAB_VALUATION_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "taxlab/bundle.hpp"
#include "taxlab/errors.hpp"
#include "taxlab/rational.hpp"

namespace taxlab {

// Additive clauses a_1..a_t; the induced valuation is max_r a_r(S).
struct XOSClauses {
  int m = 0;
  std::vector<std::vector<Rat>> clauses;
};

// Normalized, monotone, finite table over all 2^m bundles.
class Valuation {
 public:
  Valuation() = default;

  Valuation(int m, std::vector<Rat> table) : m_(m), table_(std::move(table)) {
    Validate();
  }

  static Valuation FromFunction(int m, const std::function<Rat(Bundle)>& f) {
    CheckItemCount(m);
    std::vector<Rat> t(NumBundles(m));
    for (std::uint32_t s = 0; s < t.size(); ++s) t[s] = f(Bundle(s));
    return Valuation(m, std::move(t));
  }

  static Valuation Additive(const std::vector<Rat>& item_values) {
    int m = static_cast<int>(item_values.size());
    return FromFunction(m, [&](Bundle s) {
      Rat sum = 0;
      for (int j : s.items()) sum += item_values[j];
      return sum;
    });
  }

  static Valuation Zero(int m) {
    return FromFunction(m, [](Bundle) { return Rat(0); });
  }

  int m() const { return m_; }
  const std::vector<Rat>& table() const { return table_; }
  const Rat& operator[](Bundle s) const { return table_[s.mask()]; }

  Rat at(Bundle s) const {
    if (s.mask() >= table_.size()) {
      throw DomainError("bundle out of range: " + std::to_string(s.mask()));
    }
    return table_[s.mask()];
  }

  const std::optional<XOSClauses>& xos_witness() const { return xos_; }
  void set_xos_witness(XOSClauses c) { xos_ = std::move(c); }

  Rat MaxValue() const { return table_.back(); }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.m_ == b.m_ && a.table_ == b.table_;
  }

 private:
  void Validate() const {
    CheckItemCount(m_);
    if (table_.size() != NumBundles(m_)) {
      throw DomainError("valuation table has wrong size");
    }
    for (const Rat& x : table_) {
      if (x.is_infinite()) throw DomainError("valuation entry is infinite");
    }
    if (table_[0] != 0) throw DomainError("valuation not normalized");
    for (std::uint32_t s = 0; s < table_.size(); ++s) {
      for (int j = 0; j < m_; ++j) {
        std::uint32_t t = s | (1u << j);
        if (t != s && table_[t] < table_[s]) {
          throw DomainError("valuation not monotone at " +
                            Bundle(s).ToString() + " vs " +
                            Bundle(t).ToString());
        }
      }
    }
  }

  int m_ = 0;
  std::vector<Rat> table_{Rat(0)};
  std::optional<XOSClauses> xos_;
};

using Profile = std::vector<Valuation>;

inline Rat value_query(const Valuation& v, Bundle s) { return v.at(s); }

struct DemandAnswer {
  Bundle bundle;
  Rat value;
};

// Profit-maximizing bundle under item prices; ties to the smallest mask.
inline DemandAnswer demand_query(const Valuation& v,
                                 const std::vector<Rat>& prices) {
  const int m = v.m();
  if (static_cast<int>(prices.size()) != m) {
    throw DomainError("price vector length mismatch");
  }
  std::uint32_t blocked = 0;
  for (int j = 0; j < m; ++j) {
    if (prices[j].is_infinite()) blocked |= 1u << j;
  }
  // Price of each bundle by lowest-bit recurrence.
  std::vector<Rat> cost(NumBundles(m));
  std::uint32_t best = 0;
  Rat best_profit = 0;
  for (std::uint32_t s = 1; s < cost.size(); ++s) {
    if (s & blocked) continue;
    int low = std::countr_zero(s);
    cost[s] = cost[s & (s - 1)] + prices[low];
    Rat profit = v[Bundle(s)] - cost[s];
    if (profit > best_profit) {
      best_profit = profit;
      best = s;
    }
  }
  return {Bundle(best), v[Bundle(best)]};
}

struct ClassFlags {
  bool additive = false;
  bool submodular = false;
  bool xos_certified = false;
  bool subadditive = false;

  friend bool operator==(const ClassFlags&, const ClassFlags&) = default;
};

inline Valuation xos_from_clauses(const XOSClauses& c) {
  CheckItemCount(c.m);
  if (c.clauses.empty()) throw DomainError("XOS clause list is empty");
  for (const auto& a : c.clauses) {
    if (static_cast<int>(a.size()) != c.m) {
      throw DomainError("XOS clause length mismatch");
    }
    for (const Rat& x : a) {
      if (x.is_infinite() || x < 0) {
        throw DomainError("XOS clause entry must be finite and nonnegative");
      }
    }
  }
  std::vector<Rat> table(NumBundles(c.m));
  std::vector<Rat> sums(NumBundles(c.m));
  for (const auto& a : c.clauses) {
    for (std::uint32_t s = 1; s < sums.size(); ++s) {
      sums[s] = sums[s & (s - 1)] + a[std::countr_zero(s)];
      table[s] = Max(table[s], sums[s]);
    }
  }
  Valuation v(c.m, std::move(table));
  v.set_xos_witness(c);
  return v;
}

inline ClassFlags classify_valuation(const Valuation& v) {
  const int m = v.m();
  const std::uint32_t n = static_cast<std::uint32_t>(NumBundles(m));
  ClassFlags f;
  f.additive = true;
  for (std::uint32_t s = 0; s < n && f.additive; ++s) {
    Rat sum = 0;
    for (int j : Bundle(s).items()) sum += v[Bundle::Single(j)];
    if (sum != v[Bundle(s)]) f.additive = false;
  }
  f.submodular = true;
  f.subadditive = true;
  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::uint32_t t = s; t < n; ++t) {
      Rat lhs = v[Bundle(s)] + v[Bundle(t)];
      if (lhs < v[Bundle(s | t)] + v[Bundle(s & t)]) f.submodular = false;
      if (lhs < v[Bundle(s | t)]) f.subadditive = false;
    }
  }
  if (v.xos_witness()) {
    f.xos_certified = (xos_from_clauses(*v.xos_witness()) == v);
  }
  if (f.additive) f.submodular = true;
  if (f.submodular || f.xos_certified) f.subadditive = true;
  return f;
}

struct WelfareResult {
  std::vector<Bundle> allocation;
  Rat welfare;
};

// Exhaustive optimum over all n^m item assignments.
inline WelfareResult optimal_welfare(const Profile& vs) {
  const int n = static_cast<int>(vs.size());
  if (n < 1 || n > 4) {
    throw CapacityError("exhaustive welfare supports 1..4 players");
  }
  const int m = vs[0].m();
  for (const auto& v : vs) {
    if (v.m() != m) throw DomainError("item count mismatch");
  }
  std::vector<int> owner(m, 0);
  WelfareResult best;
  bool have = false;
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) total *= static_cast<std::uint64_t>(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    std::vector<Bundle> alloc(n);
    for (int j = 0; j < m; ++j) {
      alloc[c % n] = alloc[c % n].with(j);
      c /= n;
    }
    Rat w = 0;
    for (int i = 0; i < n; ++i) w += vs[i][alloc[i]];
    auto key = [](const std::vector<Bundle>& a) {
      std::vector<std::uint32_t> k;
      for (Bundle b : a) k.push_back(b.mask());
      return k;
    };
    if (!have || w > best.welfare ||
        (w == best.welfare && key(alloc) < key(best.allocation))) {
      best = {alloc, w};
      have = true;
    }
  }
  return best;
}

// Finite per-player valuation lists, all with the same m.
class ValuationCatalog {
 public:
  ValuationCatalog() = default;
  explicit ValuationCatalog(std::vector<std::vector<Valuation>> players)
      : players_(std::move(players)) {
    if (players_.empty()) throw DomainError("catalog has no players");
    int m = -1;
    for (const auto& list : players_) {
      if (list.empty()) throw DomainError("catalog player list is empty");
      for (std::size_t a = 0; a < list.size(); ++a) {
        if (m < 0) m = list[a].m();
        if (list[a].m() != m) throw DomainError("catalog item count mismatch");
        for (std::size_t b = 0; b < a; ++b) {
          if (list[a] == list[b]) {
            throw DomainError("duplicate valuation in catalog");
          }
        }
      }
    }
    m_ = m;
  }

  int n() const { return static_cast<int>(players_.size()); }
  int m() const { return m_; }
  const std::vector<Valuation>& player(int i) const { return players_[i]; }
  std::size_t size(int i) const { return players_[i].size(); }

  // Number of full profiles.
  std::uint64_t NumProfiles() const {
    std::uint64_t k = 1;
    for (const auto& p : players_) k *= p.size();
    return k;
  }

  // Decodes a mixed-radix profile index into per-player indices.
  std::vector<std::size_t> Decode(std::uint64_t code) const {
    std::vector<std::size_t> idx(players_.size());
    for (std::size_t i = 0; i < players_.size(); ++i) {
      idx[i] = code % players_[i].size();
      code /= players_[i].size();
    }
    return idx;
  }

  Profile At(const std::vector<std::size_t>& idx) const {
    Profile p;
    for (std::size_t i = 0; i < players_.size(); ++i) {
      p.push_back(players_[i][idx[i]]);
    }
    return p;
  }

 private:
  std::vector<std::vector<Valuation>> players_;
  int m_ = 0;
};

}  // namespace taxlab

#endif  // TAXLAB_VALUATION_HPP_
