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

#ifndef TAXLAB_VALUE_RECONSTRUCT_HPP_
#define TAXLAB_VALUE_RECONSTRUCT_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "taxlab/mechanism.hpp"
#include "taxlab/menu.hpp"

namespace taxlab {

// Value oracle for a 0/1 valuation.
using BoolOracle = std::function<Rat(Bundle)>;

struct UselessResult {
  std::vector<Bundle> useless;   // ascending mask order
  int queries = 0;
  std::vector<Bundle> visited;   // bundles in visiting order
};

namespace internal {

class UselessLearner {
 public:
  UselessLearner(int m, const BoolOracle& oracle, int k_bound)
      : m_(m), oracle_(oracle), k_bound_(k_bound) {}

  UselessResult Run() {
    Visit(Bundle(0), Bundle::Full(m_));
    std::sort(res_.useless.begin(), res_.useless.end());
    return std::move(res_);
  }

 private:
  // Answers are remembered; only fresh bundles cost a query.
  bool Zero(Bundle s) {
    if (auto it = seen_.find(s); it != seen_.end()) return it->second;
    const Rat x = oracle_(s);
    ++res_.queries;
    if (x != 0 && x != 1) {
      throw OracleError("oracle answer " + x.ToString() + " is not boolean");
    }
    const bool zero = x == 0;
    // Answers seen so far must describe a downward-closed zero set.
    for (const auto& [t, z] : seen_) {
      if ((zero && !z && t.subset_of(s)) || (!zero && z && s.subset_of(t))) {
        throw OracleError("oracle answers are not monotone at " + s.ToString());
      }
    }
    seen_[s] = zero;
    return zero;
  }

  void Visit(Bundle s, Bundle allowed) {
    res_.visited.push_back(s);
    if (!Zero(s)) return;
    bool useless = true;
    for (int j : s.complement(m_).items()) {
      if (Zero(s.with(j))) {
        useless = false;
        break;
      }
    }
    if (useless) {
      res_.useless.push_back(s);
      if (static_cast<int>(res_.useless.size()) > k_bound_) {
        throw OracleError("more than " + std::to_string(k_bound_) + " useless bundles");
      }
      return;
    }
    for (int j : allowed.items()) {
      allowed = allowed.without(j);
      Visit(s.with(j), allowed);
    }
  }

  int m_;
  const BoolOracle& oracle_;
  int k_bound_;
  UselessResult res_;
  std::map<Bundle, bool> seen_;
};

}  // namespace internal

// Finds the maximal zero bundles of a k-useless valuation by the
// recursive traversal from the empty bundle.
inline UselessResult learn_useless(int m, const BoolOracle& oracle, int k_bound) {
  CheckItemCount(m);
  if (k_bound < 1) throw DomainError("k_bound must be positive");
  return internal::UselessLearner(m, oracle, k_bound).Run();
}

// The budget (m+1) m^2 k.
inline long long UselessQueryBound(int m, int k) {
  return static_cast<long long>(m + 1) * m * m * k;
}

// Answers M(S) for one hidden normalized menu.
struct PriceOracle {
  int m = 0;
  std::function<Rat(Bundle)> price;
  int cost_per_call = 1;  // value queries per answer
  int calls = 0;

  Rat operator()(Bundle s) {
    ++calls;
    return price(s);
  }
};

inline PriceOracle MenuPriceOracle(const Menu& menu) {
  return {menu.m(), [menu](Bundle s) { return menu[s]; }, 1, 0};
}

// Prices read from probe runs of a value-mode mechanism; the cost per
// call is the largest number of value queries seen in a probe run.
inline PriceOracle MechanismPriceOracle(const MechanismSpec& spec, int i,
                                        const std::vector<Valuation>& v_minus_i) {
  auto others = std::make_shared<std::vector<Valuation>>(v_minus_i);
  auto cost = std::make_shared<int>(0);
  auto run = [spec, i, others, cost](Bundle s) {
    Valuation probe = MenuProbe(spec.m, spec.B, s);
    std::vector<const Valuation*> ptrs;
    for (const Valuation& v : *others) ptrs.push_back(&v);
    RunResult r = run_mechanism(spec, WithPlayer(ptrs, i, &probe));
    *cost = std::max(*cost, r.log.TotalValue());
    return s.subset_of(r.outcome.allocation[i]) ? r.outcome.payments[i] : Rat::Infinity();
  };
  const Rat base = run(Bundle(0));
  PriceOracle po{spec.m, nullptr, 0, 0};
  po.price = [run, base](Bundle s) {
    const Rat p = run(s);
    return p.is_finite() ? p - base : p;
  };
  po.cost_per_call = *cost;
  return po;
}

struct ValueReconstruction {
  Menu menu;
  std::vector<Rat> ladder;            // thresholds visited
  std::map<Bundle, Rat> in_menu;      // learned menu bundles with prices
  int oracle_calls = 0;
  long long learner_queries = 0;
};

// Rebuilds a menu from price answers alone by learning the useless
// bundles of v^p for an increasing ladder of thresholds p.
inline ValueReconstruction reconstruct_menu_value(PriceOracle& po, int mc_bound) {
  const int m = po.m;
  const int start_calls = po.calls;
  ValueReconstruction res;
  Rat p = 0;
  while (true) {
    if (static_cast<int>(res.ladder.size()) >= mc_bound) {
      throw BoundError("value ladder exceeds the menu-complexity bound " +
                       std::to_string(mc_bound));
    }
    res.ladder.push_back(p);
    std::map<Bundle, Rat> answers;
    Rat next = Rat::Infinity();
    BoolOracle vp = [&](Bundle s) {
      const Rat price = po(s);
      answers[s] = price;
      if (price > p) next = Min(next, price);
      return price <= p ? Rat(0) : Rat(1);
    };
    UselessResult u = learn_useless(m, vp, mc_bound);
    res.learner_queries += u.queries;
    for (Bundle s : u.useless) res.in_menu.emplace(s, answers.at(s));
    if (next.is_infinite()) break;
    p = next;
  }
  std::vector<Rat> table(NumBundles(m), Rat::Infinity());
  for (std::uint32_t t = 0; t < table.size(); ++t) {
    for (const auto& [s, price] : res.in_menu) {
      if (Bundle(t).subset_of(s)) table[t] = Min(table[t], price);
    }
  }
  res.menu = Menu(m, std::move(table));
  res.oracle_calls = po.calls - start_calls;
  return res;
}

}  // namespace taxlab

#endif  // TAXLAB_VALUE_RECONSTRUCT_HPP_
