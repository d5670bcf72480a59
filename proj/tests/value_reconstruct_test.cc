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

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "taxlab/complexity.hpp"
#include "taxlab/library.hpp"
#include "taxlab/random.hpp"
#include "taxlab/value_reconstruct.hpp"

namespace taxlab {
namespace {

const Rat kInf = Rat::Infinity();

BoolOracle UselessOracle(const std::vector<Bundle>& k) {
  return [k](Bundle s) {
    for (Bundle t : k) {
      if (s.subset_of(t)) return Rat(0);
    }
    return Rat(1);
  };
}

// Maximal zero bundles found by scanning every bundle.
std::vector<Bundle> BruteUseless(int m, const BoolOracle& v) {
  std::vector<Bundle> out;
  for (std::uint32_t s = 0; s < NumBundles(m); ++s) {
    if (v(Bundle(s)) != 0) continue;
    bool maximal = true;
    for (int j : Bundle(s).complement(m).items()) {
      if (v(Bundle(s).with(j)) == 0) maximal = false;
    }
    if (maximal) out.push_back(Bundle(s));
  }
  return out;
}

TEST(LearnUselessTest, Examples) {
  UselessResult r = learn_useless(3, UselessOracle({Bundle(0)}), 1);
  EXPECT_EQ(r.useless, std::vector<Bundle>{Bundle(0)});

  r = learn_useless(2, UselessOracle({Bundle::Single(0)}), 1);
  EXPECT_EQ(r.useless, std::vector<Bundle>{Bundle::Single(0)});

  r = learn_useless(3, UselessOracle({Bundle::Of({0, 1}), Bundle::Single(2)}), 2);
  EXPECT_EQ(r.useless, (std::vector<Bundle>{Bundle::Of({0, 1}), Bundle::Single(2)}));
  EXPECT_LE(r.queries, 72);
}

TEST(LearnUselessTest, DetectsInconsistentOracles) {
  EXPECT_THROW(learn_useless(2, [](Bundle) { return Rat(1, 2); }, 1), OracleError);
  // Zero on {1,2} but one on {1}: not downward closed.
  BoolOracle bad = [](Bundle s) { return s == Bundle(1) ? Rat(1) : Rat(0); };
  EXPECT_THROW(learn_useless(2, bad, 4), OracleError);
  EXPECT_THROW(learn_useless(3, UselessOracle({Bundle(1), Bundle(2), Bundle(4)}), 2),
               OracleError);
}

TEST(LearnUselessTest, RandomInstancesWithinBudget) {
  Rng rng(53, "useless");
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + static_cast<int>(rng.Below(8));
    const int k_target = 1 + static_cast<int>(rng.Below(8));
    std::vector<Bundle> gens;
    for (int t = 0; t < k_target; ++t) gens.push_back(Bundle(rng.Mask(m)));
    BoolOracle v = UselessOracle(gens);
    const std::vector<Bundle> want = BruteUseless(m, v);
    const int k = static_cast<int>(want.size());
    ASSERT_LE(k, k_target);
    UselessResult r = learn_useless(m, v, k_target);
    EXPECT_EQ(r.useless, want);
    EXPECT_LE(r.queries, UselessQueryBound(m, k));
    // Visited bundles form a tree: each one extends an earlier one by an item.
    std::set<Bundle> seen;
    for (Bundle s : r.visited) {
      EXPECT_TRUE(seen.insert(s).second);
      if (!s.empty()) {
        const int last = 31 - std::countl_zero(s.mask());
        EXPECT_TRUE(seen.count(s.without(last))) << s;
      }
    }
    // Every zero bundle is visited, so the tree is as large as the zero
    // set plus one-valued leaves hanging off it.
    long long zeros = 0;
    for (std::uint32_t s = 0; s < NumBundles(m); ++s) zeros += v(Bundle(s)) == 0;
    long long visited_zeros = 0;
    for (Bundle s : r.visited) visited_zeros += v(s) == 0;
    EXPECT_EQ(visited_zeros, zeros);
    EXPECT_LE(static_cast<long long>(r.visited.size()), zeros * (m + 1));
  }
}

TEST(ReconstructValueTest, Examples) {
  Menu menu(2, {0, 1, 2, kInf});
  PriceOracle po = MenuPriceOracle(menu);
  ValueReconstruction r = reconstruct_menu_value(po, 3);
  EXPECT_EQ(r.menu, menu);
  EXPECT_EQ(r.ladder, (std::vector<Rat>{0, 1, 2}));

  PriceOracle empty = MenuPriceOracle(Menu::Empty(3));
  r = reconstruct_menu_value(empty, 1);
  EXPECT_EQ(r.menu, Menu::Empty(3));
  EXPECT_EQ(r.ladder.size(), 1u);

  Menu warm(2, {0, 3, kInf, kInf});
  PriceOracle wpo = MenuPriceOracle(warm);
  r = reconstruct_menu_value(wpo, 2);
  EXPECT_EQ(r.menu, warm);
  EXPECT_EQ(r.ladder, (std::vector<Rat>{0, 3}));

  PriceOracle rich = MenuPriceOracle(menu);
  EXPECT_THROW(reconstruct_menu_value(rich, 2), BoundError);
}

TEST(ReconstructValueTest, RandomMenusWithinCallBudget) {
  Rng rng(59, "ladder");
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng.Below(5));
    std::vector<Rat> raw(NumBundles(m));
    for (auto& x : raw) {
      x = rng.Below(4) == 0 ? kInf : Rat(static_cast<std::int64_t>(rng.Below(6)), 2);
    }
    raw[0] = 0;
    Menu menu = normalize_menu(Menu(m, raw));
    const int mc = menu_complexity(menu).count;
    PriceOracle po = MenuPriceOracle(menu);
    ValueReconstruction r = reconstruct_menu_value(po, mc);
    EXPECT_EQ(r.menu, menu) << menu.ToString();
    EXPECT_LE(r.oracle_calls, mc * UselessQueryBound(m, mc) + mc);
  }
}

TEST(ReconstructValueTest, ValueModeLibrary) {
  for (const LibraryInstance& inst : LibraryInstances(6)) {
    const MechanismSpec& spec = inst.spec;
    if (spec.mode != Mode::kValue) continue;
    ComplexityReport rep = measure_complexities(spec, inst.catalog);
    for (int i = 0; i < spec.n; ++i) {
      OthersEnumerator others(inst.catalog, i);
      Valuation self = Valuation::Zero(spec.m);
      for (std::uint64_t code = 0; code < others.count(); ++code) {
        auto ptrs = others.Profile(code, &self);
        std::vector<Valuation> v_minus_i;
        for (int j = 0; j < spec.n; ++j) {
          if (j != i) v_minus_i.push_back(*ptrs[j]);
        }
        PriceOracle po = MechanismPriceOracle(spec, i, v_minus_i);
        ValueReconstruction r = reconstruct_menu_value(po, std::max(rep.mc, 1));
        EXPECT_EQ(r.menu, rep.players[i].menus[rep.players[i].menu_of[code]])
            << spec.label;
      }
    }
  }
}

}  // namespace
}  // namespace taxlab
