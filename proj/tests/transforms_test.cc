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

#include <cstdio>
#include <vector>

#include "taxlab/library.hpp"
#include "taxlab/transforms.hpp"

namespace taxlab {
namespace {

TEST(DominantRunTest, TruthfulPathMatchesMechanism) {
  for (const LibraryInstance& inst : LibraryInstances(4)) {
    if (inst.spec.n != 2) continue;
    DominantTransform tr(inst.spec, inst.catalog);
    const int m = inst.spec.m;
    for (std::size_t a = 0; a < inst.catalog.size(0); ++a) {
      for (std::size_t b = 0; b < inst.catalog.size(1); ++b) {
        const DominantRun r = tr.Run({tr.Truthful(0, a), tr.Truthful(1, b)});
        const RunResult& base = tr.InnerRun(a, b);
        EXPECT_TRUE(r.consistent) << inst.spec.label;
        EXPECT_EQ(r.outcome.allocation, base.outcome.allocation) << inst.spec.label;
        EXPECT_EQ(r.outcome.payments, base.outcome.payments) << inst.spec.label;
        EXPECT_LE(r.bits, 2 * (std::max(tr.IndexBits(0), tr.IndexBits(1)) + m) +
                              base.transcript.bits());
      }
    }
  }
}

TEST(DominantRunTest, WrongIndexBlamesTheSender) {
  const MechanismSpec spec = MakeWarmupTightness(1);
  const ValuationCatalog catalog = WarmupCatalog(1);
  DominantTransform tr(spec, catalog);
  // Alice (value 1) announces the menu of value 2; Bob (value 3) is truthful.
  DeviationStrategy alice = tr.Truthful(0, 0);
  alice.menu_index = tr.TruthfulIndex(0, 1);
  ASSERT_NE(alice.menu_index, tr.TruthfulIndex(0, 0));
  const DominantRun r = tr.Run({alice, tr.Truthful(1, 3)});
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.inconsistent, 0);
  EXPECT_TRUE(r.outcome.allocation[0].empty());
  // Bob takes his announced best bundle from the menu Alice announced.
  const Menu& shown = tr.menus(1).menus[alice.menu_index];
  EXPECT_EQ(r.announced[1], profit_argmax_set(shown, catalog.player(1)[3]).front());
  EXPECT_EQ(r.outcome.allocation[1], r.announced[1]);
  EXPECT_EQ(r.outcome.payments[1], shown[r.announced[1]]);
}

TEST(DominantRunTest, ConsistentMisreportGetsThatProfileOutcome) {
  const MechanismSpec spec = MakeWarmupTightness(2);
  const ValuationCatalog catalog = WarmupCatalog(2);
  DominantTransform tr(spec, catalog);
  const DominantRun r = tr.Run({tr.Truthful(0, 2), tr.Truthful(1, 4)});
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.outcome.allocation, tr.InnerRun(2, 4).outcome.allocation);
  EXPECT_EQ(r.outcome.payments, tr.InnerRun(2, 4).outcome.payments);
}

TEST(DeviationAuditTest, LibraryTwoPlayerMechanisms) {
  for (const LibraryInstance& inst : LibraryInstances(4)) {
    if (inst.spec.n != 2) continue;
    const AuditReport rep = deviation_audit(inst.spec, inst.catalog, false);
    EXPECT_LE(rep.max_violation, Rat(0)) << inst.spec.label << " " << rep.worst;
    EXPECT_EQ(rep.violations, 0) << inst.spec.label;
    EXPECT_GT(rep.cases, 0);
    std::printf("%-40s cases=%lld max gap=%s\n", rep.mechanism.c_str(), rep.cases,
                rep.max_violation.ToString().c_str());
  }
}

TEST(DeviationAuditTest, TruthfulRowsHaveZeroGap) {
  const MechanismSpec spec = MakeWarmupTightness(2);
  const AuditReport rep = deviation_audit(spec, WarmupCatalog(2));
  int honest = 0;
  for (const AuditRow& row : rep.rows) {
    const std::string name = DeviationStrategy{0, std::nullopt, row.valuation}.Name();
    if (row.player == 0 && row.deviation == name) {
      EXPECT_EQ(row.gap, Rat(0));
      ++honest;
    }
  }
  EXPECT_GT(honest, 0);
}

TEST(StrictifyTest, TiltExample) {
  const Valuation v(2, {0, 1, 1, 1});
  const Valuation t = Tilt(v, Rat(1, 4));
  EXPECT_EQ(t[Bundle(1)], Rat(17, 16));
  EXPECT_EQ(t[Bundle(2)], Rat(17, 16));
  EXPECT_EQ(t[Bundle(3)], Rat(9, 8));
}

TEST(StrictifyTest, ZeroBecomesStrictlyIncreasing) {
  const Valuation t = Tilt(Valuation::Zero(3), Rat(1, 2));
  for (std::uint32_t s = 0; s < 8; ++s) {
    for (int j = 0; j < 3; ++j) {
      if (!(s >> j & 1)) {
        EXPECT_GT(t[Bundle(s | 1u << j)], t[Bundle(s)]);
      }
    }
  }
}

TEST(StrictifyTest, StaysMonotoneAndClose) {
  Rng rng(5, "strictify-test");
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.Below(4));
    const Valuation v = RandomMonotone(m, rng, 3, 2);
    const Rat eps(1, 1 + static_cast<std::int64_t>(rng.Below(8)));
    const Valuation w = strictify(v, eps, (std::int64_t{1} << (2 * m + 2)) + 1, trial);
    // Construction already rejects non-monotone tables.
    for (std::uint32_t s = 0; s < NumBundles(m); ++s) {
      EXPECT_GE(w[Bundle(s)], v[Bundle(s)]);
      EXPECT_LE(w[Bundle(s)] - v[Bundle(s)], eps);
    }
  }
  EXPECT_THROW(strictify(Valuation::Zero(2), Rat(0), 5, 0), ConfigError);
  EXPECT_THROW(strictify(Valuation::Zero(2), Rat(1), 1, 0), ConfigError);
}

TEST(StrictifyTest, PreciseWithinThreeResamples) {
  const MechanismSpec spec = MakeDropTax(4);
  const ValuationCatalog catalog = DropTaxCatalog(4);
  std::vector<Menu> menus;
  for (int i = 0; i < 2; ++i) {
    for (const Menu& menu : BuildPlayerMenus(spec, catalog, i).menus) menus.push_back(menu);
  }
  const int tax = 3;
  const std::int64_t grid = (std::int64_t{1} << (2 * 4 + tax)) + 1;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Valuation& v = catalog.player(seed % 2)[seed % catalog.size(seed % 2)];
    const StrictifyResult r = StrictifyPrecise(v, menus, Rat(1, 8), grid, seed);
    EXPECT_LE(r.attempts, 3);
    EXPECT_TRUE(PreciseAgainst(r.v, menus));
  }
}

// Strictified copy of a catalog; rejected when the mechanism's menus would
// not be precise for it.
ValuationCatalog StrictCatalog(const MechanismSpec& spec, const ValuationCatalog& catalog,
                               const Rat& eps) {
  std::vector<std::vector<Valuation>> players(2);
  for (int i = 0; i < 2; ++i) {
    for (std::size_t v = 0; v < catalog.size(i); ++v) {
      players[i].push_back(strictify(catalog.player(i)[v], eps, 1 << 12, 100 * i + v));
    }
  }
  (void)spec;
  return ValuationCatalog(players);
}

TEST(SimultaneousTest, WarmupContainsMechanismAllocation) {
  const MechanismSpec spec = MakeWarmupTightness(2);
  const ValuationCatalog catalog = StrictCatalog(spec, WarmupCatalog(2), Rat(1, 16));
  const SimultaneousTable table = to_simultaneous(spec, catalog);
  EXPECT_EQ(table.bits(), 2 * 2);
  for (std::size_t a = 0; a < catalog.size(0); ++a) {
    for (std::size_t b = 0; b < catalog.size(1); ++b) {
      const RunResult r = run_mechanism(
          spec, std::vector<const Valuation*>{&catalog.player(0)[a], &catalog.player(1)[b]});
      const auto split = table.Run(a, b);
      EXPECT_TRUE(r.outcome.allocation[0].subset_of(split[0]));
      EXPECT_TRUE(r.outcome.allocation[1].subset_of(split[1]));
      EXPECT_EQ(split[0] & split[1], Bundle(0));
      const Rat before = catalog.player(0)[a][r.outcome.allocation[0]] +
                         catalog.player(1)[b][r.outcome.allocation[1]];
      const Rat after = catalog.player(0)[a][split[0]] + catalog.player(1)[b][split[1]];
      EXPECT_GE(after, before);
    }
  }
}

TEST(SimultaneousTest, RejectsImpreciseCatalogs) {
  EXPECT_THROW(to_simultaneous(MakeWarmupTightness(2), WarmupCatalog(2)), ContractError);
}

TEST(SimultaneousTest, ConstantMenusGiveOneCell) {
  MechanismSpec spec = MakeWarmupTightness(1);
  spec.id = "split";
  spec.program = [](Execution& ex) {
    Outcome out = EmptyOutcome(2);
    if (ex.own(0)[Bundle::Single(0)] > 1) {
      out.allocation[0] = Bundle::Single(0);
      out.payments[0] = 1;
    }
    if (ex.own(1)[Bundle::Single(1)] > 1) {
      out.allocation[1] = Bundle::Single(1);
      out.payments[1] = 1;
    }
    ex.SendBit(0, !out.allocation[0].empty());
    ex.SendBit(1, !out.allocation[1].empty());
    return out;
  };
  std::vector<Valuation> alice, bob;
  for (int x : {0, 2, 3}) {
    alice.push_back(Valuation::Additive({Rat(x), Rat(0)}));
    bob.push_back(Valuation::Additive({Rat(0), Rat(x)}));
  }
  const ValuationCatalog catalog(std::vector<std::vector<Valuation>>{alice, bob});
  const SimultaneousTable table = to_simultaneous(spec, catalog);
  EXPECT_EQ(table.rows(), 1u);
  EXPECT_EQ(table.cols(), 1u);
  EXPECT_EQ(table.bits(), 0);
  EXPECT_EQ(table.At(0, 0), Bundle::Single(0));
}

}  // namespace
}  // namespace taxlab
