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

#include <string>
#include <vector>

#include "taxlab/complexity.hpp"
#include "taxlab/library.hpp"
#include "taxlab/random.hpp"

namespace taxlab {
namespace {

const Rat kInf = Rat::Infinity();

Valuation ItemA(int m, const Rat& x) {
  std::vector<Rat> items(m, Rat(0));
  items[0] = x;
  return Valuation::Additive(items);
}

TEST(RunMechanismTest, WarmupRuns) {
  MechanismSpec spec = MakeWarmupTightness(2);
  RunResult r = run_mechanism(spec, Profile{ItemA(2, Rat(12, 5)), ItemA(2, 3)});
  EXPECT_EQ(r.outcome.allocation[1], Bundle::Single(0));
  EXPECT_EQ(r.outcome.payments[1], Rat(2));
  EXPECT_EQ(r.transcript.bits(), 3);

  r = run_mechanism(spec, Profile{ItemA(2, Rat(12, 5)), ItemA(2, 1)});
  EXPECT_TRUE(r.outcome.allocation[1].empty());
  EXPECT_EQ(r.outcome.payments[1], Rat(0));
  EXPECT_FALSE(r.transcript.BitSequence().back().second);

  MechanismSpec one = make_example("warmup_tightness", {{"c", 1}});
  r = run_mechanism(one, Profile{ItemA(2, 1), ItemA(2, 1)});
  EXPECT_EQ(r.outcome.allocation[1], Bundle::Single(0));
  EXPECT_EQ(r.outcome.payments[1], Rat(1));
}

TEST(RunMechanismTest, RejectsBadInputs) {
  MechanismSpec spec = MakeWarmupTightness(1);
  EXPECT_THROW(run_mechanism(spec, Profile{ItemA(2, 1)}), DomainError);
  MechanismSpec gadget = MakeMtGadget(4);
  Valuation two_hidden = Valuation::FromFunction(4, [](Bundle s) {
    if (s.size() > 2) return Rat(1);
    return s == Bundle(3) || s == Bundle(12) ? Rat(1, 4) : Rat(0);
  });
  EXPECT_THROW(run_mechanism(gadget, Profile{two_hidden, Valuation::Zero(4)}),
               DomainError);

  MechanismSpec broken = spec;
  broken.program = [](Execution&) {
    return Outcome{{Bundle(1), Bundle(1)}, {Rat(0), Rat(0)}};
  };
  EXPECT_THROW(run_mechanism(broken, Profile{ItemA(2, 1), ItemA(2, 1)}),
               MechanismError);
}

TEST(RunMechanismTest, AllZeroProfilesPayMenuPrices) {
  for (const LibraryInstance& inst : LibraryInstances(6)) {
    const MechanismSpec& spec = inst.spec;
    Profile zero(spec.n, Valuation::Zero(spec.m));
    if (spec.domain) {
      for (int i = 0; i < spec.n; ++i) {
        if (!spec.domain(i, zero[i])) zero[i] = inst.catalog.player(i)[0];
      }
    }
    RunResult r = run_mechanism(spec, zero);
    for (int i = 0; i < spec.n; ++i) {
      Profile others = zero;
      others.erase(others.begin() + i);
      Menu menu = extract_menu(spec, i, others);
      EXPECT_EQ(r.outcome.payments[i], menu[r.outcome.allocation[i]]) << spec.label;
    }
  }
}

TEST(RunMechanismTest, Deterministic) {
  Rng rng(5, "det");
  for (const LibraryInstance& inst : LibraryInstances(6)) {
    for (int k = 0; k < 5; ++k) {
      std::vector<std::size_t> idx;
      for (int i = 0; i < inst.spec.n; ++i) idx.push_back(rng.Below(inst.catalog.size(i)));
      Profile p = inst.catalog.At(idx);
      EXPECT_EQ(run_mechanism(inst.spec, p).transcript,
                run_mechanism(inst.spec, p).transcript);
    }
  }
}

TEST(ExtractMenuTest, Examples) {
  Menu warm = extract_menu(MakeWarmupTightness(2), 1, {ItemA(2, 3)});
  EXPECT_EQ(warm, Menu(2, {0, 3, kInf, kInf}));
  Menu posted = extract_menu(MakePostedPrices({1, 1}, 1), 0, {});
  EXPECT_EQ(posted, Menu(2, {0, 1, 1, 2}));
  MechanismSpec nothing = MakeWarmupTightness(1);
  nothing.program = [](Execution&) { return EmptyOutcome(2); };
  EXPECT_EQ(extract_menu(nothing, 1, {ItemA(2, 1)}), Menu::Empty(2));
}

TEST(ExtractMenuTest, NonMonotonePricesAreFlagged) {
  MechanismSpec spec = MakePostedPrices({1, 1}, 1);
  spec.program = [](Execution& ex) {
    Outcome out = EmptyOutcome(1);
    // Sells the pair at 1 but singletons at 2: no menu explains this.
    const Valuation& v = ex.own(0);
    if (v[Bundle(3)] >= 12) {
      out.allocation[0] = Bundle(3);
      out.payments[0] = 1;
    } else if (v[Bundle(1)] >= 6) {
      out.allocation[0] = Bundle(1);
      out.payments[0] = 2;
    }
    return out;
  };
  EXPECT_THROW(extract_menu(spec, 0, {}), MechanismError);
}

TEST(MeasureTest, WarmupTaxAndCc) {
  for (int c = 1; c <= 4; ++c) {
    ComplexityReport rep = measure_complexities(MakeWarmupTightness(c), WarmupCatalog(c));
    EXPECT_TRUE(rep.valid) << rep.witness;
    EXPECT_EQ(rep.tax, c);
    EXPECT_EQ(rep.cc, c + 1);
    EXPECT_EQ(rep.price, c + 1);
    EXPECT_EQ(rep.tie, 1);
  }
}

TEST(MeasureTest, ValueTightnessQueries) {
  MechanismSpec spec = make_example("value_tightness", {{"c", 2}, {"m", 2}});
  ComplexityReport rep = measure_complexities(spec, DefaultCatalog(spec, {{"c", 2}}));
  EXPECT_TRUE(rep.valid) << rep.witness;
  EXPECT_EQ(rep.val, 3);
  EXPECT_EQ(rep.mc, 3);
}

TEST(MeasureTest, SingleMenuHasZeroTax) {
  MechanismSpec spec = MakePostedPrices({1, 2}, 1);
  ComplexityReport rep = measure_complexities(spec, PostedCatalog(2, 1));
  EXPECT_EQ(rep.tax, 0);
  EXPECT_EQ(rep.dem, 1);
}

TEST(MeasureTest, LibraryInequalities) {
  for (const LibraryInstance& inst : LibraryInstances(6)) {
    ComplexityReport rep = measure_complexities(inst.spec, inst.catalog);
    EXPECT_TRUE(rep.valid) << inst.spec.label << " " << rep.witness;
    EXPECT_LE(rep.tax, rep.cc) << inst.spec.label;
    EXPECT_LE(rep.tax + rep.price + rep.tie, 3 * rep.cc) << inst.spec.label;
    if (inst.spec.mode == Mode::kValue) {
      EXPECT_LE(rep.mc, rep.val + 2) << inst.spec.label;
    }
  }
}

TEST(MakeExampleTest, UnknownIdAndBadParams) {
  EXPECT_THROW(make_example("nope"), DomainError);
  EXPECT_THROW(make_example("drop_tie", {{"m", 3}}), DomainError);
  EXPECT_THROW(make_example("posted_prices", {{"p", {"-1"}}}), DomainError);
}

TEST(MakeExampleTest, GadgetWithSilentBob) {
  MechanismSpec spec = MakeMtGadget(4);
  RunResult r = run_mechanism(spec, Profile{GadgetValuation(4, Bundle(3)), Valuation::Zero(4)});
  EXPECT_TRUE(r.outcome.allocation[1].empty());
}

// Outcome of one reduction run decoded into an intersection verdict.
bool DecodeDrop(const MechanismSpec& spec, const std::string& a, const std::string& b) {
  const int m = spec.m;
  if (spec.id == "drop_tie") {
    RunResult r = run_mechanism(spec, Profile{EncodeDisjointness(m, a, 1),
                                              EncodeDisjointness(m, b, 1)});
    return r.outcome.allocation[1] == Bundle::Single(0);
  }
  if (spec.id == "drop_tax") {
    RunResult r = run_mechanism(spec, Profile{EncodeDisjointness(m, a, 1),
                                              EncodeDisjointness(m, b, 2)});
    return !r.outcome.allocation[1].empty();
  }
  RunResult r = run_mechanism(spec, Profile{EncodeDisjointness(m, a, 1),
                                            EncodeDisjointness(m, b, 1),
                                            ItemA(m, Rat(3, 2))});
  return !r.outcome.allocation[2].empty();
}

TEST(ReductionTest, DecodesDisjointness) {
  for (int m : {4, 6, 8}) {
    for (const char* id : {"drop_tie", "drop_tax", "drop_price"}) {
      MechanismSpec spec = make_example(id, {{"m", m}});
      Rng rng(29, id, m);
      const int len = BinomialHalf(m);
      for (int k = 0; k < 200; ++k) {
        std::string a = RandomBits(len, rng), b = RandomBits(len, rng);
        if (k % 4 == 0) {
          // Sparse pairs make the disjoint case common.
          for (int j = 0; j < len; ++j) {
            if (rng.Below(3)) a[j] = '0';
            if (rng.Below(3)) b[j] = '0';
          }
        }
        EXPECT_EQ(DecodeDrop(spec, a, b), StringsIntersect(a, b)) << id << " m=" << m;
      }
    }
  }
}

TEST(ReductionTest, MeasuredProfiles) {
  MechanismSpec tie = MakeDropTie(4);
  ComplexityReport rt = measure_complexities(tie, DropTieCatalog(4));
  EXPECT_TRUE(rt.valid);
  EXPECT_EQ(rt.players[1].menus.size(), 1u);
  EXPECT_EQ(rt.price, 0);

  MechanismSpec tax = MakeDropTax(4);
  ComplexityReport rx = measure_complexities(tax, DropTaxCatalog(4));
  EXPECT_TRUE(rx.valid) << rx.witness;
  EXPECT_EQ(rx.price, 1);
  EXPECT_EQ(rx.tie, 4);

  MechanismSpec price = MakeDropPrice(4);
  ComplexityReport rp = measure_complexities(price, DropPriceCatalog(4));
  EXPECT_TRUE(rp.valid) << rp.witness;
  EXPECT_EQ(rp.players[2].menus.size(), 2u);
  EXPECT_EQ(rp.tie, 0);
}

TEST(EncodingTest, HalfSizeBitsRoundTrip) {
  Rng rng(31, "encode");
  for (int m : {2, 4, 6}) {
    for (int k = 0; k < 20; ++k) {
      std::string bits = RandomBits(BinomialHalf(m), rng);
      Valuation v = EncodeDisjointness(m, bits, 2);
      EXPECT_EQ(HalfSizeBits(v, 2, true), bits);
    }
  }
}

}  // namespace
}  // namespace taxlab
