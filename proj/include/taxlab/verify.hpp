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

#ifndef TAXLAB_VERIFY_HPP_
#define TAXLAB_VERIFY_HPP_

#include <set>
#include <string>
#include <vector>

#include "taxlab/mechanism.hpp"
#include "taxlab/menu.hpp"
#include "taxlab/random.hpp"
#include "taxlab/valuation.hpp"

namespace taxlab {

// Monotone table over rationals and infinity with f(empty) = 0; the
// candidate menu held by the verifying player.
class BaseFunction {
 public:
  BaseFunction() = default;
  BaseFunction(int m, std::vector<Rat> table) : m_(m), table_(std::move(table)) {
    CheckItemCount(m_);
    if (table_.size() != NumBundles(m_)) {
      throw DomainError("base function table has wrong size");
    }
    if (table_[0] != 0) throw DomainError("base function must vanish on the empty bundle");
    for (std::uint32_t s = 0; s < table_.size(); ++s) {
      if (table_[s].is_finite() && table_[s] < 0) {
        throw DomainError("base function entry is negative");
      }
      for (int j = 0; j < m_; ++j) {
        const std::uint32_t t = s | (1u << j);
        if (t != s && table_[t] < table_[s]) {
          throw DomainError("base function not monotone at " + Bundle(s).ToString());
        }
      }
    }
  }
  explicit BaseFunction(const Menu& menu) : BaseFunction(menu.m(), menu.prices()) {}

  int m() const { return m_; }
  const std::vector<Rat>& table() const { return table_; }
  const Rat& operator[](Bundle s) const { return table_[s.mask()]; }

  // Finite entries must not exceed the price bound.
  void CheckBound(const Rat& B) const {
    for (const Rat& x : table_) {
      if (x.is_finite() && x > B) {
        throw DomainError("base function entry " + x.ToString() + " exceeds B");
      }
    }
  }

 private:
  int m_ = 0;
  std::vector<Rat> table_{Rat(0)};
};

enum class ProbeClass { kGeneral, kSubadditive, kXos, kSubmodular };

inline std::string ProbeClassName(ProbeClass c) {
  switch (c) {
    case ProbeClass::kGeneral: return "general";
    case ProbeClass::kSubadditive: return "subadditive";
    case ProbeClass::kXos: return "xos";
    case ProbeClass::kSubmodular: return "submodular";
  }
  return "?";
}

inline ValuationClass ValuationClassOf(ProbeClass c) {
  switch (c) {
    case ProbeClass::kGeneral: return ValuationClass::kGeneral;
    case ProbeClass::kSubadditive: return ValuationClass::kSubadditive;
    case ProbeClass::kXos: return ValuationClass::kXos;
    case ProbeClass::kSubmodular: return ValuationClass::kSubmodular;
  }
  return ValuationClass::kGeneral;
}

// One probe valuation plus the parameters of its decision rule.
struct Probe {
  Valuation v;
  int r = 0;            // xos: bundle size
  int k = 0;            // submodular: bundle size
  Rat w;                // submodular: target value (may be infinite)
  Rat shift;            // subadditive: max_T of the general probe
  Rat t;                // submodular: the unit 2^{m+1} B
};

// f where finite, 3B elsewhere.
inline Valuation GeneralProbe(const BaseFunction& f, const Rat& B) {
  return Valuation::FromFunction(f.m(), [&](Bundle s) {
    return f[s].is_finite() ? f[s] : 3 * B;
  });
}

inline std::vector<Probe> build_probe(ProbeClass cls, const BaseFunction& f,
                                      const Rat& B) {
  f.CheckBound(B);
  const int m = f.m();
  std::vector<Probe> out;
  switch (cls) {
    case ProbeClass::kGeneral:
      out.push_back({GeneralProbe(f, B), 0, 0, Rat(0), Rat(0), Rat(0)});
      break;
    case ProbeClass::kSubadditive: {
      Valuation g = GeneralProbe(f, B);
      const Rat top = g.MaxValue();
      Valuation v = Valuation::FromFunction(m, [&](Bundle s) {
        return s.empty() ? Rat(0) : g[s] + top;
      });
      out.push_back({v, 0, 0, Rat(0), top, Rat(0)});
      break;
    }
    case ProbeClass::kXos:
      for (int r = 1; r <= m; ++r) {
        XOSClauses c{m, {}};
        for (Bundle t : BundlesOfSize(m, r)) {
          const Rat each = (f[t].is_finite() ? f[t] : 2 * B) / Rat(r) + 3 * B;
          std::vector<Rat> a(m, Rat(0));
          for (int j : t.items()) a[j] = each;
          c.clauses.push_back(std::move(a));
        }
        out.push_back({xos_from_clauses(c), r, 0, Rat(0), Rat(0), Rat(0)});
      }
      break;
    case ProbeClass::kSubmodular: {
      const Rat t = Rat(std::int64_t{1} << (m + 1)) * B;
      for (int k = 1; k <= m; ++k) {
        std::set<Rat> values;
        for (Bundle s : BundlesOfSize(m, k)) values.insert(f[s]);
        for (const Rat& w : values) {
          std::vector<Bundle> family;
          for (Bundle s : BundlesOfSize(m, k)) {
            if (f[s] == w) family.push_back(s);
          }
          Valuation v = Valuation::FromFunction(m, [&](Bundle s) {
            if (s.size() < k) return Rat(s.size()) * t;
            for (Bundle x : family) {
              if (x.subset_of(s)) return Rat(k) * t;
            }
            return (Rat(k) - Rat(1, std::int64_t{1} << s.size())) * t;
          });
          out.push_back({v, 0, k, w, Rat(0), t});
        }
      }
      break;
    }
  }
  return out;
}

struct VerifyResult {
  bool bit = false;
  int runs = 0;
  int bits = 0;  // sum over runs of transcript bits plus the decision bit
};

// Decides whether f exceeds the menu the others present to player i on
// some bundle, using only runs of the mechanism on probe valuations.
inline VerifyResult verify_menu(const MechanismSpec& spec, int i,
                                const std::vector<Valuation>& v_minus_i,
                                const BaseFunction& f, ProbeClass cls) {
  if (static_cast<int>(v_minus_i.size()) != spec.n - 1) {
    throw DomainError("v_minus_i must have n-1 valuations");
  }
  if (f.m() != spec.m) throw DomainError("base function has the wrong item count");
  const bool general = IsGeneralTruthful(spec, i);
  if (!general && static_cast<int>(ValuationClassOf(cls)) >
                      static_cast<int>(spec.truthful_class)) {
    throw ContractError(spec.id + " is not truthful for " + ProbeClassName(cls) +
                        " valuations");
  }
  std::vector<const Valuation*> others;
  for (const Valuation& v : v_minus_i) others.push_back(&v);
  VerifyResult res;
  for (const Probe& probe : build_probe(cls, f, spec.B)) {
    if (spec.domain && !spec.domain(i, probe.v)) {
      throw ContractError(spec.id + ": probe valuation outside player domain");
    }
    RunResult run = run_mechanism(spec, WithPlayer(others, i, &probe.v));
    const Bundle s = run.outcome.allocation[i];
    const Rat pay = run.outcome.payments[i];
    bool bit = false;
    switch (cls) {
      case ProbeClass::kGeneral:
        bit = probe.v[s] > pay;
        break;
      case ProbeClass::kSubadditive:
        bit = !s.empty() && probe.v[s] - probe.shift > pay;
        break;
      case ProbeClass::kXos:
        bit = s.size() >= probe.r && probe.v[s] - 3 * spec.B * Rat(probe.r) > pay;
        break;
      case ProbeClass::kSubmodular:
        bit = probe.v[s] == Rat(probe.k) * probe.t && pay < probe.w;
        break;
    }
    ++res.runs;
    res.bits += run.transcript.bits() + 1;
    res.bit = res.bit || bit;
  }
  return res;
}

// Reference predicate: some bundle where f exceeds the menu.
inline bool ExceedsMenu(const BaseFunction& f, const Menu& menu) {
  for (std::uint32_t s = 0; s < NumBundles(f.m()); ++s) {
    if (f[Bundle(s)] > menu[Bundle(s)]) return true;
  }
  return false;
}

// Upward closure of g: f(S) = max over T subset of S of g(T).
inline BaseFunction MonotoneClosure(int m, std::vector<Rat> g) {
  g[0] = 0;
  for (int j = 0; j < m; ++j) {
    for (std::uint32_t s = 0; s < g.size(); ++s) {
      if (s & (1u << j)) g[s] = Max(g[s], g[s & ~(1u << j)]);
    }
  }
  return BaseFunction(m, std::move(g));
}

// Base function mixing the true menu, random grid values and infinity.
inline BaseFunction RandomBaseFunction(const Menu& menu, const Rat& B, Rng& rng) {
  const int m = menu.m();
  std::vector<Rat> g(NumBundles(m));
  const int style = static_cast<int>(rng.Below(3));
  for (std::uint32_t s = 0; s < g.size(); ++s) {
    const std::uint64_t roll = rng.Below(10);
    if (style == 0 && menu[Bundle(s)].is_finite() && roll < 8) {
      g[s] = menu[Bundle(s)];
    } else if (roll < static_cast<std::uint64_t>(2 + style)) {
      g[s] = Rat::Infinity();
    } else {
      g[s] = B * Rat(static_cast<std::int64_t>(rng.Below(5)), 4);
    }
  }
  if (style == 0 && rng.Coin()) {
    // Nudge one entry of the menu-like function up or down.
    const std::uint32_t s = 1 + static_cast<std::uint32_t>(rng.Below(g.size() - 1));
    if (g[s].is_finite()) g[s] = Min(B, Max(Rat(0), g[s] + Rat(rng.Coin() ? 1 : -1, 2)));
  }
  return MonotoneClosure(m, g);
}

}  // namespace taxlab

#endif  // TAXLAB_VERIFY_HPP_
