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

#ifndef TAXLAB_DISJOINTNESS_HPP_
#define TAXLAB_DISJOINTNESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "taxlab/errors.hpp"
#include "taxlab/random.hpp"
#include "taxlab/rational.hpp"

namespace taxlab {

using BitString = std::vector<std::uint8_t>;

inline BitString ParseBits(const std::string& s) {
  BitString b(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] != '0' && s[k] != '1') throw DomainError("bit string must be 0/1: " + s);
    b[k] = s[k] == '1';
  }
  return b;
}

inline std::string FormatBits(const BitString& b) {
  std::string s(b.size(), '0');
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k]) s[k] = '1';
  }
  return s;
}

// Bits set in every string of the profile.
inline std::vector<int> CommonOnes(const std::vector<const BitString*>& profile,
                                   int l) {
  std::vector<int> out;
  for (int k = 0; k < l; ++k) {
    bool all = true;
    for (const BitString* a : profile) all = all && (*a)[k];
    if (all) out.push_back(k);
  }
  return out;
}

// Largest number of intersecting bits over S^1 x ... x S^n.
inline int MaxIntersections(const std::vector<std::vector<BitString>>& allowed,
                            int l, std::uint64_t limit = std::uint64_t{1} << 24) {
  std::uint64_t total = 1;
  for (const auto& s : allowed) {
    if (s.empty()) return 0;
    total *= s.size();
    if (total > limit) throw CapacityError("promise check exceeds the profile limit");
  }
  // Running AND of the chosen strings, one level per player.
  int best = 0;
  std::vector<BitString> acc(allowed.size() + 1, BitString(l, 1));
  std::vector<std::size_t> idx(allowed.size(), 0);
  const int n = static_cast<int>(allowed.size());
  int depth = 0;
  while (depth >= 0) {
    if (depth == n) {
      best = std::max(best, static_cast<int>(std::count(acc[n].begin(), acc[n].end(), 1)));
      --depth;
      if (depth >= 0) ++idx[depth];
      continue;
    }
    if (idx[depth] == allowed[depth].size()) {
      idx[depth] = 0;
      --depth;
      if (depth >= 0) ++idx[depth];
      continue;
    }
    const BitString& a = allowed[depth][idx[depth]];
    for (int k = 0; k < l; ++k) acc[depth + 1][k] = acc[depth][k] & a[k];
    ++depth;
  }
  return best;
}

struct ZDisjointnessInstance {
  int n = 0;
  int l = 0;
  int z = 1;
  std::vector<std::vector<BitString>> allowed;
  std::vector<BitString> inputs;

  // Shapes, membership of the inputs and the promise over all profiles.
  void Validate() const {
    if (n < 1) throw DomainError("disjointness needs n >= 1");
    if (l < 0 || z < 0) throw DomainError("disjointness needs l, z >= 0");
    if (static_cast<int>(allowed.size()) != n || static_cast<int>(inputs.size()) != n) {
      throw DomainError("disjointness needs one allowed set and one input per player");
    }
    for (int i = 0; i < n; ++i) {
      for (const BitString& a : allowed[i]) {
        if (static_cast<int>(a.size()) != l) throw DomainError("allowed string length mismatch");
      }
      if (static_cast<int>(inputs[i].size()) != l) throw DomainError("input length mismatch");
      if (std::find(allowed[i].begin(), allowed[i].end(), inputs[i]) == allowed[i].end()) {
        throw DomainError("input of player " + std::to_string(i + 1) + " is not allowed");
      }
    }
    const int worst = MaxIntersections(allowed, l);
    if (worst > z) {
      throw PromiseError("allowed sets admit " + std::to_string(worst) +
                         " intersecting bits, promise is " + std::to_string(z));
    }
  }
};

struct DisjointnessResult {
  bool intersect = false;
  int bit = -1;         // 0-based witness bit when intersecting
  long long bits = 0;   // total communication
  int level = 0;        // promise level that decided
  int rounds = 0;
  std::vector<int> live_trace;          // live-bit count at the start of each round
  std::vector<long long> level_bits;    // cost per promise level, z first
  std::vector<std::vector<BitString>> leaf;  // allowed sets consistent with the run
};

namespace internal {

// One player's neighborhoods over the live bits: nb[k] lists live j with
// some allowed A having A_j = A_k = 1.
inline std::vector<std::vector<int>> Neighborhoods(const std::vector<BitString>& set,
                                                   const std::vector<int>& live, int l) {
  std::vector<std::vector<int>> nb(l);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(l) * l, 0);
  for (const BitString& a : set) {
    for (int k : live) {
      if (!a[k]) continue;
      for (int j : live) {
        if (a[j]) seen[static_cast<std::size_t>(k) * l + j] = 1;
      }
    }
  }
  for (int k : live) {
    for (int j : live) {
      if (seen[static_cast<std::size_t>(k) * l + j]) nb[k].push_back(j);
    }
  }
  return nb;
}

inline DisjointnessResult SolveOne(std::vector<std::vector<BitString>> sets,
                                   const std::vector<BitString>& inputs, int l) {
  const int n = static_cast<int>(inputs.size());
  DisjointnessResult res;
  res.level = 1;
  std::vector<int> live(l);
  for (int k = 0; k < l; ++k) live[k] = k;
  while (true) {
    const int r = static_cast<int>(live.size());
    if (r == 0) break;
    if (r <= 2 * n) {
      // Full revelation of the remaining live bits.
      res.bits += static_cast<long long>(n) * r;
      std::vector<int> common;
      for (int k : live) {
        bool all = true;
        for (const BitString& a : inputs) all = all && a[k];
        if (all) common.push_back(k);
      }
      if (common.size() > 1) {
        throw PromiseError("revelation found " + std::to_string(common.size()) +
                           " intersecting bits under a 1-disjointness promise");
      }
      for (int i = 0; i < n; ++i) {
        std::erase_if(sets[i], [&](const BitString& a) {
          for (int k : live) {
            if (a[k] != inputs[i][k]) return true;
          }
          return false;
        });
      }
      if (!common.empty()) {
        res.intersect = true;
        res.bit = common.front();
      }
      break;
    }
    ++res.rounds;
    res.live_trace.push_back(r);
    res.bits += static_cast<long long>(n) * CeilLog2(static_cast<std::uint64_t>(r) + 1);
    int chosen = -1;
    std::vector<int> chosen_nb;
    for (int i = 0; i < n; ++i) {
      const auto nb = Neighborhoods(sets[i], live, l);
      auto announce = [&](const BitString& a) {
        for (int k : live) {
          if (a[k] && 2 * n * static_cast<int>(nb[k].size()) <= (2 * n - 1) * r) return k;
        }
        return -1;
      };
      const int k = announce(inputs[i]);
      std::erase_if(sets[i], [&](const BitString& a) { return announce(a) != k; });
      if (k >= 0 && chosen < 0) {
        chosen = i;
        chosen_nb = nb[k];
      }
    }
    if (chosen < 0) {
      for (int k : live) {
        bool all = true;
        for (const BitString& a : inputs) all = all && a[k];
        if (all) throw PromiseError("intersecting bit with only large neighborhoods");
      }
      break;
    }
    live = std::move(chosen_nb);
  }
  res.level_bits = {res.bits};
  res.leaf = std::move(sets);
  return res;
}

inline std::vector<std::vector<int>> Combinations(int l, int z) {
  std::vector<std::vector<int>> out;
  if (z > l) return out;
  std::vector<int> c(z);
  for (int k = 0; k < z; ++k) c[k] = k;
  while (true) {
    out.push_back(c);
    int k = z - 1;
    while (k >= 0 && c[k] == l - z + k) --k;
    if (k < 0) break;
    ++c[k];
    for (int j = k + 1; j < z; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

// z-subsets of bits that every player can set at once in some allowed
// string; every other product bit is 0 for someone in all profiles.
inline std::vector<std::vector<int>> RealizableTuples(
    const std::vector<std::vector<BitString>>& sets, int l, int z) {
  std::set<std::vector<int>> found;
  if (sets.empty()) return {};
  std::vector<int> cur;
  for (const BitString& a : sets[0]) {
    std::vector<int> support;
    for (int k = 0; k < l; ++k) {
      if (a[k]) support.push_back(k);
    }
    if (static_cast<int>(support.size()) < z) continue;
    for (const auto& pick : Combinations(static_cast<int>(support.size()), z)) {
      cur.clear();
      for (int k : pick) cur.push_back(support[k]);
      found.insert(cur);
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& t : found) {
    bool everyone = true;
    for (std::size_t i = 1; i < sets.size() && everyone; ++i) {
      bool some = false;
      for (const BitString& a : sets[i]) {
        bool all = true;
        for (int k : t) all = all && a[k];
        if (all) {
          some = true;
          break;
        }
      }
      everyone = some;
    }
    if (everyone) out.push_back(t);
  }
  return out;
}

inline BitString ZProduct(const BitString& a, const std::vector<std::vector<int>>& tuples) {
  BitString p(tuples.size());
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    bool all = true;
    for (int k : tuples[t]) all = all && a[k];
    p[t] = all;
  }
  return p;
}

inline DisjointnessResult SolveZ(const std::vector<std::vector<BitString>>& sets,
                                 const std::vector<BitString>& inputs, int l, int z) {
  if (z <= 0) {
    DisjointnessResult res;
    res.leaf = sets;
    return res;
  }
  if (z == 1) return SolveOne(sets, inputs, l);
  const auto tuples = RealizableTuples(sets, l, z);
  if (tuples.empty()) {
    DisjointnessResult res = SolveZ(sets, inputs, l, z - 1);
    res.level_bits.insert(res.level_bits.begin(), 0);
    return res;
  }
  const int n = static_cast<int>(inputs.size());
  std::vector<std::vector<BitString>> psets(n);
  std::vector<BitString> pin(n);
  for (int i = 0; i < n; ++i) {
    std::set<BitString> uniq;
    for (const BitString& a : sets[i]) uniq.insert(ZProduct(a, tuples));
    psets[i].assign(uniq.begin(), uniq.end());
    pin[i] = ZProduct(inputs[i], tuples);
  }
  DisjointnessResult top = SolveOne(psets, pin, static_cast<int>(tuples.size()));
  if (top.intersect) {
    top.level = z;
    top.bit = tuples[top.bit].front();
    top.leaf.clear();
    return top;
  }
  std::vector<std::vector<BitString>> next(n);
  for (int i = 0; i < n; ++i) {
    std::set<BitString> keep(top.leaf[i].begin(), top.leaf[i].end());
    for (const BitString& a : sets[i]) {
      if (keep.count(ZProduct(a, tuples))) next[i].push_back(a);
    }
  }
  if (MaxIntersections(next, l) > z - 1) {
    throw PromiseError("leaf of the z-product run still admits " + std::to_string(z) +
                       " intersecting bits");
  }
  DisjointnessResult rest = SolveZ(next, inputs, l, z - 1);
  rest.bits += top.bits;
  rest.rounds += top.rounds;
  rest.live_trace.insert(rest.live_trace.begin(), top.live_trace.begin(),
                         top.live_trace.end());
  rest.level_bits.insert(rest.level_bits.begin(), top.bits);
  return rest;
}

}  // namespace internal

// Neighborhood protocol under the promise of at most one intersecting bit.
inline DisjointnessResult solve_one_disjointness(const ZDisjointnessInstance& inst) {
  if (inst.z != 1) throw ContractError("solve_one_disjointness needs promise z = 1");
  inst.Validate();
  return internal::SolveOne(inst.allowed, inst.inputs, inst.l);
}

// Exactly-z detection on z-products restricted to realizable tuples, then the remaining promise levels on
// the allowed sets consistent with the "no" leaf.
inline DisjointnessResult solve_z_disjointness(const ZDisjointnessInstance& inst) {
  inst.Validate();
  return internal::SolveZ(inst.allowed, inst.inputs, inst.l, inst.z);
}

// Random promise instance with n <= max_n, l <= max_l, z <= max_z: sparse
// allowed strings, resampled until the promise holds.
inline ZDisjointnessInstance RandomPromiseInstance(Rng& rng, int max_n = 4, int max_l = 16,
                                                   int max_z = 3) {
  ZDisjointnessInstance inst;
  inst.n = 1 + static_cast<int>(rng.Below(max_n));
  inst.l = 1 + static_cast<int>(rng.Below(max_l));
  inst.z = 1 + static_cast<int>(rng.Below(max_z));
  for (int attempt = 0;; ++attempt) {
    const int weight = std::max(1, inst.z + 2 - attempt / 20);
    inst.allowed.assign(inst.n, {});
    inst.inputs.clear();
    for (int i = 0; i < inst.n; ++i) {
      const int size = 1 + static_cast<int>(rng.Below(5));
      for (int k = 0; k < size; ++k) {
        BitString a(inst.l, 0);
        const int w = static_cast<int>(rng.Below(weight + 1));
        for (int t = 0; t < w; ++t) a[rng.Below(inst.l)] = 1;
        inst.allowed[i].push_back(a);
      }
      inst.inputs.push_back(inst.allowed[i][rng.Below(size)]);
    }
    if (MaxIntersections(inst.allowed, inst.l) <= inst.z) return inst;
  }
}

// Communication scale z^2 n^2 max(1, log2 l).
inline double DisjointnessScale(const ZDisjointnessInstance& inst) {
  return static_cast<double>(inst.z) * inst.z * inst.n * inst.n *
         std::max(1.0, std::log2(static_cast<double>(inst.l)));
}

}  // namespace taxlab

#endif  // TAXLAB_DISJOINTNESS_HPP_
