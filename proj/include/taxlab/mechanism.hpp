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

#ifndef TAXLAB_MECHANISM_HPP_
#define TAXLAB_MECHANISM_HPP_

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "taxlab/bundle.hpp"
#include "taxlab/errors.hpp"
#include "taxlab/menu.hpp"
#include "taxlab/rational.hpp"
#include "taxlab/valuation.hpp"

namespace taxlab {

// One message: its sender, its declared bit cost, and its exact content.
struct Message {
  int player = 0;
  int bits = 0;
  std::string payload;

  friend bool operator==(const Message&, const Message&) = default;
};

// Ordered message list. Two transcripts are equal iff their messages are.
class Transcript {
 public:
  void Append(Message msg) {
    bits_ += msg.bits;
    messages_.push_back(std::move(msg));
  }
  void AppendAll(const Transcript& other) {
    for (const Message& msg : other.messages_) Append(msg);
  }

  const std::vector<Message>& messages() const { return messages_; }
  int bits() const { return bits_; }
  std::size_t size() const { return messages_.size(); }

  // Flat (player, bit) sequence for messages whose payload is binary.
  std::vector<std::pair<int, bool>> BitSequence() const {
    std::vector<std::pair<int, bool>> out;
    for (const Message& msg : messages_) {
      for (char c : msg.payload) {
        if (c == '0' || c == '1') out.emplace_back(msg.player, c == '1');
      }
    }
    return out;
  }

  // Injective string encoding, usable as a map key.
  std::string Key() const {
    std::string k;
    for (const Message& msg : messages_) {
      k += std::to_string(msg.player);
      k += '|';
      k += msg.payload;
      k += ';';
    }
    return k;
  }

  bool IsPrefixOf(const Transcript& other) const {
    if (messages_.size() > other.messages_.size()) return false;
    for (std::size_t i = 0; i < messages_.size(); ++i) {
      if (!(messages_[i] == other.messages_[i])) return false;
    }
    return true;
  }

  friend bool operator==(const Transcript& a, const Transcript& b) {
    return a.messages_ == b.messages_;
  }

 private:
  std::vector<Message> messages_;
  int bits_ = 0;
};

enum class QueryKind { kValue, kDemand };

struct QueryRecord {
  int player = 0;
  QueryKind kind = QueryKind::kValue;
  Bundle bundle;             // value query bundle or demand answer
  std::vector<Rat> prices;   // demand query prices
  Rat value;                 // answer value
};

struct QueryLog {
  std::vector<int> value_queries;
  std::vector<int> demand_queries;
  std::vector<QueryRecord> trace;

  explicit QueryLog(int n = 0) : value_queries(n, 0), demand_queries(n, 0) {}

  // Totals over all players in one run.
  int TotalValue() const {
    return std::accumulate(value_queries.begin(), value_queries.end(), 0);
  }
  int TotalDemand() const {
    return std::accumulate(demand_queries.begin(), demand_queries.end(), 0);
  }
};

enum class Mode { kBit, kValue, kDemand };

inline std::string ModeName(Mode mode) {
  switch (mode) {
    case Mode::kBit:
      return "bit";
    case Mode::kValue:
      return "value";
    case Mode::kDemand:
      return "demand";
  }
  return "?";
}

// Valuation classes ordered from narrowest to broadest.
enum class ValuationClass {
  kAdditive,
  kSubmodular,
  kXos,
  kSubadditive,
  kGeneral
};

struct Outcome {
  std::vector<Bundle> allocation;
  std::vector<Rat> payments;
};

class Execution;
struct MechanismSpec;

using Program = std::function<Outcome(Execution&)>;

struct PriceRun {
  Rat price;
  Transcript transcript;
};

// Price of bundle s in the menu the others present to player i. The
// entry for player i in `profile` is ignored.
using PriceProtocol = std::function<PriceRun(
    const MechanismSpec&, int i, const std::vector<const Valuation*>& profile,
    Bundle s)>;

// Bits of the tie protocol on a profile once menus are known.
using TieProtocol =
    std::function<int(const MechanismSpec&, const std::vector<const Valuation*>&)>;

using DomainCheck = std::function<bool(int player, const Valuation&)>;

struct MechanismSpec {
  std::string id;
  std::string label;  // id plus parameters, used in reports
  int n = 0;
  int m = 0;
  Rat B = 1;  // declared upper bound on finite menu prices
  Mode mode = Mode::kBit;
  int value_bits = 0;  // cost of transmitting one number
  ValuationClass truthful_class = ValuationClass::kGeneral;
  // Players for whom the mechanism is truthful over general valuations.
  std::vector<bool> general_truthful;
  Program program;
  DomainCheck domain;
  PriceProtocol price_protocol;
  TieProtocol tie_protocol;
};

// Runtime handle given to a mechanism program: private valuations for
// player-local computation, message sending, and instrumented oracles.
class Execution {
 public:
  Execution(const MechanismSpec& spec, std::vector<const Valuation*> profile)
      : spec_(spec), profile_(std::move(profile)), log_(spec.n) {}

  int n() const { return spec_.n; }
  int m() const { return spec_.m; }
  const MechanismSpec& spec() const { return spec_; }

  // Player-local view; only the owning player's messages may depend on it.
  const Valuation& own(int player) const { return *profile_[player]; }

  void Send(int player, std::uint64_t value, int bits) {
    if (bits == 0) return;
    std::string payload(bits, '0');
    for (int b = 0; b < bits; ++b) {
      if ((value >> (bits - 1 - b)) & 1u) payload[b] = '1';
    }
    transcript_.Append({player, bits, std::move(payload)});
  }
  bool SendBit(int player, bool bit) {
    Send(player, bit ? 1 : 0, 1);
    return bit;
  }

  Rat ValueQuery(int player, Bundle s) {
    Rat v = value_query(*profile_[player], s);
    ++log_.value_queries[player];
    log_.trace.push_back({player, QueryKind::kValue, s, {}, v});
    transcript_.Append({player, spec_.value_bits, "v" + v.ToString()});
    return v;
  }

  DemandAnswer DemandQuery(int player, const std::vector<Rat>& prices) {
    DemandAnswer a = demand_query(*profile_[player], prices);
    ++log_.demand_queries[player];
    log_.trace.push_back({player, QueryKind::kDemand, a.bundle, prices, a.value});
    transcript_.Append({player, spec_.m + spec_.value_bits,
                        "d" + std::to_string(a.bundle.mask()) + ":" +
                            a.value.ToString()});
    return a;
  }

  const Transcript& transcript() const { return transcript_; }
  const QueryLog& log() const { return log_; }
  Transcript TakeTranscript() { return std::move(transcript_); }
  QueryLog TakeLog() { return std::move(log_); }

 private:
  const MechanismSpec& spec_;
  std::vector<const Valuation*> profile_;
  Transcript transcript_;
  QueryLog log_;
};

struct RunResult {
  Outcome outcome;
  Transcript transcript;
  QueryLog log;
};

inline RunResult run_mechanism(const MechanismSpec& spec,
                               const std::vector<const Valuation*>& profile) {
  if (static_cast<int>(profile.size()) != spec.n) {
    throw DomainError("profile length does not match player count");
  }
  for (int i = 0; i < spec.n; ++i) {
    if (profile[i]->m() != spec.m) throw DomainError("item count mismatch");
    if (spec.domain && !spec.domain(i, *profile[i])) {
      throw DomainError("valuation of player " + std::to_string(i + 1) +
                        " outside the declared domain of " + spec.id);
    }
  }
  Execution exec(spec, profile);
  Outcome out = spec.program(exec);
  if (static_cast<int>(out.allocation.size()) != spec.n ||
      static_cast<int>(out.payments.size()) != spec.n) {
    throw MechanismError(spec.id + ": outcome has wrong arity");
  }
  std::uint32_t used = 0;
  for (const Bundle& b : out.allocation) {
    if (b.mask() & used) throw MechanismError(spec.id + ": bundles overlap");
    if (!b.subset_of(Bundle::Full(spec.m))) {
      throw MechanismError(spec.id + ": bundle out of range");
    }
    used |= b.mask();
  }
  for (const Rat& p : out.payments) {
    if (p.is_infinite()) throw MechanismError(spec.id + ": infinite payment");
  }
  return {std::move(out), exec.TakeTranscript(), exec.TakeLog()};
}

inline RunResult run_mechanism(const MechanismSpec& spec,
                               const Profile& profile) {
  std::vector<const Valuation*> ptrs;
  for (const Valuation& v : profile) ptrs.push_back(&v);
  return run_mechanism(spec, ptrs);
}

// Additive probe: 3B on every item of s, 0 elsewhere.
inline Valuation MenuProbe(int m, const Rat& B, Bundle s) {
  std::vector<Rat> items(m, Rat(0));
  for (int j : s.items()) items[j] = 3 * B;
  return Valuation::Additive(items);
}

// Runs the probe for bundle s and reads off its price.
inline PriceRun ProbePrice(const MechanismSpec& spec, int i,
                           std::vector<const Valuation*> profile, Bundle s) {
  Valuation probe = MenuProbe(spec.m, spec.B, s);
  profile[i] = &probe;
  RunResult r = run_mechanism(spec, profile);
  const Bundle won = r.outcome.allocation[i];
  Rat price = s.subset_of(won) ? r.outcome.payments[i] : Rat::Infinity();
  return {price, std::move(r.transcript)};
}

inline PriceRun RunPriceProtocol(const MechanismSpec& spec, int i,
                                 const std::vector<const Valuation*>& profile,
                                 Bundle s) {
  if (spec.price_protocol) return spec.price_protocol(spec, i, profile, s);
  return ProbePrice(spec, i, profile, s);
}

struct Extraction {
  Menu raw;
  Menu menu;
  int max_bits = 0;  // largest transcript among the probe runs
};

// Inserts v at position i of the others' profile.
inline std::vector<const Valuation*> WithPlayer(
    const std::vector<const Valuation*>& others, int i, const Valuation* v) {
  std::vector<const Valuation*> p = others;
  p.insert(p.begin() + i, v);
  return p;
}

// Full probe sweep. `profile[i]` is ignored.
inline Extraction ExtractMenuDetailed(const MechanismSpec& spec, int i,
                                      const std::vector<const Valuation*>& profile) {
  const int m = spec.m;
  if (!(spec.B > 0)) throw ContractError(spec.id + ": B must be positive");
  std::vector<Rat> raw(NumBundles(m));
  Extraction ex;
  for (std::uint32_t s = 0; s < raw.size(); ++s) {
    PriceRun pr = ProbePrice(spec, i, profile, Bundle(s));
    raw[s] = pr.price;
    ex.max_bits = std::max(ex.max_bits, pr.transcript.bits());
  }
  for (std::uint32_t s = 0; s < raw.size(); ++s) {
    for (int j = 0; j < m; ++j) {
      std::uint32_t t = s | (1u << j);
      if (t != s && raw[t] < raw[s]) {
        throw MechanismError(spec.id +
                             ": extracted prices not monotone (taxation-"
                             "principle violation) at " +
                             Bundle(s).ToString());
      }
    }
  }
  ex.raw = Menu(m, raw);
  ex.menu = normalize_menu(ex.raw);
  if (ex.menu.MaxFinite() > spec.B) {
    throw BoundError(spec.id + ": extracted price exceeds declared B");
  }
  return ex;
}

// The normalized menu presented to player i; v_minus_i has n-1 entries.
inline Menu extract_menu(const MechanismSpec& spec, int i,
                         const std::vector<Valuation>& v_minus_i) {
  if (static_cast<int>(v_minus_i.size()) != spec.n - 1) {
    throw DomainError("v_minus_i must have n-1 valuations");
  }
  std::vector<const Valuation*> others;
  for (const Valuation& v : v_minus_i) others.push_back(&v);
  Valuation placeholder = Valuation::Zero(spec.m);
  return ExtractMenuDetailed(spec, i, WithPlayer(others, i, &placeholder)).menu;
}

inline int DefaultTieBits(const MechanismSpec& spec,
                          const std::vector<const Valuation*>&) {
  return spec.m * spec.n;
}

inline int RunTieProtocol(const MechanismSpec& spec,
                          const std::vector<const Valuation*>& profile) {
  if (spec.tie_protocol) return spec.tie_protocol(spec, profile);
  return DefaultTieBits(spec, profile);
}

inline bool IsGeneralTruthful(const MechanismSpec& spec, int i) {
  if (spec.general_truthful.empty()) {
    return spec.truthful_class == ValuationClass::kGeneral;
  }
  return spec.general_truthful[i];
}

}  // namespace taxlab

#endif  // TAXLAB_MECHANISM_HPP_
