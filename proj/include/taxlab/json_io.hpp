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

#ifndef TAXLAB_JSON_IO_HPP_
#define TAXLAB_JSON_IO_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "taxlab/disjointness.hpp"
#include "taxlab/menu.hpp"
#include "taxlab/valuation.hpp"
#include "taxlab/verify.hpp"

namespace taxlab {

using Json = nlohmann::json;

// Rationals travel as strings; plain integers are accepted on input.
inline Rat RatFromJson(const Json& j) {
  if (j.is_string()) return Rat::Parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  throw DomainError("expected a rational string, got " + j.dump());
}

inline Json RatToJson(const Rat& r) { return r.ToString(); }

inline int ItemCountFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j["m"].is_number_integer()) {
    throw DomainError("object needs an integer \"m\"");
  }
  const int m = j["m"].get<int>();
  CheckItemCount(m);
  return m;
}

// Decimal bundle mask below 2^m.
inline std::uint32_t MaskFromKey(const std::string& key, int m) {
  std::size_t used = 0;
  unsigned long mask = 0;
  try {
    mask = std::stoul(key, &used);
  } catch (const std::logic_error&) {
    throw DomainError("bad mask key: " + key);
  }
  if (used != key.size() || mask >= NumBundles(m)) throw DomainError("bad mask key: " + key);
  return static_cast<std::uint32_t>(mask);
}

// {"<mask>": "<rat>"} with every mask present exactly once.
inline std::vector<Rat> TableFromJson(const Json& values, int m) {
  if (!values.is_object()) throw DomainError("\"values\" must be an object");
  std::vector<Rat> t(NumBundles(m));
  std::vector<bool> seen(t.size(), false);
  for (const auto& [key, val] : values.items()) {
    const std::uint32_t mask = MaskFromKey(key, m);
    if (seen[mask]) throw DomainError("duplicate mask key: " + key);
    seen[mask] = true;
    t[mask] = RatFromJson(val);
  }
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (!seen[s]) throw DomainError("missing mask " + std::to_string(s));
  }
  return t;
}

inline Json TableToJson(const std::vector<Rat>& t, int m) {
  Json values = Json::object();
  for (std::size_t s = 0; s < t.size(); ++s) values[std::to_string(s)] = RatToJson(t[s]);
  return Json{{"m", m}, {"values", values}};
}

inline Valuation ValuationFromJson(const Json& j) {
  if (j.contains("clauses")) {
    const int m = ItemCountFromJson(j);
    XOSClauses c;
    c.m = m;
    for (const Json& clause : j["clauses"]) {
      std::vector<Rat> a;
      for (const Json& x : clause) a.push_back(RatFromJson(x));
      c.clauses.push_back(std::move(a));
    }
    return xos_from_clauses(c);
  }
  const int m = ItemCountFromJson(j);
  if (!j.contains("values")) throw DomainError("valuation needs \"values\" or \"clauses\"");
  std::vector<Rat> t = TableFromJson(j["values"], m);
  for (const Rat& x : t) {
    if (x.is_infinite()) throw DomainError("valuation values must be finite");
  }
  return Valuation(m, std::move(t));
}

inline Json ValuationToJson(const Valuation& v) { return TableToJson(v.table(), v.m()); }

inline Json XosToJson(const XOSClauses& c) {
  Json clauses = Json::array();
  for (const auto& a : c.clauses) {
    Json row = Json::array();
    for (const Rat& x : a) row.push_back(RatToJson(x));
    clauses.push_back(row);
  }
  return Json{{"m", c.m}, {"clauses", clauses}};
}

inline Menu MenuFromJson(const Json& j) {
  const int m = ItemCountFromJson(j);
  if (!j.contains("values")) throw DomainError("menu needs \"values\"");
  return Menu(m, TableFromJson(j["values"], m));
}

inline Json MenuToJson(const Menu& menu) { return TableToJson(menu.prices(), menu.m()); }

inline BaseFunction BaseFunctionFromJson(const Json& j) {
  const int m = ItemCountFromJson(j);
  if (!j.contains("values")) throw DomainError("base function needs \"values\"");
  return BaseFunction(m, TableFromJson(j["values"], m));
}

inline Json BaseFunctionToJson(const BaseFunction& f) { return TableToJson(f.table(), f.m()); }

inline MinAffineMenu MinAffineFromJson(const Json& j) {
  MinAffineMenu ma;
  ma.m = ItemCountFromJson(j);
  for (const Json& vec : j.value("vectors", Json::array())) {
    std::vector<Rat> p;
    for (const Json& x : vec) p.push_back(RatFromJson(x));
    ma.vectors.push_back(std::move(p));
  }
  for (const Json& x : j.value("offsets", Json::array())) ma.offsets.push_back(RatFromJson(x));
  const Json exceptions = j.value("exceptions", Json::object());
  for (const auto& [key, val] : exceptions.items()) {
    ma.exceptions[Bundle(MaskFromKey(key, ma.m))] = RatFromJson(val);
  }
  ma.Validate();
  return ma;
}

inline Json MinAffineToJson(const MinAffineMenu& ma) {
  Json vectors = Json::array();
  for (const auto& p : ma.vectors) {
    Json row = Json::array();
    for (const Rat& x : p) row.push_back(RatToJson(x));
    vectors.push_back(row);
  }
  Json offsets = Json::array();
  for (const Rat& r : ma.offsets) offsets.push_back(RatToJson(r));
  Json exceptions = Json::object();
  for (const auto& [s, price] : ma.exceptions) {
    exceptions[std::to_string(s.mask())] = RatToJson(price);
  }
  return Json{{"m", ma.m}, {"vectors", vectors}, {"offsets", offsets},
              {"exceptions", exceptions}};
}

inline ZDisjointnessInstance DisjointnessFromJson(const Json& j) {
  ZDisjointnessInstance inst;
  inst.n = j.at("n").get<int>();
  inst.l = j.at("l").get<int>();
  inst.z = j.at("z").get<int>();
  for (const Json& set : j.at("allowed")) {
    inst.allowed.emplace_back();
    for (const Json& s : set) inst.allowed.back().push_back(ParseBits(s.get<std::string>()));
  }
  for (const Json& s : j.at("inputs")) inst.inputs.push_back(ParseBits(s.get<std::string>()));
  inst.Validate();
  return inst;
}

inline Json DisjointnessToJson(const ZDisjointnessInstance& inst) {
  Json allowed = Json::array();
  for (const auto& set : inst.allowed) {
    Json row = Json::array();
    for (const BitString& a : set) row.push_back(FormatBits(a));
    allowed.push_back(row);
  }
  Json inputs = Json::array();
  for (const BitString& a : inst.inputs) inputs.push_back(FormatBits(a));
  return Json{{"n", inst.n}, {"l", inst.l}, {"allowed", allowed}, {"inputs", inputs},
              {"z", inst.z}};
}

}  // namespace taxlab

#endif  // TAXLAB_JSON_IO_HPP_
