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


#ifndef TAXLAB_EXPERIMENT_HPP_
#define TAXLAB_EXPERIMENT_HPP_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "taxlab/comm_reconstruct.hpp"
#include "taxlab/complexity.hpp"
#include "taxlab/demand_menus.hpp"
#include "taxlab/disjointness.hpp"
#include "taxlab/errors.hpp"
#include "taxlab/json_io.hpp"
#include "taxlab/library.hpp"
#include "taxlab/random.hpp"
#include "taxlab/report.hpp"
#include "taxlab/transforms.hpp"
#include "taxlab/value_reconstruct.hpp"
#include "taxlab/verify.hpp"

namespace taxlab {

inline const std::vector<std::string>& SuiteNames() {
  static const std::vector<std::string> names = {
      "measure",      "reconstruct-value", "reconstruct-comm", "extract-min-affine",
      "verify-menu",  "disjointness",      "transform",        "simultaneous",
      "theorem-check"};
  return names;
}

struct ExperimentMechanism {
  std::string id;
  Json params = Json::object();
  MechanismSpec spec;
  ValuationCatalog catalog;
};

struct ExperimentConfig {
  std::vector<ExperimentMechanism> mechanisms;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  int jobs = 1;
  Json options = Json::object();  // per-suite knobs keyed by suite name

  // Integer knob for a suite, or dflt.
  long long Option(const std::string& suite, const std::string& key, long long dflt) const {
    if (!options.contains(suite) || !options[suite].contains(key)) return dflt;
    return options[suite][key].get<long long>();
  }
};

namespace internal {

inline std::vector<Valuation> ValuationListFromJson(const Json& j, const std::string& where) {
  const Json& list = j.is_object() && j.contains("valuations") ? j["valuations"] : j;
  if (!list.is_array() || list.empty()) {
    throw ConfigError(where + ": expected a nonempty array of valuations");
  }
  std::vector<Valuation> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    try {
      out.push_back(ValuationFromJson(list[k]));
    } catch (const Error& e) {
      throw ConfigError(where + "[" + std::to_string(k) + "]: " + e.what());
    }
  }
  return out;
}

inline Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path.string());
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// One catalog entry: an inline array, {"valuations": [...]}, or a path.
inline std::vector<Valuation> CatalogSource(const Json& src, const std::filesystem::path& base,
                                            const std::string& where) {
  if (src.is_string()) {
    std::filesystem::path p = src.get<std::string>();
    if (p.is_relative()) p = base / p;
    if (!std::filesystem::exists(p)) throw ConfigError(where + ": missing file " + p.string());
    return ValuationListFromJson(ReadJsonFile(p), p.string());
  }
  return ValuationListFromJson(src, where);
}

inline void CheckCatalog(const MechanismSpec& spec, const ValuationCatalog& catalog) {
  if (catalog.n() != spec.n) {
    throw ConfigError(spec.label + ": catalog lists " + std::to_string(catalog.n()) +
                      " players, mechanism has " + std::to_string(spec.n));
  }
  for (int i = 0; i < catalog.n(); ++i) {
    for (std::size_t v = 0; v < catalog.size(i); ++v) {
      const Valuation& val = catalog.player(i)[v];
      if (val.m() != spec.m) {
        throw ConfigError(spec.label + ": player " + std::to_string(i + 1) + " valuation " +
                          std::to_string(v) + " has m=" + std::to_string(val.m()) +
                          ", mechanism has m=" + std::to_string(spec.m));
      }
      if (spec.domain && !spec.domain(i, val)) {
        throw ConfigError(spec.label + ": player " + std::to_string(i + 1) + " valuation " +
                          std::to_string(v) + " is outside the mechanism domain");
      }
    }
  }
}

}  // namespace internal

// Parses and validates a config document; relative paths resolve
// against base.
inline ExperimentConfig ParseExperimentConfig(const Json& j,
                                              const std::filesystem::path& base = ".") {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"mechanism", "catalogs", "suites", "seed",
                                              "out",       "jobs",     "options"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key \"" + key + "\"");
  }
  ExperimentConfig cfg;
  try {
    if (!j.contains("mechanism")) throw ConfigError("config needs \"mechanism\"");
    const Json& mech = j["mechanism"];
    const std::string id = mech.is_string() ? mech.get<std::string>() : mech.at("id").get<std::string>();
    const Json params = mech.is_object() ? mech.value("params", Json::object()) : Json::object();
    if (id == "library") {
      if (j.contains("catalogs")) throw ConfigError("library runs use the default catalogs");
      const int max_m = params.value("max_m", 6);
      const int only_m = params.value("m", 0);
      for (LibraryInstance& inst : LibraryInstances(max_m)) {
        if (only_m && inst.spec.m != only_m) continue;
        cfg.mechanisms.push_back({inst.spec.id, inst.params, inst.spec, inst.catalog});
      }
      if (cfg.mechanisms.empty()) throw ConfigError("no library mechanism matches");
    } else {
      ExperimentMechanism em;
      em.id = id;
      em.params = params;
      try {
        em.spec = make_example(id, params);
      } catch (const Error& e) {
        throw ConfigError(std::string("mechanism: ") + e.what());
      }
      if (j.contains("catalogs")) {
        const Json& cats = j["catalogs"];
        if (!cats.is_array()) throw ConfigError("\"catalogs\" must list one source per player");
        std::vector<std::vector<Valuation>> players;
        for (std::size_t i = 0; i < cats.size(); ++i) {
          players.push_back(internal::CatalogSource(cats[i], base,
                                                    "catalogs[" + std::to_string(i) + "]"));
        }
        try {
          em.catalog = ValuationCatalog(std::move(players));
        } catch (const Error& e) {
          throw ConfigError(std::string("catalogs: ") + e.what());
        }
      } else {
        em.catalog = DefaultCatalog(em.spec, params);
      }
      internal::CheckCatalog(em.spec, em.catalog);
      cfg.mechanisms.push_back(std::move(em));
    }

    for (const Json& s : j.value("suites", Json::array())) {
      const std::string name = s.get<std::string>();
      const auto& all = SuiteNames();
      if (std::find(all.begin(), all.end(), name) == all.end()) {
        throw ConfigError("unknown suite \"" + name + "\"");
      }
      cfg.suites.push_back(name);
    }
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.out = j.value("out", std::string("out"));
    if (!cfg.out.empty() && cfg.out.is_relative()) cfg.out = base / cfg.out;
    cfg.jobs = j.value("jobs", 1);
    if (cfg.jobs < 1) throw ConfigError("\"jobs\" must be positive");
    cfg.options = j.value("options", Json::object());
    if (!cfg.options.is_object()) throw ConfigError("\"options\" must be an object");
    for (const auto& [suite, _] : cfg.options.items()) {
      const auto& all = SuiteNames();
      if (std::find(all.begin(), all.end(), suite) == all.end()) {
        throw ConfigError("options for unknown suite \"" + suite + "\"");
      }
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

inline ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("missing config " + path.string());
  return ParseExperimentConfig(internal::ReadJsonFile(path), path.parent_path());
}

struct SuiteOutcome {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;                 // human-readable, one check per line
  std::vector<std::pair<std::string, std::string>> files;  // relative path, bytes
};

struct ExperimentResult {
  int exit_code = 0;
  std::vector<SuiteOutcome> suites;
  std::vector<std::filesystem::path> artifacts;
};

namespace internal {

inline std::vector<Valuation> Others(const std::vector<const Valuation*>& profile, int i) {
  std::vector<Valuation> out;
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (static_cast<int>(j) != i) out.push_back(*profile[j]);
  }
  return out;
}

inline bool AllGeneralTruthful(const MechanismSpec& spec) {
  for (int i = 0; i < spec.n; ++i) {
    if (!IsGeneralTruthful(spec, i)) return false;
  }
  return true;
}

inline std::uint64_t ProfileLimit(const ExperimentConfig& cfg, const std::string& suite,
                                  std::uint64_t count) {
  const long long cap = cfg.Option(suite, "max_profiles", 0);
  return cap > 0 ? std::min<std::uint64_t>(count, static_cast<std::uint64_t>(cap)) : count;
}

inline void Fail(SuiteOutcome& s, const std::string& line) {
  s.pass = false;
  s.lines.push_back("FAIL " + line);
}

class SuiteRunner {
 public:
  explicit SuiteRunner(const ExperimentConfig& cfg) : cfg_(cfg) {}

  SuiteOutcome Run(const std::string& name) {
    SuiteOutcome s;
    s.name = name;
    if (name == "measure") Measure(s);
    if (name == "reconstruct-value") ReconstructValue(s);
    if (name == "reconstruct-comm") ReconstructComm(s);
    if (name == "extract-min-affine") ExtractMinAffine(s);
    if (name == "verify-menu") VerifyMenu(s);
    if (name == "disjointness") Disjointness(s);
    if (name == "transform") Transform(s);
    if (name == "simultaneous") Simultaneous(s);
    if (name == "theorem-check") TheoremCheck(s);
    return s;
  }

 private:
  const ComplexityReport& Report(std::size_t k) {
    auto it = reports_.find(k);
    if (it == reports_.end()) {
      const ExperimentMechanism& em = cfg_.mechanisms[k];
      it = reports_.emplace(k, measure_complexities(em.spec, em.catalog, cfg_.jobs)).first;
    }
    return it->second;
  }

  void Measure(SuiteOutcome& s) {
    std::vector<ComplexityReport> reps;
    for (std::size_t k = 0; k < cfg_.mechanisms.size(); ++k) {
      const ComplexityReport& r = Report(k);
      reps.push_back(r);
      if (r.valid) {
        s.lines.push_back("measured " + r.mechanism + " tax=" + std::to_string(r.tax) +
                          " cc=" + std::to_string(r.cc));
      } else {
        Fail(s, "taxation " + r.mechanism + " witness=" + r.witness);
      }
    }
    s.files.push_back({"report.csv", ReportCsv(reps)});
    s.files.push_back({"report.json", ReportJson(reps)});
  }

  void ReconstructValue(SuiteOutcome& s) {
    std::string csv = "mechanism,player,profile,ladder,oracle_calls,learner_queries,match\n";
    for (std::size_t k = 0; k < cfg_.mechanisms.size(); ++k) {
      const ExperimentMechanism& em = cfg_.mechanisms[k];
      if (em.spec.mode != Mode::kValue) {
        s.lines.push_back("skip " + em.spec.label + ": not a value-query mechanism");
        continue;
      }
      const ComplexityReport& rep = Report(k);
      int mismatches = 0, runs = 0;
      for (int i = 0; i < em.spec.n; ++i) {
        if (!IsGeneralTruthful(em.spec, i)) continue;
        OthersEnumerator others(em.catalog, i);
        Valuation self = Valuation::Zero(em.spec.m);
        const std::uint64_t limit = ProfileLimit(cfg_, "reconstruct-value", others.count());
        for (std::uint64_t code = 0; code < limit; ++code) {
          PriceOracle po = MechanismPriceOracle(em.spec, i, Others(others.Profile(code, &self), i));
          const Menu& truth = rep.players[i].menus[rep.players[i].menu_of[code]];
          ValueReconstruction r = reconstruct_menu_value(po, std::max(rep.mc, 1));
          const bool match = r.menu == truth;
          mismatches += !match;
          ++runs;
          csv += CsvLine({em.spec.label, std::to_string(i + 1),
                          ProfileName(others.Indices(code)), std::to_string(r.ladder.size()),
                          std::to_string(r.oracle_calls), std::to_string(r.learner_queries),
                          match ? "true" : "false"});
        }
      }
      if (mismatches) {
        Fail(s, "reconstruct-value " + em.spec.label + ": " + std::to_string(mismatches) +
                    " of " + std::to_string(runs) + " menus differ");
      } else {
        s.lines.push_back("reconstructed " + em.spec.label + ": " + std::to_string(runs) +
                          " menus exact");
      }
    }
    s.files.push_back({"reconstruct_value.csv", csv});
  }

  void ReconstructComm(SuiteOutcome& s) {
    std::string csv =
        "mechanism,player,profile,steps,bits,price_bits,disjointness_bits,bookkeeping_bits,"
        "catalog_menus,match\n";
    for (const ExperimentMechanism& em : cfg_.mechanisms) {
      int failures = 0, runs = 0;
      long long worst = 0;
      for (int i = 0; i < em.spec.n; ++i) {
        CommReconstructor rec(em.spec, em.catalog, i, cfg_.jobs);
        const std::uint64_t limit = ProfileLimit(cfg_, "reconstruct-comm", rec.others().count());
        for (std::uint64_t code = 0; code < limit; ++code) {
          const Menu& truth = rec.menus().menus[rec.menus().menu_of[code]];
          bool match = false;
          CommReconstruction r;
          try {
            r = rec.Run(code, StreamSeed(cfg_.seed, "reconstruct-comm", code));
            match = r.menu == truth;
            for (const CommStep& st : r.steps) match = match && 2 * st.live_after <= st.live_before;
          } catch (const SoundnessError& e) {
            Fail(s, "reconstruct-comm " + em.spec.label + ": " + e.what());
          }
          failures += !match;
          ++runs;
          worst = std::max(worst, r.bits);
          csv += CsvLine({em.spec.label, std::to_string(i + 1),
                          ProfileName(rec.others().Indices(code)), std::to_string(r.steps.size()),
                          std::to_string(r.bits), std::to_string(r.price_bits),
                          std::to_string(r.disjointness_bits), std::to_string(r.bookkeeping_bits),
                          std::to_string(r.catalog_menus), match ? "true" : "false"});
        }
      }
      if (failures) {
        Fail(s, "reconstruct-comm " + em.spec.label + ": " + std::to_string(failures) + " of " +
                    std::to_string(runs) + " runs wrong");
      } else {
        s.lines.push_back("reconstructed " + em.spec.label + ": " + std::to_string(runs) +
                          " menus, bits<=" + std::to_string(worst));
      }
    }
    s.files.push_back({"reconstruct_comm.csv", csv});
  }

  void ExtractMinAffine(SuiteOutcome& s) {
    std::string csv =
        "mechanism,player,profile,alpha,beta,demand_queries,value_queries,at_most_violations,"
        "exactly_violations,match\n";
    for (const ExperimentMechanism& em : cfg_.mechanisms) {
      if (em.spec.mode == Mode::kBit) {
        s.lines.push_back("skip " + em.spec.label + ": not a query-mode mechanism");
        continue;
      }
      int failures = 0, runs = 0;
      for (int i = 0; i < em.spec.n; ++i) {
        if (!IsGeneralTruthful(em.spec, i)) continue;
        OthersEnumerator others(em.catalog, i);
        Valuation self = Valuation::Zero(em.spec.m);
        const std::uint64_t limit = ProfileLimit(cfg_, "extract-min-affine", others.count());
        for (std::uint64_t code = 0; code < limit; ++code) {
          const MinAffineExtraction ex =
              extract_min_affine(em.spec, i, Others(others.Profile(code, &self), i));
          const Menu table = min_affine_table(ex.menu);
          bool match = ex.menu.alpha() <= ex.demand_queries &&
                       ex.menu.beta() <= ex.value_queries && ex.at_most_violations == 0 &&
                       ex.exactly_violations == 0;
          for (std::uint32_t b = 1; b < NumBundles(em.spec.m); ++b) {
            match = match && table[Bundle(b)] == ex.truth[Bundle(b)];
          }
          failures += !match;
          ++runs;
          csv += CsvLine({em.spec.label, std::to_string(i + 1), ProfileName(others.Indices(code)),
                          std::to_string(ex.menu.alpha()), std::to_string(ex.menu.beta()),
                          std::to_string(ex.demand_queries), std::to_string(ex.value_queries),
                          std::to_string(ex.at_most_violations),
                          std::to_string(ex.exactly_violations), match ? "true" : "false"});
        }
      }
      if (failures) {
        Fail(s, "extract-min-affine " + em.spec.label + ": " + std::to_string(failures) +
                    " of " + std::to_string(runs) + " extractions wrong");
      } else {
        s.lines.push_back("extracted " + em.spec.label + ": " + std::to_string(runs) +
                          " min-affine menus");
      }
    }
    s.files.push_back({"min_affine.csv", csv});
  }

  void VerifyMenu(SuiteOutcome& s) {
    static const ProbeClass kClasses[] = {ProbeClass::kGeneral, ProbeClass::kSubadditive,
                                          ProbeClass::kXos, ProbeClass::kSubmodular};
    std::string csv = "mechanism,class,samples,positives,mismatches,max_bits\n";
    const long long samples = cfg_.Option("verify-menu", "samples", 200);
    for (const ExperimentMechanism& em : cfg_.mechanisms) {
      std::vector<int> players;
      for (int i = 0; i < em.spec.n; ++i) {
        if (IsGeneralTruthful(em.spec, i)) players.push_back(i);
      }
      if (players.empty()) {
        s.lines.push_back("skip " + em.spec.label + ": no general-truthful player");
        continue;
      }
      Rng rng(cfg_.seed, "verify-menu/" + em.spec.label);
      struct Tally {
        long long positives = 0, mismatches = 0;
        int max_bits = 0;
      };
      std::map<ProbeClass, Tally> tally;
      for (long long t = 0; t < samples; ++t) {
        const int i = players[rng.Below(players.size())];
        std::vector<std::size_t> idx;
        for (int j = 0; j < em.spec.n; ++j) idx.push_back(rng.Below(em.catalog.size(j)));
        Profile p = em.catalog.At(idx);
        p.erase(p.begin() + i);
        const Menu menu = extract_menu(em.spec, i, p);
        const BaseFunction f = RandomBaseFunction(menu, em.spec.B, rng);
        const bool want = ExceedsMenu(f, menu);
        for (ProbeClass cls : kClasses) {
          const VerifyResult r = verify_menu(em.spec, i, p, f, cls);
          Tally& tl = tally[cls];
          tl.positives += want;
          tl.mismatches += r.bit != want;
          tl.max_bits = std::max(tl.max_bits, r.bits);
        }
      }
      for (ProbeClass cls : kClasses) {
        const Tally& tl = tally[cls];
        csv += CsvLine({em.spec.label, ProbeClassName(cls), std::to_string(samples),
                        std::to_string(tl.positives), std::to_string(tl.mismatches),
                        std::to_string(tl.max_bits)});
        if (tl.mismatches) {
          Fail(s, "verify-menu " + em.spec.label + " " + ProbeClassName(cls) + ": " +
                      std::to_string(tl.mismatches) + " wrong bits");
        }
      }
      s.lines.push_back("verified " + em.spec.label + ": " + std::to_string(samples) +
                        " base functions per class");
    }
    s.files.push_back({"verify_menu.csv", csv});
  }

  void Disjointness(SuiteOutcome& s) {
    const long long count = cfg_.Option("disjointness", "instances", 200);
    const int max_n = static_cast<int>(cfg_.Option("disjointness", "max_n", 4));
    const int max_l = static_cast<int>(cfg_.Option("disjointness", "max_l", 16));
    const int max_z = static_cast<int>(cfg_.Option("disjointness", "max_z", 3));
    if (max_n < 1 || max_l < 1 || max_z < 1) throw ConfigError("disjointness sizes must be positive");
    Rng rng(cfg_.seed, "disjointness");
    std::string csv = "instance,n,l,z,intersect,bit,bits,brute_force,match\n";
    long long wrong = 0;
    double worst_c = 0;
    for (long long t = 0; t < count; ++t) {
      const ZDisjointnessInstance inst = RandomPromiseInstance(rng, max_n, max_l, max_z);
      const DisjointnessResult r = solve_z_disjointness(inst);
      std::vector<const BitString*> p;
      for (const auto& a : inst.inputs) p.push_back(&a);
      const bool truth = !CommonOnes(p, inst.l).empty();
      bool match = r.intersect == truth;
      if (r.intersect) {
        for (const auto& a : inst.inputs) match = match && a[r.bit];
      }
      wrong += !match;
      worst_c = std::max(worst_c, static_cast<double>(r.bits) / DisjointnessScale(inst));
      csv += CsvLine({std::to_string(t), std::to_string(inst.n), std::to_string(inst.l),
                      std::to_string(inst.z), r.intersect ? "true" : "false",
                      std::to_string(r.bit), std::to_string(r.bits), truth ? "true" : "false",
                      match ? "true" : "false"});
    }
    std::ostringstream c;
    c.precision(4);
    c << worst_c;
    if (wrong) {
      Fail(s, "disjointness: " + std::to_string(wrong) + " of " + std::to_string(count) +
                  " instances wrong");
    } else {
      s.lines.push_back("disjointness: " + std::to_string(count) +
                        " instances exact, empirical C=" + c.str());
    }
    s.files.push_back({"disjointness.csv", csv});
  }

  void Transform(SuiteOutcome& s) {
    std::vector<AuditReport> audits;
    for (const ExperimentMechanism& em : cfg_.mechanisms) {
      if (em.spec.n != 2) {
        s.lines.push_back("skip " + em.spec.label + ": transformation covers two players");
        continue;
      }
      DominantTransform tr(em.spec, em.catalog, cfg_.jobs);
      int diverged = 0;
      for (std::size_t a = 0; a < em.catalog.size(0); ++a) {
        for (std::size_t b = 0; b < em.catalog.size(1); ++b) {
          const DominantRun r = tr.Run({tr.Truthful(0, a), tr.Truthful(1, b)});
          const RunResult& base = tr.InnerRun(a, b);
          diverged += !r.consistent || r.outcome.allocation != base.outcome.allocation ||
                      r.outcome.payments != base.outcome.payments;
        }
      }
      AuditReport rep = deviation_audit(em.spec, em.catalog);
      if (diverged) {
        Fail(s, "transform " + em.spec.label + ": truthful path differs on " +
                    std::to_string(diverged) + " profiles");
      }
      if (rep.violations) {
        Fail(s, "transform " + em.spec.label + ": profitable deviation " + rep.worst +
                    " gap=" + rep.max_violation.ToString());
      } else {
        s.lines.push_back("audited " + em.spec.label + ": " + std::to_string(rep.cases) +
                          " cases, max gap " + rep.max_violation.ToString());
      }
      audits.push_back(std::move(rep));
    }
    s.files.push_back({"audit.csv", AuditCsv(audits)});
  }

  void Simultaneous(SuiteOutcome& s) {
    std::string csv = "mechanism,profiles,tax,bits,containment_failures,overlap_failures,"
                      "welfare_failures,status\n";
    const long long den = cfg_.Option("simultaneous", "eps_den", 16);
    const long long grid = cfg_.Option("simultaneous", "grid", 1 << 12);
    for (const ExperimentMechanism& em : cfg_.mechanisms) {
      if (em.spec.n != 2) {
        s.lines.push_back("skip " + em.spec.label + ": simultaneous compiler covers two players");
        continue;
      }
      const ValuationCatalog strict =
          StrictifyCatalog(em.spec, em.catalog, Rat(1, den), grid,
                           StreamSeed(cfg_.seed, "simultaneous/" + em.spec.label), 8, cfg_.jobs);
      bool in_domain = true;
      for (int i = 0; i < 2 && em.spec.domain; ++i) {
        for (const Valuation& v : strict.player(i)) in_domain = in_domain && em.spec.domain(i, v);
      }
      if (!in_domain) {
        s.lines.push_back("skip " + em.spec.label + ": strictified types leave the domain");
        csv += CsvLine({em.spec.label, "0", "0", "0", "0", "0", "0", "skip"});
        continue;
      }
      const SimultaneousCheck c = CheckSimultaneous(em.spec, strict);
      const bool ok = c.containment_failures == 0 && c.overlap_failures == 0 &&
                      c.welfare_failures == 0 && c.bits == 2 * c.tax;
      csv += CsvLine({em.spec.label, std::to_string(c.profiles), std::to_string(c.tax),
                      std::to_string(c.bits), std::to_string(c.containment_failures),
                      std::to_string(c.overlap_failures), std::to_string(c.welfare_failures),
                      ok ? "pass" : "fail"});
      if (ok) {
        s.lines.push_back("compiled " + em.spec.label + ": " + std::to_string(c.profiles) +
                          " profiles contained, " + std::to_string(c.bits) + " bits");
      } else {
        Fail(s, "simultaneous " + em.spec.label + " witness=" + c.witness);
      }
    }
    s.files.push_back({"simultaneous.csv", csv});
  }

  void Check(SuiteOutcome& s, std::string& text, const std::string& name, bool ok,
             const std::string& detail) {
    const std::string line = name + ": " + (ok ? "PASS" : "FAIL") + "  " + detail;
    text += line + "\n";
    s.lines.push_back(line);
    if (!ok) s.pass = false;
  }

  void TheoremCheck(SuiteOutcome& s) {
    std::string text;
    for (std::size_t k = 0; k < cfg_.mechanisms.size(); ++k) {
      const ExperimentMechanism& em = cfg_.mechanisms[k];
      const ComplexityReport& r = Report(k);
      const std::string nums = r.mechanism + " tax=" + std::to_string(r.tax) +
                               " cc=" + std::to_string(r.cc);
      Check(s, text, "taxation", r.valid,
            r.mechanism + (r.valid ? "" : " witness=" + r.witness));
      if (AllGeneralTruthful(em.spec)) {
        Check(s, text, "tax<=cc", r.tax <= r.cc, nums);
        Check(s, text, "tax<=cc+1", r.tax <= r.cc + 1, nums);
      }
      if (em.spec.mode == Mode::kValue) {
        Check(s, text, "mc<=val+2", r.mc <= r.val + 2,
              r.mechanism + " mc=" + std::to_string(r.mc) + " val=" + std::to_string(r.val));
      }
      if (em.spec.id == "value_tightness" && em.params.contains("c")) {
        const std::string line = "note: " + r.mechanism + " mc=" + std::to_string(r.mc) +
                                 " counts the empty bundle (declared c=" +
                                 std::to_string(em.params["c"].get<int>()) + ")";
        text += line + "\n";
        s.lines.push_back(line);
      }
    }
    s.files.push_back({"theorem_check.txt", text});
  }

  const ExperimentConfig& cfg_;
  std::map<std::size_t, ComplexityReport> reports_;
};

}  // namespace internal

// Runs the configured suites in order and writes their artifacts under
// cfg.out. Exit code 0 when every suite passes, 1 otherwise; unwritable
// output raises IoError.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentResult res;
  internal::SuiteRunner runner(cfg);
  for (const std::string& name : cfg.suites) {
    SuiteOutcome s = runner.Run(name);
    log << "[" << name << "]\n";
    for (const std::string& line : s.lines) log << "  " << line << "\n";
    for (const auto& [rel, bytes] : s.files) {
      const std::filesystem::path path = cfg.out / rel;
      WriteFile(path, bytes);
      res.artifacts.push_back(path);
    }
    log << "[" << name << "] " << (s.pass ? "PASS" : "FAIL") << "\n";
    if (!s.pass) res.exit_code = 1;
    res.suites.push_back(std::move(s));
  }
  return res;
}

}  // namespace taxlab

#endif  // TAXLAB_EXPERIMENT_HPP_
