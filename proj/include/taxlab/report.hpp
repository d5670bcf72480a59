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


#ifndef TAXLAB_REPORT_HPP_
#define TAXLAB_REPORT_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <tuple>
#include <vector>

#include "taxlab/complexity.hpp"
#include "taxlab/errors.hpp"
#include "taxlab/json_io.hpp"
#include "taxlab/transforms.hpp"

namespace taxlab {

inline const char kReportHeader[] = "mechanism,m,n,tax,cc,price,tie,mc,val,dem,d,valid";

// RFC 4180 quoting, applied only when needed.
inline std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string CsvLine(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) line += ',';
    line += CsvField(fields[k]);
  }
  return line + "\n";
}

// Sorted by (mechanism, m, n); ties keep input order.
inline std::vector<ComplexityReport> SortedReports(std::vector<ComplexityReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const ComplexityReport& a, const ComplexityReport& b) {
                     return std::tie(a.mechanism, a.m, a.n) < std::tie(b.mechanism, b.m, b.n);
                   });
  return reports;
}

inline std::string ReportCsv(const std::vector<ComplexityReport>& reports) {
  std::string out = std::string(kReportHeader) + "\n";
  for (const ComplexityReport& r : SortedReports(reports)) {
    out += CsvLine({r.mechanism, std::to_string(r.m), std::to_string(r.n), std::to_string(r.tax),
                    std::to_string(r.cc), std::to_string(r.price), std::to_string(r.tie),
                    std::to_string(r.mc), std::to_string(r.val), std::to_string(r.dem),
                    std::to_string(r.d), r.valid ? "true" : "false"});
  }
  return out;
}

inline Json ReportToJson(const ComplexityReport& r) {
  Json players = Json::array();
  for (const PlayerMenus& pm : r.players) {
    players.push_back(Json{{"menus", pm.menus.size()},
                           {"tax_bits", pm.tax_bits()},
                           {"probe_bits", pm.probe_bits}});
  }
  Json j{{"mechanism", r.mechanism}, {"m", r.m},         {"n", r.n},
         {"tax", r.tax},             {"cc", r.cc},       {"catalog_cc", r.catalog_cc},
         {"price", r.price},         {"tie", r.tie},     {"mc", r.mc},
         {"val", r.val},             {"dem", r.dem},     {"d", r.d},
         {"valid", r.valid},         {"players", players}};
  if (!r.valid) j["witness"] = r.witness;
  return j;
}

// Pretty JSON with sorted keys and a trailing newline.
inline std::string ReportJson(const std::vector<ComplexityReport>& reports) {
  Json arr = Json::array();
  for (const ComplexityReport& r : SortedReports(reports)) arr.push_back(ReportToJson(r));
  return arr.dump(2) + "\n";
}

inline std::string AuditCsv(const std::vector<AuditReport>& audits) {
  std::string out =
      "mechanism,player,valuation,deviation,truthful_utility,deviating_utility,gap\n";
  for (const AuditReport& a : audits) {
    for (const AuditRow& row : a.rows) {
      out += CsvLine({a.mechanism, std::to_string(row.player + 1), std::to_string(row.valuation),
                      row.deviation, row.truthful_utility.ToString(),
                      row.deviating_utility.ToString(), row.gap.ToString()});
    }
  }
  return out;
}

// Writes bytes verbatim, creating parent directories.
inline void WriteFile(const std::filesystem::path& path, const std::string& bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f << bytes;
  f.close();
  if (!f) throw IoError("write failed for " + path.string());
}

// report.csv and report.json under dir.
inline void emit_report(const std::vector<ComplexityReport>& reports,
                        const std::filesystem::path& dir) {
  if (reports.empty()) throw ContractError("emit_report needs at least one report");
  WriteFile(dir / "report.csv", ReportCsv(reports));
  WriteFile(dir / "report.json", ReportJson(reports));
}

}  // namespace taxlab

#endif  // TAXLAB_REPORT_HPP_
