// Copyright 2026 The complyscope Authors
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

#include "complyscope/reporting.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "complyscope/error.h"

namespace complyscope::reporting {

using pipeline::ViolationReport;

namespace {

double Percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double Mean(std::size_t total, std::size_t n) {
  return n == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(n);
}

std::string Num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::map<int, std::vector<const ViolationReport*>> ByYear(
    std::span<const ViolationReport> reports) {
  std::map<int, std::vector<const ViolationReport*>> out;
  for (const auto& r : reports) out[r.release_date.year()].push_back(&r);
  return out;
}

}  // namespace

std::vector<AnnualSummaryRow> AggregateAnnual(std::span<const ViolationReport> reports) {
  std::vector<AnnualSummaryRow> rows;
  for (const auto& [year, group] : ByYear(reports)) {
    AnnualSummaryRow row;
    row.year = year;
    row.apks = group.size();
    std::set<std::string> apps;
    for (const ViolationReport* r : group) {
      apps.insert(r->app_id);
      row.leaks_first += r->leaks.Count(Party::kFirstParty);
      row.leaks_third += r->leaks.Count(Party::kThirdParty);
      row.apks_compliant += r->compliant() ? 1 : 0;
      row.violations_first += r->ViolationCount(Party::kFirstParty);
      row.violations_third += r->ViolationCount(Party::kThirdParty);
    }
    row.apps = apps.size();
    row.violations_total = row.violations_first + row.violations_third;
    row.leaks_first_per_apk = Mean(row.leaks_first, row.apks);
    row.leaks_third_per_apk = Mean(row.leaks_third, row.apks);
    row.compliant_percent = Percent(row.apks_compliant, row.apks);
    row.violations_per_apk = Mean(row.violations_total, row.apks);
    row.violations_first_per_apk = Mean(row.violations_first, row.apks);
    row.violations_third_per_apk = Mean(row.violations_third, row.apks);
    rows.push_back(row);
  }
  return rows;
}

std::vector<DeltaSummaryRow> AggregateDeltas(std::span<const ViolationReport> reports) {
  std::map<std::string, std::vector<const ViolationReport*>> by_app;
  for (const auto& r : reports) by_app[r.app_id].push_back(&r);

  struct Counts {
    std::size_t compared = 0, fi = 0, fd = 0, ti = 0, td = 0, di = 0, dd = 0;
  };
  std::map<int, Counts> by_year;
  for (auto& [app, versions] : by_app) {
    std::sort(versions.begin(), versions.end(), [](const auto* a, const auto* b) {
      return std::tie(a->release_date, a->version_code) <
             std::tie(b->release_date, b->version_code);
    });
    for (std::size_t i = 1; i < versions.size(); ++i) {
      const ViolationReport& prev = *versions[i - 1];
      const ViolationReport& next = *versions[i];
      compliance::VersionViolations a{prev.app_id, prev.version_code,
                                      prev.release_date, prev.violations};
      compliance::VersionViolations b{next.app_id, next.version_code,
                                      next.release_date, next.violations};
      std::map<Party, compliance::Delta> d;
      try {
        d = compliance::CompareVersions(a, b);
      } catch (const Error&) {
        continue;
      }
      Counts& c = by_year[next.release_date.year()];
      ++c.compared;
      c.fi += d[Party::kFirstParty] == compliance::Delta::kIncrease;
      c.fd += d[Party::kFirstParty] == compliance::Delta::kDecrease;
      c.ti += d[Party::kThirdParty] == compliance::Delta::kIncrease;
      c.td += d[Party::kThirdParty] == compliance::Delta::kDecrease;
      compliance::Delta disc =
          compliance::CompareCounts(prev.disclosed.size(), next.disclosed.size());
      c.di += disc == compliance::Delta::kIncrease;
      c.dd += disc == compliance::Delta::kDecrease;
    }
  }
  std::vector<DeltaSummaryRow> rows;
  for (const auto& [year, c] : by_year) {
    rows.push_back({year, c.compared, Percent(c.fi, c.compared),
                    Percent(c.fd, c.compared), Percent(c.ti, c.compared),
                    Percent(c.td, c.compared), Percent(c.di, c.compared),
                    Percent(c.dd, c.compared)});
  }
  return rows;
}

std::vector<std::pair<double, double>> CdfPoints(std::vector<double> values) {
  std::vector<std::pair<double, double>> out;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

std::vector<CdfSeries> CdfByYear(std::span<const ViolationReport> reports) {
  std::vector<CdfSeries> out;
  for (const auto& [year, group] : ByYear(reports)) {
    std::vector<double> lf, lt, vf, vt, ud;
    for (const ViolationReport* r : group) {
      lf.push_back(static_cast<double>(r->leaks.Count(Party::kFirstParty)));
      lt.push_back(static_cast<double>(r->leaks.Count(Party::kThirdParty)));
      vf.push_back(static_cast<double>(r->ViolationCount(Party::kFirstParty)));
      vt.push_back(static_cast<double>(r->ViolationCount(Party::kThirdParty)));
      ud.push_back(static_cast<double>(r->domain_disclosure.undisclosed.size()));
    }
    out.push_back({"leaks_first", year, CdfPoints(std::move(lf))});
    out.push_back({"leaks_third", year, CdfPoints(std::move(lt))});
    out.push_back({"violations_first", year, CdfPoints(std::move(vf))});
    out.push_back({"violations_third", year, CdfPoints(std::move(vt))});
    out.push_back({"undisclosed_domains", year, CdfPoints(std::move(ud))});
  }
  return out;
}

std::vector<DomainRank> RankUndisclosedDomains(std::span<const ViolationReport> reports,
                                               std::size_t top_n) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : reports) {
    std::set<std::string> uniq(r.domain_disclosure.undisclosed.begin(),
                               r.domain_disclosure.undisclosed.end());
    for (const auto& d : uniq) ++counts[d];
  }
  std::vector<DomainRank> out;
  for (const auto& [domain, n] : counts) {
    out.push_back({domain, n, Percent(n, reports.size()), reports.size()});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.apks > b.apks;  // input is already in domain order
  });
  if (top_n > 0 && out.size() > top_n) out.resize(top_n);
  return out;
}

std::string AnnualToCsv(std::span<const AnnualSummaryRow> rows) {
  std::string out =
      "year,apps,apks,leaks_first,leaks_third,leaks_first_per_apk,"
      "leaks_third_per_apk,apks_compliant,compliant_percent,violations_total,"
      "violations_per_apk,violations_first,violations_third,"
      "violations_first_per_apk,violations_third_per_apk\n";
  for (const auto& r : rows) {
    out += std::to_string(r.year) + "," + std::to_string(r.apps) + "," +
           std::to_string(r.apks) + "," + std::to_string(r.leaks_first) + "," +
           std::to_string(r.leaks_third) + "," + Num(r.leaks_first_per_apk) + "," +
           Num(r.leaks_third_per_apk) + "," + std::to_string(r.apks_compliant) +
           "," + Num(r.compliant_percent) + "," + std::to_string(r.violations_total) +
           "," + Num(r.violations_per_apk) + "," + std::to_string(r.violations_first) +
           "," + std::to_string(r.violations_third) + "," +
           Num(r.violations_first_per_apk) + "," + Num(r.violations_third_per_apk) +
           "\n";
  }
  return out;
}

std::string DeltasToCsv(std::span<const DeltaSummaryRow> rows) {
  std::string out =
      "year,apks_compared,first_increase_percent,first_decrease_percent,"
      "third_increase_percent,third_decrease_percent,"
      "disclosure_increase_percent,disclosure_decrease_percent\n";
  for (const auto& r : rows) {
    out += std::to_string(r.year) + "," + std::to_string(r.apks_compared) + "," +
           Num(r.first_increase_percent) + "," + Num(r.first_decrease_percent) + "," +
           Num(r.third_increase_percent) + "," + Num(r.third_decrease_percent) + "," +
           Num(r.disclosure_increase_percent) + "," +
           Num(r.disclosure_decrease_percent) + "\n";
  }
  return out;
}

std::string CdfToCsv(std::span<const CdfSeries> series) {
  std::string out = "series,year,value,fraction\n";
  for (const auto& s : series) {
    for (const auto& [v, f] : s.points) {
      out += s.name + "," + std::to_string(s.year) + "," + Num(v) + "," + Num(f) + "\n";
    }
  }
  return out;
}

std::string DomainsToCsv(std::span<const DomainRank> ranks) {
  std::string out = "rank,domain,apks,analyzed_apks,percent\n";
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    out += std::to_string(i + 1) + "," + ranks[i].domain + "," +
           std::to_string(ranks[i].apks) + "," + std::to_string(ranks[i].analyzed_apks) +
           "," + Num(ranks[i].percent) + "\n";
  }
  return out;
}

}  // namespace complyscope::reporting
