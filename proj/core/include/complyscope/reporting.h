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

#ifndef COMPLYSCOPE_REPORTING_H_
#define COMPLYSCOPE_REPORTING_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "complyscope/pipeline.h"

namespace complyscope::reporting {

// Per release year. Means are totals divided by apks; percentages are in
// [0, 100].
struct AnnualSummaryRow {
  int year = 0;
  std::size_t apps = 0;
  std::size_t apks = 0;
  std::size_t leaks_first = 0;
  std::size_t leaks_third = 0;
  double leaks_first_per_apk = 0;
  double leaks_third_per_apk = 0;
  std::size_t apks_compliant = 0;
  double compliant_percent = 0;
  std::size_t violations_total = 0;
  double violations_per_apk = 0;
  std::size_t violations_first = 0;
  std::size_t violations_third = 0;
  double violations_first_per_apk = 0;
  double violations_third_per_apk = 0;
};

// Leaks are counted as distinct (label, party) entries, violations as
// equivalence-group records.
std::vector<AnnualSummaryRow> AggregateAnnual(
    std::span<const pipeline::ViolationReport> reports);

// Percent of compared APKs (those with an earlier version of the same app)
// released in `year` whose counts went up or down.
struct DeltaSummaryRow {
  int year = 0;
  std::size_t apks_compared = 0;
  double first_increase_percent = 0;
  double first_decrease_percent = 0;
  double third_increase_percent = 0;
  double third_decrease_percent = 0;
  double disclosure_increase_percent = 0;  // disclosed practice count
  double disclosure_decrease_percent = 0;
};

// Versions of each app are ordered by (release_date, version_code); pairs
// whose ordering metadata conflicts are not compared.
std::vector<DeltaSummaryRow> AggregateDeltas(
    std::span<const pipeline::ViolationReport> reports);

// Sorted distinct values with the fraction of inputs at or below each.
std::vector<std::pair<double, double>> CdfPoints(std::vector<double> values);

struct CdfSeries {
  std::string name;  // leaks_first, leaks_third, violations_first, ...
  int year = 0;
  std::vector<std::pair<double, double>> points;
};

// Per-year CDFs of per-APK leak, violation and undisclosed-domain counts.
std::vector<CdfSeries> CdfByYear(std::span<const pipeline::ViolationReport> reports);

struct DomainRank {
  std::string domain;
  std::size_t apks = 0;
  double percent = 0;  // of all analyzed APKs
  std::size_t analyzed_apks = 0;
};

// Descending by percent, ties broken by domain name. top_n = 0 keeps all.
std::vector<DomainRank> RankUndisclosedDomains(
    std::span<const pipeline::ViolationReport> reports, std::size_t top_n = 0);

std::string AnnualToCsv(std::span<const AnnualSummaryRow> rows);
std::string DeltasToCsv(std::span<const DeltaSummaryRow> rows);
std::string CdfToCsv(std::span<const CdfSeries> series);
std::string DomainsToCsv(std::span<const DomainRank> ranks);

}  // namespace complyscope::reporting

#endif  // COMPLYSCOPE_REPORTING_H_
