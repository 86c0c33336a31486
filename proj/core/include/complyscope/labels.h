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

#ifndef COMPLYSCOPE_LABELS_H_
#define COMPLYSCOPE_LABELS_H_

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace complyscope {

// The closed set of data types a policy can disclose and an app can leak.
// Enumerator order is the serialization order used everywhere.
enum class PiiLabel {
  kContact,
  kContactAddressBook,
  kContactCity,
  kContactEMailAddress,
  kContactPassword,
  kContactPhoneNumber,
  kContactPostalAddress,
  kContactZip,
  kDemographic,
  kDemographicAge,
  kDemographicGender,
  kIdentifier,
  kIdentifierAdId,
  kIdentifierCookie,
  kIdentifierDeviceId,
  kIdentifierImei,
  kIdentifierImsi,
  kIdentifierIpAddress,
  kIdentifierMac,
  kIdentifierMobileCarrier,
  kIdentifierSimSerial,
  kIdentifierSsidBssid,
  kLocation,
  kLocationBluetooth,
  kLocationCellTower,
  kLocationGps,
  kLocationIpAddress,
  kLocationWifi,
};

inline constexpr std::size_t kPiiLabelCount = 28;

const std::array<PiiLabel, kPiiLabelCount>& AllPiiLabels();
std::string_view PiiLabelName(PiiLabel label);
std::optional<PiiLabel> ParsePiiLabel(std::string_view name);

enum class Procedure { kPerformed, kNotPerformed };
enum class Party { kFirstParty, kThirdParty };

inline constexpr std::array<Party, 2> kAllParties = {Party::kFirstParty,
                                                     Party::kThirdParty};

std::string_view ProcedureName(Procedure p);  // "Performed" / "Not_Performed"
std::string_view PartyName(Party p);          // "1stParty" / "3rdParty"
std::optional<Procedure> ParseProcedure(std::string_view name);
std::optional<Party> ParseParty(std::string_view name);

// Classifier label names: the 28 PII names followed by the four
// procedure/party names, 32 in total.
inline constexpr std::size_t kSuiteSize = 32;
const std::array<std::string, kSuiteSize>& SuiteLabelNames();
inline constexpr std::string_view kPerformedLabel = "Performed";
inline constexpr std::string_view kNotPerformedLabel = "Not_Performed";
inline constexpr std::string_view kFirstPartyLabel = "1stParty";
inline constexpr std::string_view kThirdPartyLabel = "3rdParty";

// A (data type, procedure, party) triple.
struct PracticeDisclosure {
  PiiLabel pii;
  Procedure procedure;
  Party party;

  friend auto operator<=>(const PracticeDisclosure&,
                          const PracticeDisclosure&) = default;
};

std::string ToString(const PracticeDisclosure& d);

// Labels emitted by flow-level PII extraction.
enum class DynamicLeakLabel {
  kFirstName,
  kLastName,
  kEmail,
  kPassword,
  kPhoneNumber,
  kGender,
  kHardwareSerial,
  kGsfId,
  kAdvertiserId,
  kAndroidId,
  kImei,
  kSimId,
  kMacAddr,
  kLocation,
};

inline constexpr std::size_t kDynamicLabelCount = 14;

const std::array<DynamicLeakLabel, kDynamicLabelCount>& AllDynamicLabels();
std::string_view DynamicLabelName(DynamicLeakLabel label);
std::optional<DynamicLeakLabel> ParseDynamicLabel(std::string_view name);
// Throws Error(kUnknownDynamicLabel).
DynamicLeakLabel ParseDynamicLabelOrThrow(std::string_view name);

// Where a leak was observed.
enum class Provenance { kStatic, kDynamic, kBoth };

std::string_view ProvenanceName(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view name);
Provenance Merge(Provenance a, Provenance b);

}  // namespace complyscope

#endif  // COMPLYSCOPE_LABELS_H_
