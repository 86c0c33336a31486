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

#include "complyscope/labels.h"

#include "complyscope/error.h"

namespace complyscope {
namespace {

constexpr std::array<std::string_view, kPiiLabelCount> kPiiNames = {
    "Contact",
    "Contact_Address_Book",
    "Contact_City",
    "Contact_E_Mail_Address",
    "Contact_Password",
    "Contact_Phone_Number",
    "Contact_Postal_Address",
    "Contact_ZIP",
    "Demographic",
    "Demographic_Age",
    "Demographic_Gender",
    "Identifier",
    "Identifier_Ad_ID",
    "Identifier_Cookie",
    "Identifier_Device_ID",
    "Identifier_IMEI",
    "Identifier_IMSI",
    "Identifier_IP_Address",
    "Identifier_MAC",
    "Identifier_Mobile_Carrier",
    "Identifier_SIM_Serial",
    "Identifier_SSID_BSSID",
    "Location",
    "Location_Bluetooth",
    "Location_Cell_Tower",
    "Location_GPS",
    "Location_IP_Address",
    "Location_WiFi",
};

constexpr std::array<std::string_view, kDynamicLabelCount> kDynamicNames = {
    "firstName",  "lastName", "email",         "password",   "phone_number",
    "gender",     "hardware_serial", "gsf_id", "advertiser_id",
    "android_id", "imei",     "sim_id",        "mac_addr",   "location",
};

}  // namespace

const std::array<PiiLabel, kPiiLabelCount>& AllPiiLabels() {
  static const auto labels = [] {
    std::array<PiiLabel, kPiiLabelCount> out{};
    for (std::size_t i = 0; i < kPiiLabelCount; ++i) {
      out[i] = static_cast<PiiLabel>(i);
    }
    return out;
  }();
  return labels;
}

std::string_view PiiLabelName(PiiLabel label) {
  return kPiiNames[static_cast<std::size_t>(label)];
}

std::optional<PiiLabel> ParsePiiLabel(std::string_view name) {
  for (std::size_t i = 0; i < kPiiLabelCount; ++i) {
    if (kPiiNames[i] == name) return static_cast<PiiLabel>(i);
  }
  return std::nullopt;
}

std::string_view ProcedureName(Procedure p) {
  return p == Procedure::kPerformed ? kPerformedLabel : kNotPerformedLabel;
}

std::string_view PartyName(Party p) {
  return p == Party::kFirstParty ? kFirstPartyLabel : kThirdPartyLabel;
}

std::optional<Procedure> ParseProcedure(std::string_view name) {
  if (name == kPerformedLabel) return Procedure::kPerformed;
  if (name == kNotPerformedLabel || name == "NotPerformed") {
    return Procedure::kNotPerformed;
  }
  return std::nullopt;
}

std::optional<Party> ParseParty(std::string_view name) {
  if (name == kFirstPartyLabel || name == "FirstParty") return Party::kFirstParty;
  if (name == kThirdPartyLabel || name == "ThirdParty") return Party::kThirdParty;
  return std::nullopt;
}

const std::array<std::string, kSuiteSize>& SuiteLabelNames() {
  static const auto names = [] {
    std::array<std::string, kSuiteSize> out;
    for (std::size_t i = 0; i < kPiiLabelCount; ++i) {
      out[i] = std::string(kPiiNames[i]);
    }
    out[28] = std::string(kPerformedLabel);
    out[29] = std::string(kNotPerformedLabel);
    out[30] = std::string(kFirstPartyLabel);
    out[31] = std::string(kThirdPartyLabel);
    return out;
  }();
  return names;
}

std::string ToString(const PracticeDisclosure& d) {
  std::string out(PiiLabelName(d.pii));
  out += ' ';
  out += ProcedureName(d.procedure);
  out += ' ';
  out += PartyName(d.party);
  return out;
}

const std::array<DynamicLeakLabel, kDynamicLabelCount>& AllDynamicLabels() {
  static const auto labels = [] {
    std::array<DynamicLeakLabel, kDynamicLabelCount> out{};
    for (std::size_t i = 0; i < kDynamicLabelCount; ++i) {
      out[i] = static_cast<DynamicLeakLabel>(i);
    }
    return out;
  }();
  return labels;
}

std::string_view DynamicLabelName(DynamicLeakLabel label) {
  return kDynamicNames[static_cast<std::size_t>(label)];
}

std::optional<DynamicLeakLabel> ParseDynamicLabel(std::string_view name) {
  for (std::size_t i = 0; i < kDynamicLabelCount; ++i) {
    if (kDynamicNames[i] == name) return static_cast<DynamicLeakLabel>(i);
  }
  return std::nullopt;
}

DynamicLeakLabel ParseDynamicLabelOrThrow(std::string_view name) {
  auto label = ParseDynamicLabel(name);
  if (!label) {
    throw Error(ErrorCode::kUnknownDynamicLabel,
                "unknown dynamic leak label '" + std::string(name) + "'");
  }
  return *label;
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kStatic: return "static";
    case Provenance::kDynamic: return "dynamic";
    case Provenance::kBoth: return "both";
  }
  return "static";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  if (name == "static") return Provenance::kStatic;
  if (name == "dynamic") return Provenance::kDynamic;
  if (name == "both") return Provenance::kBoth;
  return std::nullopt;
}

Provenance Merge(Provenance a, Provenance b) {
  return a == b ? a : Provenance::kBoth;
}

}  // namespace complyscope
