// Copyright 2026 The adtypes Authors
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

#ifndef ADTYPES_INSTANCE_IO_H_
#define ADTYPES_INSTANCE_IO_H_

#include <string>

#include "adtypes/model.h"
#include "json.hpp"

namespace adtypes {

// {"slots": m, "curves": {type: [d...]}, "bidders": [{"id", "type", "value"}]}
nlohmann::json InstanceToJson(const AuctionInstance& instance);
AuctionInstance InstanceFromJson(const nlohmann::json& doc);

nlohmann::json OutcomeToJson(const AuctionOutcome& outcome);

// Doubles are written with the shortest round-trip representation, so
// InstanceFromJson(InstanceToJson(x)) == x bit for bit.
std::string DumpJson(const nlohmann::json& doc);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double x);

AuctionInstance LoadInstance(const std::string& path);
nlohmann::json LoadJsonFile(const std::string& path);

}  // namespace adtypes

#endif  // ADTYPES_INSTANCE_IO_H_
