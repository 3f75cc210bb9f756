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

#include "adtypes/instance_io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adtypes {

using nlohmann::json;

json InstanceToJson(const AuctionInstance& instance) {
  json curves = json::object();
  for (const auto& [name, curve] : instance.curves()) {
    curves[name] = curve.values();
  }
  json bidders = json::array();
  for (int i = 0; i < instance.bidder_count(); ++i) {
    bidders.push_back({{"id", i},
                       {"type", instance.type_of(i)},
                       {"value", instance.value(i)}});
  }
  return {{"slots", instance.slot_count()},
          {"curves", std::move(curves)},
          {"bidders", std::move(bidders)}};
}

AuctionInstance InstanceFromJson(const json& doc) {
  try {
    const int slots = doc.at("slots").get<int>();
    std::map<std::string, DiscountCurve> curves;
    for (const auto& [name, values] : doc.at("curves").items()) {
      curves.emplace(name, DiscountCurve(values.get<std::vector<double>>()));
    }
    std::vector<Bidder> bidders;
    for (const auto& b : doc.at("bidders")) {
      bidders.push_back({b.at("id").get<int>(), b.at("type").get<std::string>(),
                         b.at("value").get<double>()});
    }
    return AuctionInstance(std::move(bidders), std::move(curves), slots);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance JSON: ") +
                                e.what());
  }
}

json OutcomeToJson(const AuctionOutcome& outcome) {
  return {{"slot_of", outcome.assignment.slot_of},
          {"bidder_in", outcome.assignment.bidder_in},
          {"per_conversion_price", outcome.per_conversion_price},
          {"expected_payment", outcome.expected_payment},
          {"true_welfare", outcome.true_welfare},
          {"apparent_welfare", outcome.apparent_welfare},
          {"revenue", outcome.revenue}};
}

std::string FormatDouble(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

std::string DumpJson(const json& doc) { return doc.dump(2) + "\n"; }

json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("cannot parse " + path + ": " + e.what());
  }
}

AuctionInstance LoadInstance(const std::string& path) {
  return InstanceFromJson(LoadJsonFile(path));
}

}  // namespace adtypes
