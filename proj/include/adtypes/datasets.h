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

#ifndef ADTYPES_DATASETS_H_
#define ADTYPES_DATASETS_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "adtypes/random.h"
#include "json.hpp"

namespace adtypes {

struct BidRecord {
  std::string advertiser_id;
  std::string auction_id;
  double bid = 0.0;

  bool operator==(const BidRecord&) const = default;
};

// CSV with header "advertiser_id,auction_id,bid", one record per line.
std::vector<BidRecord> ReadBidCsv(std::istream& in);
std::vector<BidRecord> ReadBidCsvFile(const std::string& path);
void WriteBidCsv(std::ostream& out, std::span<const BidRecord> records);

enum class DatasetMode { kIndependent, kCorrelated };

const char* DatasetModeName(DatasetMode mode);
DatasetMode ParseDatasetMode(const std::string& name);

struct AdvertiserStats {
  std::string id;
  double p5 = 0.0;
  double p95 = 0.0;
  int count = 0;
};

// Normalized bids grouped by advertiser (independent mode) or by auction
// (correlated mode). Groups are ordered by id; bids within a group keep
// their input order.
class BidDataset {
 public:
  DatasetMode mode() const { return mode_; }
  const std::vector<BidRecord>& records() const { return records_; }

  int group_count() const { return static_cast<int>(group_ids_.size()); }
  const std::string& group_id(int g) const { return group_ids_[g]; }
  const std::vector<double>& group(int g) const { return groups_[g]; }

  // Independent mode only; one entry per kept advertiser.
  const std::vector<AdvertiserStats>& advertiser_stats() const {
    return stats_;
  }
  const std::vector<std::string>& dropped() const { return dropped_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Normalization metadata written next to the normalized CSV.
  nlohmann::json Sidecar() const;

 private:
  friend BidDataset NormalizeAdvertisers(std::span<const BidRecord>, int);
  friend BidDataset NormalizeAuctions(std::span<const BidRecord>);

  DatasetMode mode_ = DatasetMode::kIndependent;
  std::vector<BidRecord> records_;
  std::vector<std::string> group_ids_;
  std::vector<std::vector<double>> groups_;
  std::vector<AdvertiserStats> stats_;
  std::vector<std::string> dropped_;
  std::vector<std::string> warnings_;
};

// Linear interpolation between order statistics at rank (n - 1) * q / 100.
// `sorted` must be non-empty and ascending.
double Percentile(std::span<const double> sorted, double q);

inline constexpr int kMinRecordsPerAdvertiser = 20;

// Per advertiser: clamp to [P5, P95], then map that interval onto [0, 1].
// Advertisers with P5 == P95 are dropped with a warning.
BidDataset NormalizeAdvertisers(std::span<const BidRecord> raw,
                                int min_records = kMinRecordsPerAdvertiser);

// Per auction: divide by the auction's largest bid. All-zero auctions are
// dropped with a warning; auctions with fewer than two bids are an error.
BidDataset NormalizeAuctions(std::span<const BidRecord> raw);

struct SynthParams {
  int advertisers = 10;
  // Every advertiser bids once in each auction.
  int auctions = 1000;
  // Advertiser log-location ~ N(location_mean, location_spread^2).
  double location_mean = 0.0;
  double location_spread = 0.5;
  // Advertiser log-scale = scale_mean * exp(scale_spread * N(0, 1)).
  double scale_mean = 0.5;
  double scale_spread = 0.25;
  // Share of log-bid variance common to all bids in an auction.
  double auction_correlation = 0.3;
};

// Raw log-normal bids; advertiser ids "adv00..", auction ids "auc00000..".
std::vector<BidRecord> SynthGenerate(const SynthParams& params,
                                     std::uint64_t seed);

SynthParams SynthParamsFromJson(const nlohmann::json& doc);
nlohmann::json SynthParamsToJson(const SynthParams& params);

// Independent mode: bidder i draws uniformly from the i-th advertiser pool.
// Correlated mode: a uniformly chosen auction with at least `bidders` bids
// supplies its first `bidders` bids in order.
std::vector<double> SampleValuations(const BidDataset& dataset, int bidders,
                                     Rng& rng);

}  // namespace adtypes

#endif  // ADTYPES_DATASETS_H_
