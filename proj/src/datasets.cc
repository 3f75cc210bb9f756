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

#include "adtypes/datasets.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string_view>

#include "adtypes/instance_io.h"

namespace adtypes {
namespace {

constexpr char kCsvHeader[] = "advertiser_id,auction_id,bid";

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

std::string Pad(int x, int width) {
  std::string s = std::to_string(x);
  if (static_cast<int>(s.size()) < width) {
    s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  }
  return s;
}

// Record indices grouped by key, groups ordered by key.
template <typename KeyFn>
std::map<std::string, std::vector<std::size_t>> GroupBy(
    std::span<const BidRecord> raw, KeyFn key) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (!std::isfinite(raw[r].bid) || raw[r].bid < 0.0) {
      throw std::invalid_argument("bids must be finite and non-negative");
    }
    groups[key(raw[r])].push_back(r);
  }
  return groups;
}

}  // namespace

std::vector<BidRecord> ReadBidCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || Trim(line) != kCsvHeader) {
    throw std::invalid_argument(std::string("expected CSV header ") +
                                kCsvHeader);
  }
  std::vector<BidRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 =
        c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos ||
        line.find(',', c2 + 1) != std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected three fields");
    }
    BidRecord r;
    r.advertiser_id = Trim(std::string_view(line).substr(0, c1));
    r.auction_id = Trim(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    const std::string bid = Trim(std::string_view(line).substr(c2 + 1));
    const auto [end, ec] =
        std::from_chars(bid.data(), bid.data() + bid.size(), r.bid);
    if (ec != std::errc() || end != bid.data() + bid.size() ||
        r.advertiser_id.empty() || r.auction_id.empty()) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": malformed record");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BidRecord> ReadBidCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadBidCsv(in);
}

void WriteBidCsv(std::ostream& out, std::span<const BidRecord> records) {
  out << kCsvHeader << '\n';
  for (const BidRecord& r : records) {
    out << r.advertiser_id << ',' << r.auction_id << ','
        << FormatDouble(r.bid) << '\n';
  }
}

const char* DatasetModeName(DatasetMode mode) {
  return mode == DatasetMode::kIndependent ? "independent" : "correlated";
}

DatasetMode ParseDatasetMode(const std::string& name) {
  if (name == "independent" || name == "advertisers") {
    return DatasetMode::kIndependent;
  }
  if (name == "correlated" || name == "auctions") {
    return DatasetMode::kCorrelated;
  }
  throw std::invalid_argument("unknown dataset mode: " + name);
}

nlohmann::json BidDataset::Sidecar() const {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["mode"] = DatasetModeName(mode_);
  doc["records"] = records_.size();
  doc["groups"] = group_ids_.size();
  if (mode_ == DatasetMode::kIndependent) {
    doc["percentile_convention"] =
        "linear interpolation between order statistics";
    doc["procedure"] = "clamp to [P5, P95], then map [P5, P95] onto [0, 1]";
    nlohmann::json stats = nlohmann::json::array();
    for (const AdvertiserStats& s : stats_) {
      stats.push_back(
          {{"id", s.id}, {"p5", s.p5}, {"p95", s.p95}, {"count", s.count}});
    }
    doc["advertisers"] = std::move(stats);
  } else {
    doc["procedure"] = "divide each auction by its largest bid";
  }
  doc["dropped"] = dropped_;
  doc["warnings"] = warnings_;
  return doc;
}

double Percentile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  if (!(q >= 0.0 && q <= 100.0)) {
    throw std::invalid_argument("percentile outside [0, 100]");
  }
  const double h = static_cast<double>(sorted.size() - 1) * q / 100.0;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BidDataset NormalizeAdvertisers(std::span<const BidRecord> raw,
                                int min_records) {
  const auto groups =
      GroupBy(raw, [](const BidRecord& r) { return r.advertiser_id; });
  BidDataset ds;
  ds.mode_ = DatasetMode::kIndependent;
  std::vector<double> normalized(raw.size(), -1.0);
  for (const auto& [id, rows] : groups) {
    if (static_cast<int>(rows.size()) < min_records) {
      throw std::invalid_argument("advertiser " + id + " has " +
                                  std::to_string(rows.size()) +
                                  " records; at least " +
                                  std::to_string(min_records) + " required");
    }
    std::vector<double> sorted;
    sorted.reserve(rows.size());
    for (std::size_t r : rows) sorted.push_back(raw[r].bid);
    std::sort(sorted.begin(), sorted.end());
    const double p5 = Percentile(sorted, 5.0);
    const double p95 = Percentile(sorted, 95.0);
    if (!(p95 > p5)) {
      ds.dropped_.push_back(id);
      ds.warnings_.push_back("advertiser " + id +
                             " dropped: 5th and 95th percentiles coincide");
      continue;
    }
    std::vector<double> pool;
    pool.reserve(rows.size());
    for (std::size_t r : rows) {
      const double x = (std::clamp(raw[r].bid, p5, p95) - p5) / (p95 - p5);
      normalized[r] = std::clamp(x, 0.0, 1.0);
      pool.push_back(normalized[r]);
    }
    ds.group_ids_.push_back(id);
    ds.groups_.push_back(std::move(pool));
    ds.stats_.push_back({id, p5, p95, static_cast<int>(rows.size())});
  }
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (normalized[r] >= 0.0) {
      ds.records_.push_back({raw[r].advertiser_id, raw[r].auction_id,
                             normalized[r]});
    }
  }
  return ds;
}

BidDataset NormalizeAuctions(std::span<const BidRecord> raw) {
  const auto groups =
      GroupBy(raw, [](const BidRecord& r) { return r.auction_id; });
  BidDataset ds;
  ds.mode_ = DatasetMode::kCorrelated;
  std::vector<double> normalized(raw.size(), -1.0);
  for (const auto& [id, rows] : groups) {
    if (rows.size() < 2) {
      throw std::invalid_argument("auction " + id + " has fewer than 2 bids");
    }
    double top = 0.0;
    for (std::size_t r : rows) top = std::max(top, raw[r].bid);
    if (top <= 0.0) {
      ds.dropped_.push_back(id);
      ds.warnings_.push_back("auction " + id + " dropped: all bids are zero");
      continue;
    }
    std::vector<double> tuple;
    tuple.reserve(rows.size());
    for (std::size_t r : rows) {
      normalized[r] = raw[r].bid == top ? 1.0 : raw[r].bid / top;
      tuple.push_back(normalized[r]);
    }
    ds.group_ids_.push_back(id);
    ds.groups_.push_back(std::move(tuple));
  }
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (normalized[r] >= 0.0) {
      ds.records_.push_back({raw[r].advertiser_id, raw[r].auction_id,
                             normalized[r]});
    }
  }
  return ds;
}

std::vector<BidRecord> SynthGenerate(const SynthParams& p, std::uint64_t seed) {
  if (p.advertisers <= 0 || p.auctions <= 0) {
    throw std::invalid_argument("advertiser and auction counts must be > 0");
  }
  if (!(p.auction_correlation >= 0.0 && p.auction_correlation <= 1.0)) {
    throw std::invalid_argument("auction correlation must lie in [0, 1]");
  }
  if (p.scale_mean < 0.0 || p.location_spread < 0.0 || p.scale_spread < 0.0) {
    throw std::invalid_argument("spreads and scale must be non-negative");
  }
  Rng rng(seed);
  std::vector<double> loc(p.advertisers);
  std::vector<double> scale(p.advertisers);
  for (int a = 0; a < p.advertisers; ++a) {
    loc[a] = p.location_mean + p.location_spread * StandardNormal(rng);
    scale[a] = p.scale_mean * std::exp(p.scale_spread * StandardNormal(rng));
  }
  const double own = std::sqrt(1.0 - p.auction_correlation);
  const double common = std::sqrt(p.auction_correlation);
  std::vector<BidRecord> out;
  out.reserve(static_cast<std::size_t>(p.advertisers) *
              static_cast<std::size_t>(p.auctions));
  const int adv_width = std::max(2, static_cast<int>(std::to_string(
                                        p.advertisers - 1).size()));
  const int auc_width = std::max(5, static_cast<int>(std::to_string(
                                        p.auctions - 1).size()));
  for (int t = 0; t < p.auctions; ++t) {
    const double z_auction = StandardNormal(rng);
    const std::string auction = "auc" + Pad(t, auc_width);
    for (int a = 0; a < p.advertisers; ++a) {
      const double z = own * StandardNormal(rng) + common * z_auction;
      out.push_back({"adv" + Pad(a, adv_width), auction,
                     std::exp(loc[a] + scale[a] * z)});
    }
  }
  return out;
}

SynthParams SynthParamsFromJson(const nlohmann::json& doc) {
  SynthParams p;
  if (!doc.is_object()) throw std::invalid_argument("synth params not object");
  p.advertisers = doc.value("advertisers", p.advertisers);
  p.auctions = doc.value("auctions", p.auctions);
  p.location_mean = doc.value("location_mean", p.location_mean);
  p.location_spread = doc.value("location_spread", p.location_spread);
  p.scale_mean = doc.value("scale_mean", p.scale_mean);
  p.scale_spread = doc.value("scale_spread", p.scale_spread);
  p.auction_correlation =
      doc.value("auction_correlation", p.auction_correlation);
  return p;
}

nlohmann::json SynthParamsToJson(const SynthParams& p) {
  return {{"advertisers", p.advertisers},
          {"auctions", p.auctions},
          {"location_mean", p.location_mean},
          {"location_spread", p.location_spread},
          {"scale_mean", p.scale_mean},
          {"scale_spread", p.scale_spread},
          {"auction_correlation", p.auction_correlation}};
}

std::vector<double> SampleValuations(const BidDataset& dataset, int bidders,
                                     Rng& rng) {
  if (bidders <= 0) throw std::invalid_argument("bidder count must be > 0");
  std::vector<double> values(bidders);
  if (dataset.mode() == DatasetMode::kIndependent) {
    if (bidders > dataset.group_count()) {
      throw std::invalid_argument(
          "dataset has " + std::to_string(dataset.group_count()) +
          " advertisers; " + std::to_string(bidders) + " bidders requested");
    }
    for (int i = 0; i < bidders; ++i) {
      const std::vector<double>& pool = dataset.group(i);
      values[i] = pool[UniformIndex(rng, pool.size())];
    }
    return values;
  }
  std::vector<int> eligible;
  for (int g = 0; g < dataset.group_count(); ++g) {
    if (static_cast<int>(dataset.group(g).size()) >= bidders) {
      eligible.push_back(g);
    }
  }
  if (eligible.empty()) {
    throw std::invalid_argument("no auction has " + std::to_string(bidders) +
                                " bids");
  }
  const std::vector<double>& tuple =
      dataset.group(eligible[UniformIndex(rng, eligible.size())]);
  std::copy_n(tuple.begin(), bidders, values.begin());
  return values;
}

}  // namespace adtypes
