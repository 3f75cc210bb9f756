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

#include "adtypes/experiments.h"

#include <cmath>
#include <sstream>

#include "adtypes/instance_io.h"
#include "adtypes/parallel.h"
#include "gtest/gtest.h"

namespace adtypes {
namespace {

ExperimentConfig SmallExperiment1() {
  ExperimentConfig c = ExperimentConfig::DeskScale(1);
  c.N_l = 3000;
  c.N_e = 100;
  c.seed = 5;
  return c;
}

ExperimentConfig SmallExperiment23(int experiment) {
  ExperimentConfig c = ExperimentConfig::DeskScale(experiment);
  c.N_s = 3;
  c.N_l = 20;
  c.N_t = 30;
  c.seed = 9;
  c.dataset->synth.auctions = 100;
  return c;
}

TEST(ConfigTest, Presets) {
  const ExperimentConfig one = ExperimentConfig::FullScale(1);
  EXPECT_EQ(one.d, 20);
  EXPECT_EQ(one.V + 1, 11);
  EXPECT_EQ(one.N_l, 500000);
  EXPECT_EQ(one.N_e, 10367);
  EXPECT_TRUE(one.OB);
  EXPECT_FALSE(one.dataset.has_value());
  const ExperimentConfig desk = ExperimentConfig::DeskScale(1);
  EXPECT_EQ(desk.N_l, 50000);
  EXPECT_EQ(desk.N_e, 1037);
  const ExperimentConfig two = ExperimentConfig::FullScale(2);
  EXPECT_EQ(two.M, 9);
  EXPECT_EQ(two.S, 4);
  EXPECT_EQ(two.N_s, 200);
  EXPECT_EQ(two.N_l, 100);
  EXPECT_EQ(two.N_t, 200);
  EXPECT_FALSE(two.OB);
  EXPECT_EQ(two.dataset->mode, DatasetMode::kIndependent);
  EXPECT_EQ(ExperimentConfig::FullScale(3).dataset->mode,
            DatasetMode::kCorrelated);
  EXPECT_EQ(ExperimentConfig::DeskScale(3).N_s, 20);
  EXPECT_THROW(ExperimentConfig::FullScale(4), std::invalid_argument);
}

TEST(ConfigTest, JsonRoundTrip) {
  ExperimentConfig c = ExperimentConfig::FullScale(3);
  c.cce_epsilon = 0.25;
  c.formats = {Format::kOptVcg, Format::kGreedyGsp};
  const nlohmann::json doc = ConfigToJson(c);
  const ExperimentConfig back = ConfigFromJson(doc, ExperimentConfig{});
  EXPECT_EQ(DumpJson(ConfigToJson(back)), DumpJson(doc));
  EXPECT_EQ(doc["eta"], "auto");
}

TEST(ConfigTest, Overrides) {
  const nlohmann::json doc = {
      {"N_l", 77}, {"N_e", 7}, {"eta", 0.5}, {"formats", {"optvcg"}}};
  const ExperimentConfig c =
      ConfigFromJson(doc, ExperimentConfig::DeskScale(1));
  EXPECT_EQ(c.N_l, 77);
  EXPECT_EQ(*c.eta, 0.5);
  ASSERT_EQ(c.formats.size(), 1u);
  EXPECT_EQ(c.formats[0], Format::kOptVcg);
  EXPECT_EQ(c.d, 20);
}

TEST(ConfigTest, Rejects) {
  const ExperimentConfig base = ExperimentConfig::DeskScale(1);
  EXPECT_THROW(ConfigFromJson({{"d", 0}}, base), std::invalid_argument);
  EXPECT_THROW(ConfigFromJson({{"delta", {0.5}}}, base),
               std::invalid_argument);
  EXPECT_THROW(ConfigFromJson({{"delta", {0.5, 1.5}}}, base),
               std::invalid_argument);
  EXPECT_THROW(ConfigFromJson({{"eta", "fast"}}, base),
               std::invalid_argument);
  EXPECT_THROW(ConfigFromJson({{"N_l", "many"}}, base),
               std::invalid_argument);
  EXPECT_THROW(ConfigFromJson({{"formats", {"FirstPrice"}}}, base),
               std::invalid_argument);
  EXPECT_THROW(ConfigFromJson(nlohmann::json::array(), base),
               std::invalid_argument);
}

TEST(ExperimentInstanceTest, GeometricCurves) {
  const ExperimentConfig c = ExperimentConfig::FullScale(2);
  const std::vector<double> values(9, 0.5);
  const AuctionInstance inst = ExperimentInstance(c, values);
  EXPECT_EQ(inst.slot_count(), 4);
  EXPECT_DOUBLE_EQ(inst.discount(8, 3), 0.125);
  EXPECT_DOUBLE_EQ(inst.discount(0, 1), 0.9);
}

TEST(Experiment1Test, RejectsDataset) {
  ExperimentConfig c = SmallExperiment1();
  c.dataset = DatasetSource{};
  EXPECT_THROW(RunExperiment1(c), std::invalid_argument);
  ExperimentConfig wide = SmallExperiment1();
  wide.M = 3;
  wide.delta = {0.3, 0.5, 0.7};
  EXPECT_THROW(RunExperiment1(wide), std::invalid_argument);
}

TEST(Experiment1Test, ZeroValueBidsZeroAndCounterMatches) {
  const ExperimentConfig c = SmallExperiment1();
  const ExperimentReport r = RunExperiment1(c);
  ASSERT_EQ(r.formats.size(), 4u);
  ASSERT_EQ(r.bid_table.size(), 4u * 2u * 11u);
  std::int64_t sampled = 0;
  for (const BidByValueRow& row : r.bid_table) {
    if (row.value == 0.0) EXPECT_EQ(row.mean_bid, 0.0);
    if (row.format == Format::kGreedyGsp) sampled += row.samples;
  }
  EXPECT_EQ(sampled, 2 * (c.N_l - c.N_e));
  for (const FormatSummary& s : r.formats) {
    // 1 + d per drawn representative with a positive value, fewer when a
    // zero-value representative (single-point grid) is drawn.
    EXPECT_LE(s.auction_evaluations,
              static_cast<std::int64_t>(c.N_l) * (c.d * c.M + 1));
    EXPECT_GE(s.auction_evaluations, c.N_l);
    EXPECT_GE(s.empirical_poa, 1.0 - 1e-9);
    EXPECT_EQ(s.samples, c.N_l - c.N_e);
  }
}

TEST(Experiment1Test, Deterministic) {
  const ExperimentConfig c = SmallExperiment1();
  const ExperimentReport a = RunExperiment1(c);
  const ExperimentReport b = RunExperiment1(c);
  EXPECT_EQ(DumpJson(ReportToJson(a)), DumpJson(ReportToJson(b)));
  std::ostringstream ca;
  std::ostringstream cb;
  WriteBidTableCsv(ca, a);
  WriteBidTableCsv(cb, b);
  EXPECT_EQ(ca.str(), cb.str());
}

TEST(Experiment1Test, GreedyGspTracksPredictedLine) {
  ExperimentConfig c = ExperimentConfig::DeskScale(1);
  c.formats = {Format::kGreedyGsp};
  const ExperimentReport r = RunExperiment1(c);
  ASSERT_EQ(r.formats.size(), 1u);
  EXPECT_LE(r.formats[0].max_bid_error, 0.1);
  int interior = 0;
  for (const BidByValueRow& row : r.bid_table) interior += row.interior;
  EXPECT_GT(interior, 5);
  EXPECT_TRUE(r.ok);
}

TEST(Experiment23Test, CounterMatchesCostModel) {
  const ExperimentConfig c = SmallExperiment23(3);
  const BidDataset ds = LoadExperimentDataset(c);
  const ExperimentReport r = RunExperiment23(c, ds);
  EXPECT_EQ(r.experiment, 3);
  // Synthetic bids are strictly positive, so every grid has d + 1 points.
  for (const FormatSummary& s : r.formats) {
    EXPECT_EQ(s.auction_evaluations,
              static_cast<std::int64_t>(c.N_s) * c.N_l * (c.d * c.M + 1));
    EXPECT_EQ(s.samples, static_cast<std::int64_t>(c.N_s) * c.N_t);
    EXPECT_GE(s.empirical_poa, 1.0 - 1e-9);
  }
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.draws.size(), 4u * c.N_s);
}

TEST(Experiment23Test, SameDrawsAcrossFormats) {
  const ExperimentConfig c = SmallExperiment23(2);
  const ExperimentReport r = RunExperiment23(c, LoadExperimentDataset(c));
  EXPECT_EQ(r.experiment, 2);
  for (std::size_t k = 0; k < r.draws.size(); ++k) {
    const DrawRow& row = r.draws[k];
    EXPECT_EQ(row.values, r.draws[row.draw].values);
    EXPECT_EQ(row.optimal_welfare, r.draws[row.draw].optimal_welfare);
    EXPECT_LE(row.mean_welfare, row.optimal_welfare + 1e-9);
  }
}

TEST(Experiment23Test, IdenticalBiddersGiveUnitPoa) {
  std::vector<BidRecord> raw;
  for (int a = 0; a < 5; ++a) {
    for (int i = 0; i < 9; ++i) {
      raw.push_back({"adv" + std::to_string(i), "auc" + std::to_string(a), 3.0});
    }
  }
  const BidDataset ds = NormalizeAuctions(raw);
  ExperimentConfig c = SmallExperiment23(3);
  c.delta.assign(9, 0.7);
  const ExperimentReport r = RunExperiment23(c, ds);
  for (const FormatSummary& s : r.formats) {
    if (s.format == Format::kOptVcg) EXPECT_NEAR(s.empirical_poa, 1.0, 1e-12);
  }
}

TEST(Experiment23Test, DatasetTooSmall) {
  ExperimentConfig c = SmallExperiment23(2);
  c.M = 11;
  c.delta.assign(11, 0.8);
  EXPECT_THROW(RunExperiment23(c, LoadExperimentDataset(c)),
               std::invalid_argument);
}

TEST(Experiment23Test, DeterministicAndThreadIndependent) {
  const ExperimentConfig c = SmallExperiment23(2);
  const BidDataset ds = LoadExperimentDataset(c);
  const std::string a = DumpJson(ReportToJson(RunExperiment23(c, ds)));
  SetParallelism(3);
  const std::string b = DumpJson(ReportToJson(RunExperiment23(c, ds)));
  SetParallelism(0);
  EXPECT_EQ(a, b);
}

TEST(Experiment23Test, CceExtension) {
  ExperimentConfig c = SmallExperiment23(3);
  c.N_s = 1;
  c.cce_epsilon = 0.05;
  const ExperimentReport r = RunExperiment23(c, LoadExperimentDataset(c));
  for (const DrawRow& row : r.draws) {
    EXPECT_GE(row.learning_rounds, c.N_l);
    EXPECT_LE(row.learning_rounds, c.N_l + kMaxCceExtensions * kCceExtension);
    if (row.learning_rounds > c.N_l) {
      EXPECT_EQ((row.learning_rounds - c.N_l) % kCceExtension, 0);
    }
  }
}

TEST(SummarizeTest, SingleReportAndHierarchy) {
  ExperimentReport r;
  r.experiment = 2;
  FormatSummary g;
  g.format = Format::kGreedyGsp;
  g.mean_revenue = 0.5;
  g.median_revenue = 0.5;
  FormatSummary o;
  o.format = Format::kOptGsp;
  o.mean_revenue = 0.4;
  o.median_revenue = 0.4;
  r.formats = {g, o};
  const std::vector<ExperimentReport> reports = {r};
  const Summary s = Summarize(reports);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.rows[0].mean_revenue, s.rows[0].median_revenue);
  ASSERT_EQ(s.hierarchy.size(), 1u);
  EXPECT_TRUE(*s.hierarchy[0]);
  r.formats = {g};
  const std::vector<ExperimentReport> partial = {r};
  EXPECT_FALSE(Summarize(partial).hierarchy[0].has_value());
  EXPECT_THROW(Summarize(std::span<const ExperimentReport>()),
               std::invalid_argument);
}

TEST(SummarizeTest, DuplicateFormatsGiveEqualRows) {
  ExperimentConfig c = SmallExperiment23(2);
  c.formats = {Format::kGreedyVcg, Format::kGreedyVcg};
  const std::vector<ExperimentReport> reports = {
      RunExperiment23(c, LoadExperimentDataset(c))};
  const Summary s = Summarize(reports);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.rows[0].mean_revenue, s.rows[1].mean_revenue);
  EXPECT_EQ(s.rows[0].empirical_poa, s.rows[1].empirical_poa);
  std::ostringstream csv;
  WriteSummaryCsv(csv, s);
  EXPECT_NE(csv.str().find("GreedyVCG"), std::string::npos);
}

TEST(MedianTest, Values) {
  EXPECT_EQ(Median({3.0}), 3.0);
  EXPECT_EQ(Median({4.0, 1.0}), 2.5);
  EXPECT_EQ(Median({5.0, 1.0, 3.0}), 3.0);
  EXPECT_EQ(Median({}), 0.0);
}

}  // namespace
}  // namespace adtypes
