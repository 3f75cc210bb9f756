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

#ifndef ADTYPES_EXPERIMENTS_H_
#define ADTYPES_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "adtypes/analytic.h"
#include "adtypes/datasets.h"
#include "adtypes/model.h"
#include "adtypes/pricing.h"
#include "json.hpp"

namespace adtypes {

inline constexpr int kSchemaVersion = 1;

// Where experiments 2 and 3 get valuations from: a raw bid CSV, or the
// synthetic generator when no path is given.
struct DatasetSource {
  std::string path;
  DatasetMode mode = DatasetMode::kIndependent;
  SynthParams synth;
};

struct ExperimentConfig {
  std::vector<Format> formats{kAllFormats.begin(), kAllFormats.end()};
  int d = 20;
  // Values 0, 1/V, ..., 1 per population (experiment 1 only).
  int V = 10;
  int M = 2;
  int S = 2;
  int N_s = 1;
  int N_l = 50000;
  int N_t = 200;
  int N_e = 0;
  bool OB = false;
  bool value_dependent = true;
  double delta0 = 1.0;
  // One geometric factor per bidder.
  std::vector<double> delta{0.37, 0.85};
  // Unset means sqrt(ln K / T) with T the rounds each learner plays.
  std::optional<double> eta;
  std::uint64_t seed = 0;
  std::optional<DatasetSource> dataset;
  // When set, learning in experiments 2/3 is extended in blocks of
  // kCceExtension rounds (at most kMaxCceExtensions times) until every
  // learner's average regret is at most this value.
  std::optional<double> cce_epsilon;
  std::size_t history_capacity = 1'000'000;
  // Experiment 1 pass threshold on |mean learned bid - predicted bid|.
  double bid_tolerance = 0.1;

  // Experiment presets. `experiment` is 1, 2 or 3.
  static ExperimentConfig FullScale(int experiment);
  // Full-size presets scaled for a desktop run: experiment 1 uses
  // N_l = 50000 and N_e = 1037; experiments 2/3 use N_s = 20.
  static ExperimentConfig DeskScale(int experiment);

  // Throws std::invalid_argument on inconsistent settings.
  void Validate() const;
};

// Experiment 1 preset learning rate. The horizon-optimal rate leaves
// learners too diffuse to resolve the predicted bids within the run length.
inline constexpr double kExperiment1Eta = 0.3;

inline constexpr int kCceExtension = 1000;
inline constexpr int kMaxCceExtensions = 10;

// Reads a config object. Missing keys keep the values of `base`.
ExperimentConfig ConfigFromJson(const nlohmann::json& doc,
                                const ExperimentConfig& base);
nlohmann::json ConfigToJson(const ExperimentConfig& config);

// Curve of bidder i: (delta0, delta0 * f_i, delta0 * f_i^2, ...).
AuctionInstance ExperimentInstance(const ExperimentConfig& config,
                                   std::span<const double> values);

struct FormatSummary {
  Format format = Format::kGreedyGsp;
  double mean_revenue = 0.0;
  double median_revenue = 0.0;
  double mean_welfare = 0.0;
  double median_welfare = 0.0;
  double mean_optimal_welfare = 0.0;
  // Ratio of mean optimal welfare to mean realized welfare.
  double empirical_poa = 0.0;
  // Largest final average regret over learners, per draw.
  std::vector<double> final_regret;
  std::int64_t samples = 0;
  std::int64_t learning_rounds = 0;
  std::int64_t auction_evaluations = 0;
  bool cce_certified = true;
  // Experiment 1: largest and mean |learned - predicted| over interior values.
  double max_bid_error = 0.0;
  double mean_bid_error = 0.0;
  bool ok = true;
};

// Experiment 1: learned versus predicted bid for one representative.
struct BidByValueRow {
  Format format = Format::kGreedyGsp;
  Side side = Side::kA;
  double value = 0.0;
  double mean_bid = 0.0;
  double predicted_bid = 0.0;
  std::int64_t samples = 0;
  // 0 < v < 1 and the predicted bid lies below the certain-win bid.
  bool interior = false;
};

// Experiments 2/3: one valuation draw under one format.
struct DrawRow {
  Format format = Format::kGreedyGsp;
  int draw = 0;
  std::vector<double> values;
  double mean_revenue = 0.0;
  double mean_welfare = 0.0;
  double optimal_welfare = 0.0;
  double max_regret = 0.0;
  std::int64_t learning_rounds = 0;
};

struct ExperimentReport {
  int experiment = 0;
  ExperimentConfig config;
  std::vector<FormatSummary> formats;
  std::vector<BidByValueRow> bid_table;
  std::vector<DrawRow> draws;
  std::vector<std::string> warnings;
  // Every per-format check passed.
  bool ok = true;
};

// Population game with per-valuation learners; needs M = S = 2.
ExperimentReport RunExperiment1(const ExperimentConfig& config);

// Fresh learners per valuation draw, then N_t samples from the average
// empirical distribution of play.
ExperimentReport RunExperiment23(const ExperimentConfig& config,
                                 const BidDataset& dataset);

// Loads or generates the dataset named by config.dataset and normalizes it
// per its mode.
BidDataset LoadExperimentDataset(const ExperimentConfig& config);

nlohmann::json ReportToJson(const ExperimentReport& report);
void WriteBidTableCsv(std::ostream& out, const ExperimentReport& report);
void WriteDrawsCsv(std::ostream& out, const ExperimentReport& report);

struct SummaryRow {
  int experiment = 0;
  Format format = Format::kGreedyGsp;
  double mean_revenue = 0.0;
  double median_revenue = 0.0;
  double mean_welfare = 0.0;
  double median_welfare = 0.0;
  double empirical_poa = 0.0;
  std::int64_t samples = 0;
};

struct Summary {
  std::vector<SummaryRow> rows;
  // Per report: GreedyGSP mean revenue >= OptGSP mean revenue, when both ran.
  std::vector<std::optional<bool>> hierarchy;
};

Summary Summarize(std::span<const ExperimentReport> reports);
nlohmann::json SummaryToJson(const Summary& summary);
void WriteSummaryCsv(std::ostream& out, const Summary& summary);

double Median(std::vector<double> xs);

}  // namespace adtypes

#endif  // ADTYPES_EXPERIMENTS_H_
