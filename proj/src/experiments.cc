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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "adtypes/allocation.h"
#include "adtypes/engine.h"
#include "adtypes/instance_io.h"
#include "adtypes/learning.h"
#include "adtypes/parallel.h"
#include "adtypes/random.h"

namespace adtypes {
namespace {

// Seed stream tags.
constexpr std::uint64_t kDatasetStream = 1;
constexpr std::uint64_t kValueStream = 2;
constexpr std::uint64_t kPlayStream = 3;
constexpr std::uint64_t kHistoryStream = 4;

int FormatIndex(Format f) {
  for (std::size_t k = 0; k < kAllFormats.size(); ++k) {
    if (kAllFormats[k] == f) return static_cast<int>(k);
  }
  throw std::logic_error("unknown format");
}

std::uint64_t StreamSeed(std::uint64_t master, std::uint64_t tag,
                         std::uint64_t a, std::uint64_t b = 0) {
  return DeriveSeed(DeriveSeed(DeriveSeed(master, tag), a), b);
}

double Mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double total = 0.0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

struct RoundFeedback {
  AuctionOutcome outcome;
  std::int64_t evaluations = 0;
};

// Runs the auction on `bids`, then fills utilities[i][k] with bidder i's raw
// utility had it bid grid point k instead, all others fixed.
RoundFeedback PlayRound(const AuctionInstance& instance, Format format,
                        std::vector<double>& bids, std::span<const int> arms,
                        std::span<const BidGrid* const> grids,
                        std::vector<std::vector<double>>& utilities) {
  RoundFeedback fb;
  fb.outcome = RunAuction(instance, bids, format);
  fb.evaluations = 1;
  const int n = instance.bidder_count();
  for (int i = 0; i < n; ++i) {
    const BidGrid& grid = *grids[i];
    std::vector<double>& u = utilities[i];
    u.resize(grid.size());
    const int slot = fb.outcome.assignment.slot_of[i];
    const double realized = instance.discount(i, slot) * instance.value(i) -
                            fb.outcome.expected_payment[i];
    for (int k = 0; k < grid.size(); ++k) {
      if (k == arms[i]) {
        u[k] = realized;
        continue;
      }
      u[k] = CounterfactualUtility(instance, bids, i, grid[k], format);
      ++fb.evaluations;
    }
  }
  return fb;
}

void Normalize(const UtilityScale& scale, std::vector<double>& u) {
  for (double& x : u) x = scale.Normalize(x);
}

std::vector<double> Uniform(int arms) {
  return std::vector<double>(arms, 1.0 / arms);
}

}  // namespace

ExperimentConfig ExperimentConfig::FullScale(int experiment) {
  ExperimentConfig c;
  c.d = 20;
  c.delta0 = 1.0;
  c.value_dependent = true;
  switch (experiment) {
    case 1:
      c.V = 10;
      c.M = 2;
      c.S = 2;
      c.N_s = 1;
      c.N_l = 500000;
      c.N_t = 1;
      c.N_e = 10367;
      c.OB = true;
      c.delta = {0.37, 0.85};
      c.eta = kExperiment1Eta;
      return c;
    case 2:
    case 3:
      c.M = 9;
      c.S = 4;
      c.N_s = 200;
      c.N_l = 100;
      c.N_t = 200;
      c.N_e = 0;
      c.OB = false;
      c.delta = {0.9, 0.9, 0.8, 0.8, 0.7, 0.7, 0.6, 0.6, 0.5};
      c.dataset = DatasetSource{};
      c.dataset->mode = experiment == 2 ? DatasetMode::kIndependent
                                        : DatasetMode::kCorrelated;
      return c;
    default:
      throw std::invalid_argument("experiment must be 1, 2 or 3");
  }
}

ExperimentConfig ExperimentConfig::DeskScale(int experiment) {
  ExperimentConfig c = FullScale(experiment);
  if (experiment == 1) {
    c.N_l = 50000;
    c.N_e = 1037;
  } else {
    c.N_s = 20;
  }
  return c;
}

void ExperimentConfig::Validate() const {
  if (formats.empty()) throw std::invalid_argument("no formats");
  if (d < 1 || V < 1 || M < 1 || S < 1 || N_s < 1 || N_l < 1 || N_t < 1) {
    throw std::invalid_argument("d, V, M, S, N_s, N_l and N_t must be >= 1");
  }
  if (N_e < 0 || N_e > N_l) {
    throw std::invalid_argument("N_e must lie in [0, N_l]");
  }
  if (static_cast<int>(delta.size()) != M) {
    throw std::invalid_argument("delta needs one factor per bidder");
  }
  for (double f : delta) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw std::invalid_argument("discount factors must lie in (0, 1]");
    }
  }
  if (!(delta0 > 0.0 && delta0 <= 1.0)) {
    throw std::invalid_argument("delta0 must lie in (0, 1]");
  }
  if (eta && !(*eta > 0.0 && std::isfinite(*eta))) {
    throw std::invalid_argument("eta must be positive");
  }
  if (cce_epsilon && !(*cce_epsilon > 0.0)) {
    throw std::invalid_argument("cce_epsilon must be positive");
  }
  if (history_capacity < 1) {
    throw std::invalid_argument("history_capacity must be >= 1");
  }
  if (!(bid_tolerance >= 0.0)) {
    throw std::invalid_argument("bid_tolerance must be >= 0");
  }
}

ExperimentConfig ConfigFromJson(const nlohmann::json& doc,
                                const ExperimentConfig& base) {
  if (!doc.is_object()) throw std::invalid_argument("config must be object");
  ExperimentConfig c = base;
  try {
    if (doc.contains("formats")) {
      c.formats.clear();
      for (const auto& f : doc.at("formats")) {
        c.formats.push_back(ParseFormat(f.get<std::string>()));
      }
    }
    c.d = doc.value("d", c.d);
    c.V = doc.value("V", c.V);
    c.M = doc.value("M", c.M);
    c.S = doc.value("S", c.S);
    c.N_s = doc.value("N_s", c.N_s);
    c.N_l = doc.value("N_l", c.N_l);
    c.N_t = doc.value("N_t", c.N_t);
    c.N_e = doc.value("N_e", c.N_e);
    c.OB = doc.value("OB", c.OB);
    c.value_dependent = doc.value("value_dependent", c.value_dependent);
    c.delta0 = doc.value("delta0", c.delta0);
    if (doc.contains("delta")) {
      c.delta = doc.at("delta").get<std::vector<double>>();
    }
    if (doc.contains("eta")) {
      const auto& e = doc.at("eta");
      if (e.is_string() && e.get<std::string>() == "auto") {
        c.eta.reset();
      } else if (e.is_number()) {
        c.eta = e.get<double>();
      } else {
        throw std::invalid_argument("eta must be \"auto\" or a number");
      }
    }
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("dataset")) {
      const auto& ds = doc.at("dataset");
      if (ds.is_null()) {
        c.dataset.reset();
      } else {
        DatasetSource src = c.dataset.value_or(DatasetSource{});
        src.path = ds.value("path", src.path);
        if (ds.contains("mode")) {
          src.mode = ParseDatasetMode(ds.at("mode").get<std::string>());
        }
        if (ds.contains("synth")) {
          src.synth = SynthParamsFromJson(ds.at("synth"));
        }
        c.dataset = src;
      }
    }
    if (doc.contains("cce_epsilon")) {
      const auto& e = doc.at("cce_epsilon");
      if (e.is_null()) {
        c.cce_epsilon.reset();
      } else {
        c.cce_epsilon = e.get<double>();
      }
    }
    c.history_capacity = doc.value("history_capacity", c.history_capacity);
    c.bid_tolerance = doc.value("bid_tolerance", c.bid_tolerance);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  c.Validate();
  return c;
}

nlohmann::json ConfigToJson(const ExperimentConfig& c) {
  nlohmann::json doc;
  std::vector<std::string> names;
  for (Format f : c.formats) names.emplace_back(FormatName(f));
  doc["formats"] = names;
  doc["d"] = c.d;
  doc["V"] = c.V;
  doc["M"] = c.M;
  doc["S"] = c.S;
  doc["N_s"] = c.N_s;
  doc["N_l"] = c.N_l;
  doc["N_t"] = c.N_t;
  doc["N_e"] = c.N_e;
  doc["OB"] = c.OB;
  doc["value_dependent"] = c.value_dependent;
  doc["delta0"] = c.delta0;
  doc["delta"] = c.delta;
  doc["eta"] = c.eta ? nlohmann::json(*c.eta) : nlohmann::json("auto");
  doc["seed"] = c.seed;
  if (c.dataset) {
    doc["dataset"] = {{"path", c.dataset->path},
                      {"mode", DatasetModeName(c.dataset->mode)},
                      {"synth", SynthParamsToJson(c.dataset->synth)}};
  } else {
    doc["dataset"] = nullptr;
  }
  doc["cce_epsilon"] =
      c.cce_epsilon ? nlohmann::json(*c.cce_epsilon) : nlohmann::json();
  doc["history_capacity"] = c.history_capacity;
  doc["bid_tolerance"] = c.bid_tolerance;
  return doc;
}

AuctionInstance ExperimentInstance(const ExperimentConfig& config,
                                   std::span<const double> values) {
  if (static_cast<int>(values.size()) != config.M) {
    throw std::invalid_argument("need one value per bidder");
  }
  std::vector<Bidder> bidders;
  std::map<std::string, DiscountCurve> curves;
  for (int i = 0; i < config.M; ++i) {
    const std::string type = "b" + std::to_string(i);
    bidders.push_back({i, type, values[i]});
    curves.emplace(type, DiscountCurve::Geometric(config.delta0,
                                                  config.delta[i], config.S));
  }
  return AuctionInstance(std::move(bidders), std::move(curves), config.S);
}

ExperimentReport RunExperiment1(const ExperimentConfig& config) {
  config.Validate();
  if (config.dataset) {
    throw std::invalid_argument("experiment 1 is synthetic; remove dataset");
  }
  if (config.M != 2 || config.S != 2) {
    throw std::invalid_argument("experiment 1 needs M = 2 and S = 2");
  }
  if (config.delta0 != 1.0 || !(config.delta[0] <= config.delta[1]) ||
      !(config.delta[1] < 1.0)) {
    throw std::invalid_argument(
        "experiment 1 needs delta0 = 1 and delta[0] <= delta[1] < 1");
  }
  const TwoByTwoSetting setting(config.delta[0], config.delta[1]);
  const int reps = config.V + 1;
  std::vector<double> levels(reps);
  for (int j = 0; j < reps; ++j) {
    levels[j] = static_cast<double>(j) / config.V;
  }
  const std::vector<double> zero(2, 0.0);
  const AuctionInstance base = ExperimentInstance(config, zero);
  const std::int64_t per_learner =
      std::max<std::int64_t>(1, config.N_l / reps);
  const double eta =
      config.eta.value_or(OptimalLearningRate(config.d + 1, per_learner));

  ExperimentReport report;
  report.experiment = 1;
  report.config = config;
  report.formats.resize(config.formats.size());
  std::vector<std::vector<BidByValueRow>> tables(config.formats.size());
  std::vector<std::vector<double>> revenue_series(config.formats.size());
  std::vector<std::vector<double>> welfare_series(config.formats.size());

  ParallelFor(static_cast<int>(config.formats.size()), [&](int fi) {
    const Format format = config.formats[fi];
    const int findex = FormatIndex(format);
    Rng rng(StreamSeed(config.seed, kPlayStream, findex));
    std::array<std::vector<BidGrid>, 2> grids;
    std::array<std::vector<UtilityScale>, 2> scales;
    std::array<std::vector<LearnerState>, 2> learners;
    std::array<std::vector<double>, 2> bid_sums;
    std::array<std::vector<std::int64_t>, 2> bid_counts;
    for (int side = 0; side < 2; ++side) {
      for (int j = 0; j < reps; ++j) {
        const BidGrid g = BidGrid::ForBidder(levels[j], config.d,
                                             config.value_dependent, config.OB);
        scales[side].push_back(
            UtilityScale::ForBidder(levels[j], config.delta0, g.cap()));
        learners[side].emplace_back(
            g.size(), eta, config.history_capacity,
            StreamSeed(config.seed, kHistoryStream, findex, side * reps + j));
        grids[side].push_back(g);
      }
      bid_sums[side].assign(reps, 0.0);
      bid_counts[side].assign(reps, 0);
    }

    FormatSummary& summary = report.formats[fi];
    summary.format = format;
    std::vector<double>& revenues = revenue_series[fi];
    std::vector<double>& welfares = welfare_series[fi];
    double optimal_total = 0.0;
    std::vector<std::vector<double>> utilities(2);
    std::vector<double> bids(2);
    std::vector<double> values(2);
    std::array<int, 2> arms{};
    std::array<int, 2> picked{};
    std::array<std::vector<double>, 2> played;
    for (int t = 0; t < config.N_l; ++t) {
      const bool exploring = t < config.N_e;
      for (int side = 0; side < 2; ++side) {
        const int j = static_cast<int>(UniformIndex(rng, reps));
        picked[side] = j;
        const LearnerState& l = learners[side][j];
        if (exploring) {
          played[side] = Uniform(l.arms());
          arms[side] = static_cast<int>(UniformIndex(rng, l.arms()));
        } else {
          played[side] = l.weights();
          arms[side] = SampleArm(l.weights(), rng);
        }
        values[side] = levels[j];
        bids[side] = grids[side][j][arms[side]];
      }
      const AuctionInstance inst = base.WithValues(values);
      const std::array<const BidGrid*, 2> g = {&grids[0][picked[0]],
                                               &grids[1][picked[1]]};
      const RoundFeedback fb =
          PlayRound(inst, format, bids, arms, g, utilities);
      summary.auction_evaluations += fb.evaluations;
      for (int side = 0; side < 2; ++side) {
        Normalize(scales[side][picked[side]], utilities[side]);
        learners[side][picked[side]].Update(utilities[side], played[side]);
      }
      if (!exploring) {
        for (int side = 0; side < 2; ++side) {
          bid_sums[side][picked[side]] += bids[side];
          ++bid_counts[side][picked[side]];
        }
        revenues.push_back(fb.outcome.revenue);
        welfares.push_back(fb.outcome.true_welfare);
        optimal_total += OptimalWelfare(inst);
      }
    }
    summary.learning_rounds = config.N_l;
    summary.samples = static_cast<std::int64_t>(revenues.size());
    summary.mean_revenue = Mean(revenues);
    summary.mean_welfare = Mean(welfares);
    summary.median_revenue = Median(revenues);
    summary.median_welfare = Median(welfares);
    summary.mean_optimal_welfare =
        revenues.empty() ? 0.0 : optimal_total / revenues.size();
    summary.empirical_poa = summary.mean_welfare > 0.0
                                ? summary.mean_optimal_welfare /
                                      summary.mean_welfare
                                : 0.0;
    double worst_regret = 0.0;
    for (int side = 0; side < 2; ++side) {
      for (const LearnerState& l : learners[side]) {
        if (l.rounds() > 0) worst_regret = std::max(worst_regret, AverageRegret(l));
      }
    }
    summary.final_regret = {worst_regret};

    const EquilibriumStrategy eq = EquilibriumStrategyFor(setting, format);
    double error_total = 0.0;
    int interior = 0;
    for (int side = 0; side < 2; ++side) {
      const Side s = side == 0 ? Side::kA : Side::kB;
      const double opp = eq.slope(side == 0 ? Side::kB : Side::kA);
      const double cap = CapBid(setting, format, s, opp);
      for (int j = 0; j < reps; ++j) {
        BidByValueRow row;
        row.format = format;
        row.side = s;
        row.value = levels[j];
        row.samples = bid_counts[side][j];
        row.mean_bid =
            row.samples > 0 ? bid_sums[side][j] / row.samples : 0.0;
        row.predicted_bid = eq.slope(s) * levels[j];
        row.interior = levels[j] > 0.0 && levels[j] < 1.0 &&
                       row.predicted_bid < cap && row.samples > 0;
        if (row.interior) {
          const double err = std::abs(row.mean_bid - row.predicted_bid);
          summary.max_bid_error = std::max(summary.max_bid_error, err);
          error_total += err;
          ++interior;
        }
        tables[fi].push_back(row);
      }
    }
    summary.mean_bid_error = interior > 0 ? error_total / interior : 0.0;
    summary.ok = summary.max_bid_error <= config.bid_tolerance;
  });

  for (std::size_t fi = 0; fi < config.formats.size(); ++fi) {
    report.bid_table.insert(report.bid_table.end(), tables[fi].begin(),
                            tables[fi].end());
    report.ok = report.ok && report.formats[fi].ok;
  }
  return report;
}

BidDataset LoadExperimentDataset(const ExperimentConfig& config) {
  if (!config.dataset) throw std::invalid_argument("config has no dataset");
  const DatasetSource& src = *config.dataset;
  const std::vector<BidRecord> raw =
      src.path.empty()
          ? SynthGenerate(src.synth, StreamSeed(config.seed, kDatasetStream, 0))
          : ReadBidCsvFile(src.path);
  return src.mode == DatasetMode::kIndependent ? NormalizeAdvertisers(raw)
                                               : NormalizeAuctions(raw);
}

ExperimentReport RunExperiment23(const ExperimentConfig& config,
                                 const BidDataset& dataset) {
  config.Validate();
  ExperimentReport report;
  report.experiment = dataset.mode() == DatasetMode::kIndependent ? 2 : 3;
  report.config = config;

  // Valuations depend only on the draw index, so every format sees the same
  // draws.
  std::vector<std::vector<double>> draw_values(config.N_s);
  for (int s = 0; s < config.N_s; ++s) {
    Rng rng(StreamSeed(config.seed, kValueStream, s));
    draw_values[s] = SampleValuations(dataset, config.M, rng);
  }
  const double default_eta = OptimalLearningRate(config.d + 1, config.N_l);
  const double eta = config.eta.value_or(default_eta);

  const int nf = static_cast<int>(config.formats.size());
  struct Cell {
    DrawRow row;
    std::vector<double> revenue;
    std::vector<double> welfare;
    std::int64_t evaluations = 0;
    bool certified = true;
    bool welfare_ok = true;
  };
  std::vector<Cell> cells(static_cast<std::size_t>(nf) * config.N_s);

  ParallelFor(static_cast<int>(cells.size()), [&](int c) {
    const int fi = c / config.N_s;
    const int s = c % config.N_s;
    const Format format = config.formats[fi];
    const int findex = FormatIndex(format);
    const std::vector<double>& values = draw_values[s];
    const AuctionInstance inst = ExperimentInstance(config, values);
    const double opt =
        Welfare(inst, AllocateBruteForce(inst, values), values);

    const int n = config.M;
    std::vector<BidGrid> grids;
    std::vector<UtilityScale> scales;
    std::vector<LearnerState> learners;
    const std::uint64_t history_seed =
        StreamSeed(config.seed, kHistoryStream, findex, s);
    for (int i = 0; i < n; ++i) {
      grids.push_back(BidGrid::ForBidder(values[i], config.d,
                                         config.value_dependent, config.OB));
      scales.push_back(UtilityScale::ForBidder(
          values[i], inst.discount(i, 0), grids.back().cap()));
      learners.emplace_back(grids.back().size(), eta, config.history_capacity,
                            history_seed);
    }
    std::vector<const BidGrid*> grid_ptrs;
    for (const BidGrid& g : grids) grid_ptrs.push_back(&g);

    Cell& cell = cells[c];
    Rng rng(StreamSeed(config.seed, kPlayStream, findex, s));
    std::vector<std::vector<double>> utilities(n);
    std::vector<double> bids(n);
    std::vector<int> arms(n);
    std::vector<std::vector<double>> played(n);
    std::int64_t rounds = 0;
    auto learn = [&](int count) {
      for (int t = 0; t < count; ++t, ++rounds) {
        const bool exploring = rounds < config.N_e;
        for (int i = 0; i < n; ++i) {
          const LearnerState& l = learners[i];
          if (exploring) {
            played[i] = Uniform(l.arms());
            arms[i] = static_cast<int>(UniformIndex(rng, l.arms()));
          } else {
            played[i] = l.weights();
            arms[i] = SampleArm(l.weights(), rng);
          }
          bids[i] = grids[i][arms[i]];
        }
        const RoundFeedback fb =
            PlayRound(inst, format, bids, arms, grid_ptrs, utilities);
        cell.evaluations += fb.evaluations;
        for (int i = 0; i < n; ++i) {
          Normalize(scales[i], utilities[i]);
          learners[i].Update(utilities[i], played[i]);
        }
      }
    };
    learn(config.N_l);
    std::vector<const LearnerState*> ptrs;
    for (const LearnerState& l : learners) ptrs.push_back(&l);
    if (config.cce_epsilon) {
      int extensions = 0;
      while (!CertifyCce(ptrs, *config.cce_epsilon) &&
             extensions < kMaxCceExtensions) {
        learn(kCceExtension);
        ++extensions;
      }
      cell.certified = CertifyCce(ptrs, *config.cce_epsilon);
    }

    const AverageEmpiricalDistribution dist(ptrs, grids);
    cell.revenue.reserve(config.N_t);
    cell.welfare.reserve(config.N_t);
    for (int k = 0; k < config.N_t; ++k) {
      const BidProfile sample = dist.Sample(rng);
      const AuctionOutcome o = RunAuction(inst, sample, format);
      if (o.true_welfare > opt + kTolerance) cell.welfare_ok = false;
      cell.revenue.push_back(o.revenue);
      cell.welfare.push_back(o.true_welfare);
    }
    cell.row.format = format;
    cell.row.draw = s;
    cell.row.values = values;
    cell.row.mean_revenue = Mean(cell.revenue);
    cell.row.mean_welfare = Mean(cell.welfare);
    cell.row.optimal_welfare = opt;
    cell.row.max_regret = MaxAverageRegret(ptrs);
    cell.row.learning_rounds = rounds;
  });

  for (int fi = 0; fi < nf; ++fi) {
    FormatSummary summary;
    summary.format = config.formats[fi];
    std::vector<double> draw_revenue;
    std::vector<double> draw_welfare;
    double opt_total = 0.0;
    bool welfare_ok = true;
    for (int s = 0; s < config.N_s; ++s) {
      const Cell& cell = cells[static_cast<std::size_t>(fi) * config.N_s + s];
      report.draws.push_back(cell.row);
      draw_revenue.push_back(cell.row.mean_revenue);
      draw_welfare.push_back(cell.row.mean_welfare);
      opt_total += cell.row.optimal_welfare;
      summary.final_regret.push_back(cell.row.max_regret);
      summary.samples += static_cast<std::int64_t>(cell.revenue.size());
      summary.learning_rounds += cell.row.learning_rounds;
      summary.auction_evaluations += cell.evaluations;
      summary.cce_certified = summary.cce_certified && cell.certified;
      welfare_ok = welfare_ok && cell.welfare_ok;
    }
    // Every draw has N_t samples, so the mean of per-draw means is the mean
    // over all samples.
    summary.mean_revenue = Mean(draw_revenue);
    summary.mean_welfare = Mean(draw_welfare);
    summary.median_revenue = Median(draw_revenue);
    summary.median_welfare = Median(draw_welfare);
    summary.mean_optimal_welfare = opt_total / config.N_s;
    summary.empirical_poa =
        summary.mean_welfare > 0.0
            ? summary.mean_optimal_welfare / summary.mean_welfare
            : 0.0;
    if (!welfare_ok) {
      report.warnings.push_back(std::string(FormatName(summary.format)) +
                                ": realized welfare exceeded the optimum");
    }
    if (config.cce_epsilon && !summary.cce_certified) {
      report.warnings.push_back(std::string(FormatName(summary.format)) +
                                ": regret bound not reached");
    }
    summary.ok = welfare_ok && summary.mean_welfare > 0.0 &&
                 summary.empirical_poa >= 1.0 - 1e-9 && summary.cce_certified;
    report.ok = report.ok && summary.ok;
    report.formats.push_back(std::move(summary));
  }
  return report;
}

double Median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  const std::size_t mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
  const double upper = xs[mid];
  if (xs.size() % 2 == 1) return upper;
  const double lower = *std::max_element(xs.begin(), xs.begin() + mid);
  return 0.5 * (lower + upper);
}

nlohmann::json ReportToJson(const ExperimentReport& report) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["experiment"] = report.experiment;
  doc["seed"] = report.config.seed;
  doc["config"] = ConfigToJson(report.config);
  doc["ok"] = report.ok;
  nlohmann::json formats = nlohmann::json::array();
  for (const FormatSummary& s : report.formats) {
    nlohmann::json f = {{"format", FormatName(s.format)},
                        {"mean_revenue", s.mean_revenue},
                        {"median_revenue", s.median_revenue},
                        {"mean_welfare", s.mean_welfare},
                        {"median_welfare", s.median_welfare},
                        {"mean_optimal_welfare", s.mean_optimal_welfare},
                        {"empirical_poa", s.empirical_poa},
                        {"final_regret", s.final_regret},
                        {"samples", s.samples},
                        {"learning_rounds", s.learning_rounds},
                        {"auction_evaluations", s.auction_evaluations},
                        {"cce_certified", s.cce_certified},
                        {"ok", s.ok}};
    if (report.experiment == 1) {
      f["max_bid_error"] = s.max_bid_error;
      f["mean_bid_error"] = s.mean_bid_error;
    }
    formats.push_back(std::move(f));
  }
  doc["formats"] = std::move(formats);
  doc["warnings"] = report.warnings;
  return doc;
}

void WriteBidTableCsv(std::ostream& out, const ExperimentReport& report) {
  out << "format,population,value,mean_bid,predicted_bid,samples,interior\n";
  for (const BidByValueRow& r : report.bid_table) {
    out << FormatName(r.format) << ',' << (r.side == Side::kA ? 'A' : 'B')
        << ',' << FormatDouble(r.value) << ',' << FormatDouble(r.mean_bid)
        << ',' << FormatDouble(r.predicted_bid) << ',' << r.samples << ','
        << (r.interior ? 1 : 0) << '\n';
  }
}

void WriteDrawsCsv(std::ostream& out, const ExperimentReport& report) {
  out << "format,draw,mean_revenue,mean_welfare,optimal_welfare,max_regret,"
         "learning_rounds,values\n";
  for (const DrawRow& r : report.draws) {
    out << FormatName(r.format) << ',' << r.draw << ','
        << FormatDouble(r.mean_revenue) << ',' << FormatDouble(r.mean_welfare)
        << ',' << FormatDouble(r.optimal_welfare) << ','
        << FormatDouble(r.max_regret) << ',' << r.learning_rounds << ',';
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      out << (i ? ";" : "") << FormatDouble(r.values[i]);
    }
    out << '\n';
  }
}

Summary Summarize(std::span<const ExperimentReport> reports) {
  if (reports.empty()) throw std::invalid_argument("no reports");
  Summary out;
  for (const ExperimentReport& r : reports) {
    const FormatSummary* greedy_gsp = nullptr;
    const FormatSummary* opt_gsp = nullptr;
    for (const FormatSummary& s : r.formats) {
      out.rows.push_back({r.experiment, s.format, s.mean_revenue,
                          s.median_revenue, s.mean_welfare, s.median_welfare,
                          s.empirical_poa, s.samples});
      if (s.format == Format::kGreedyGsp) greedy_gsp = &s;
      if (s.format == Format::kOptGsp) opt_gsp = &s;
    }
    if (greedy_gsp && opt_gsp) {
      out.hierarchy.push_back(greedy_gsp->mean_revenue >=
                              opt_gsp->mean_revenue);
    } else {
      out.hierarchy.push_back(std::nullopt);
    }
  }
  return out;
}

nlohmann::json SummaryToJson(const Summary& summary) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SummaryRow& r : summary.rows) {
    rows.push_back({{"experiment", r.experiment},
                    {"format", FormatName(r.format)},
                    {"mean_revenue", r.mean_revenue},
                    {"median_revenue", r.median_revenue},
                    {"mean_welfare", r.mean_welfare},
                    {"median_welfare", r.median_welfare},
                    {"empirical_poa", r.empirical_poa},
                    {"samples", r.samples}});
  }
  nlohmann::json hierarchy = nlohmann::json::array();
  for (const auto& h : summary.hierarchy) {
    hierarchy.push_back(h ? nlohmann::json(*h) : nlohmann::json());
  }
  return {{"schema_version", kSchemaVersion},
          {"rows", std::move(rows)},
          {"revenue_hierarchy", std::move(hierarchy)}};
}

void WriteSummaryCsv(std::ostream& out, const Summary& summary) {
  out << "experiment,format,mean_revenue,median_revenue,mean_welfare,"
         "median_welfare,empirical_poa,samples\n";
  for (const SummaryRow& r : summary.rows) {
    out << r.experiment << ',' << FormatName(r.format) << ','
        << FormatDouble(r.mean_revenue) << ','
        << FormatDouble(r.median_revenue) << ','
        << FormatDouble(r.mean_welfare) << ','
        << FormatDouble(r.median_welfare) << ','
        << FormatDouble(r.empirical_poa) << ',' << r.samples << '\n';
  }
}

}  // namespace adtypes
