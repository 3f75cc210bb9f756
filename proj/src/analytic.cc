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

#include "adtypes/analytic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "adtypes/engine.h"
#include "adtypes/parallel.h"
#include "adtypes/random.h"

namespace adtypes {
namespace {

constexpr int kMcShards = 64;

// (1 - dA) D^2 / 6 + (1 - dB)(3 - 2D) / 6
double RevenueGspFamily(double da, double db, double r) {
  return (1.0 - da) * r * r / 6.0 + (1.0 - db) * (3.0 - 2.0 * r) / 6.0;
}

// (1 - dA) D^3 / 6 + (1 - dB) D (3 - 2 D^2) / 6
double RevenueVcgFamily(double da, double db, double r) {
  return (1.0 - da) * r * r * r / 6.0 +
         (1.0 - db) * r * (3.0 - 2.0 * r * r) / 6.0;
}

struct Welford {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void Add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void Merge(const Welford& o) {
    if (o.n == 0) return;
    const std::int64_t total = n + o.n;
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                     static_cast<double>(total);
    n = total;
  }
};

// Probability that side X takes the top slot and the coefficient k such that
// its expected top-slot payment is k * c * q^2 / 2.
struct WinTerms {
  double q = 0.0;
  double k = 0.0;
};

WinTerms Terms(const TwoByTwoSetting& setting, Format format, Side side,
               double c, double bid) {
  const double dx = side == Side::kA ? setting.delta_a() : setting.delta_b();
  const double dy = side == Side::kA ? setting.delta_b() : setting.delta_a();
  const bool optimal = AllocationOf(format) == AllocationRule::kOptimal;
  // Opponent value below which X wins: X's weight gap vs. the opponent's.
  const double own_gap = optimal ? (1.0 - dx) : 1.0;
  const double other_gap = optimal ? (1.0 - dy) : 1.0;
  WinTerms t;
  if (c * other_gap <= 0.0) {
    t.q = (bid * own_gap > 0.0 || side == Side::kA) ? 1.0 : 0.0;
  } else {
    t.q = std::min(1.0, bid * own_gap / (c * other_gap));
  }
  switch (format) {
    case Format::kGreedyGsp:
      t.k = 1.0;
      break;
    case Format::kGreedyVcg:
    case Format::kOptVcg:
      t.k = 1.0 - dy;
      break;
    case Format::kOptGsp:
      t.k = (1.0 - dy) / (1.0 - dx);
      break;
  }
  return t;
}

}  // namespace

TwoByTwoSetting::TwoByTwoSetting(double delta_a, double delta_b)
    : delta_a_(delta_a), delta_b_(delta_b) {
  if (!(delta_a >= 0.0) || !(delta_a <= delta_b) || !(delta_b < 1.0)) {
    throw std::domain_error("need 0 <= delta_a <= delta_b < 1");
  }
  ratio_ = (1.0 - delta_b) / (1.0 - delta_a);
}

AuctionInstance TwoByTwoSetting::Instance(double value_a,
                                          double value_b) const {
  return AuctionInstance({{0, "A", value_a}, {1, "B", value_b}},
                         {{"A", DiscountCurve({1.0, delta_a_})},
                          {"B", DiscountCurve({1.0, delta_b_})}},
                         2);
}

EquilibriumStrategy EquilibriumStrategyFor(const TwoByTwoSetting& setting,
                                           Format format) {
  switch (format) {
    case Format::kGreedyGsp:
    case Format::kOptGsp:
      return {1.0 - setting.delta_a(), 1.0 - setting.delta_b()};
    case Format::kGreedyVcg:
      return {1.0 / setting.ratio(), setting.ratio()};
    case Format::kOptVcg:
      return {1.0, 1.0};
  }
  return {};
}

double EquilibriumRevenue(const TwoByTwoSetting& setting, Format format) {
  const double da = setting.delta_a();
  const double db = setting.delta_b();
  const double r = setting.ratio();
  switch (format) {
    case Format::kGreedyGsp:
    case Format::kOptVcg:
      return RevenueGspFamily(da, db, r);
    case Format::kOptGsp:
    case Format::kGreedyVcg:
      return RevenueVcgFamily(da, db, r);
  }
  return 0.0;
}

McEstimate RevenueOracleMc(const TwoByTwoSetting& setting, Format format,
                           const EquilibriumStrategy& strategy,
                           std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sample_count must be >= 1");
  const AuctionInstance instance = setting.Instance(0.0, 0.0);
  std::vector<Welford> shards(kMcShards);
  ParallelFor(kMcShards, [&](int k) {
    const std::int64_t count =
        samples / kMcShards + (k < samples % kMcShards ? 1 : 0);
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(k)));
    Welford acc;
    double bids[2];
    for (std::int64_t s = 0; s < count; ++s) {
      const double va = Uniform01(rng);
      const double vb = Uniform01(rng);
      bids[0] = strategy.slope_a * va;
      bids[1] = strategy.slope_b * vb;
      // Revenue depends on bids only, so the value-free instance suffices.
      acc.Add(RunAuction(instance, std::span<const double>(bids, 2), format)
                  .revenue);
    }
    shards[k] = acc;
  });
  Welford total;
  for (const Welford& w : shards) total.Merge(w);
  McEstimate est;
  est.samples = total.n;
  est.mean = total.mean;
  est.std_error =
      total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) /
                              static_cast<double>(total.n))
                  : 0.0;
  return est;
}

HierarchyReport RevenueHierarchy(const TwoByTwoSetting& setting) {
  HierarchyReport r;
  for (std::size_t k = 0; k < kAllFormats.size(); ++k) {
    r.revenue[k] = EquilibriumRevenue(setting, kAllFormats[k]);
  }
  const double da = setting.delta_a();
  const double db = setting.delta_b();
  const double d = setting.ratio();
  // The difference of the two families factors through (1 - D).
  r.gap = (1.0 - d) / 6.0 *
          ((1.0 - da) * d * d + (1.0 - db) * (3.0 - 2.0 * d - 2.0 * d * d));
  r.equalities_hold = r.revenue[0] == r.revenue[3] && r.revenue[1] == r.revenue[2];
  r.ok = r.equalities_hold && r.gap >= 0.0;
  return r;
}

double ExInterimUtility(const TwoByTwoSetting& setting, Format format,
                        Side side, double opponent_slope, double value,
                        double bid) {
  const double dx = side == Side::kA ? setting.delta_a() : setting.delta_b();
  const WinTerms t = Terms(setting, format, side, opponent_slope, bid);
  return t.q * value - t.k * opponent_slope * t.q * t.q / 2.0 +
         (1.0 - t.q) * dx * value;
}

double CapBid(const TwoByTwoSetting& setting, Format format, Side side,
              double opponent_slope) {
  const double dx = side == Side::kA ? setting.delta_a() : setting.delta_b();
  const double dy = side == Side::kA ? setting.delta_b() : setting.delta_a();
  if (AllocationOf(format) == AllocationRule::kGreedy) return opponent_slope;
  return opponent_slope * (1.0 - dy) / (1.0 - dx);
}

BestResponse BestResponseCheck(const TwoByTwoSetting& setting, Format format,
                               double opponent_slope, double own_value,
                               Side side, int grid_points, double max_bid) {
  if (!(own_value >= 0.0 && own_value <= 1.0)) {
    throw std::domain_error("value must lie in [0, 1]");
  }
  if (grid_points < 2) throw std::invalid_argument("grid needs two points");
  BestResponse best{0.0, -std::numeric_limits<double>::infinity()};
  for (int k = 0; k < grid_points; ++k) {
    const double b = max_bid * k / (grid_points - 1);
    const double u =
        ExInterimUtility(setting, format, side, opponent_slope, own_value, b);
    if (u > best.utility) best = {b, u};
  }
  return best;
}

std::vector<std::pair<double, double>> ReferenceDiscountGrid() {
  return {{0.1, 0.2},   {0.1, 0.5}, {0.2, 0.9},       {0.3, 0.6},
          {0.37, 0.85}, {0.4, 0.5}, {0.5, 2.0 / 3.0}, {0.6, 0.95},
          {0.0, 0.3},   {0.75, 0.8}};
}

}  // namespace adtypes
