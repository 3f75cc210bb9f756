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

#ifndef ADTYPES_ANALYTIC_H_
#define ADTYPES_ANALYTIC_H_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "adtypes/model.h"
#include "adtypes/pricing.h"

namespace adtypes {

// Two bidders, A and B, with values uniform on [0, 1] and curves (1, delta_a)
// and (1, delta_b) over two slots. Bidder 0 is A and bidder 1 is B.
class TwoByTwoSetting {
 public:
  // Requires 0 <= delta_a <= delta_b < 1. Equality is the degenerate case in
  // which all four formats coincide.
  TwoByTwoSetting(double delta_a, double delta_b);

  double delta_a() const { return delta_a_; }
  double delta_b() const { return delta_b_; }
  // (1 - delta_b) / (1 - delta_a), in (0, 1].
  double ratio() const { return ratio_; }

  AuctionInstance Instance(double value_a, double value_b) const;

 private:
  double delta_a_;
  double delta_b_;
  double ratio_;
};

enum class Side { kA, kB };

// Linear bidding strategies b_X(v) = slope_X * v.
struct EquilibriumStrategy {
  double slope_a = 1.0;
  double slope_b = 1.0;

  double slope(Side side) const {
    return side == Side::kA ? slope_a : slope_b;
  }
};

// GSP formats: (1 - delta_a, 1 - delta_b). GreedyVCG: (1 / ratio, ratio).
// OptVCG: (1, 1).
EquilibriumStrategy EquilibriumStrategyFor(const TwoByTwoSetting& setting,
                                           Format format);

// Expected revenue at the linear equilibrium. GreedyGSP and OptVCG share one
// expression, OptGSP and GreedyVCG the other.
double EquilibriumRevenue(const TwoByTwoSetting& setting, Format format);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

// Draws (v_a, v_b) uniform on [0, 1]^2, bids with `strategy`, runs the real
// mechanism and averages its revenue. Work is split into fixed shards with
// seeds derived from `seed`, so the result does not depend on thread count.
McEstimate RevenueOracleMc(const TwoByTwoSetting& setting, Format format,
                           const EquilibriumStrategy& strategy,
                           std::int64_t samples, std::uint64_t seed);

struct HierarchyReport {
  // Indexed like kAllFormats.
  std::array<double, 4> revenue{};
  // R(GreedyGSP) - R(OptGSP), from the factored closed form.
  double gap = 0.0;
  bool equalities_hold = false;
  bool ok = false;
};

HierarchyReport RevenueHierarchy(const TwoByTwoSetting& setting);

// Ex-interim expected utility of side X with value `value` bidding `bid`
// against an opponent who bids opponent_slope * v, v uniform on [0, 1].
// Ties in discounted bids go to A, matching the allocators' id order.
double ExInterimUtility(const TwoByTwoSetting& setting, Format format,
                        Side side, double opponent_slope, double value,
                        double bid);

// Smallest bid at which side X wins the top slot with certainty. Beyond it
// every bid yields the same payoff.
double CapBid(const TwoByTwoSetting& setting, Format format, Side side,
              double opponent_slope);

struct BestResponse {
  double bid = 0.0;
  double utility = 0.0;
};

// Maximizes ExInterimUtility over `grid_points` evenly spaced bids on
// [0, max_bid] and returns the first maximizer.
BestResponse BestResponseCheck(const TwoByTwoSetting& setting, Format format,
                               double opponent_slope, double own_value,
                               Side side = Side::kA, int grid_points = 10000,
                               double max_bid = 2.0);

// Ten (delta_a, delta_b) pairs with delta_a < delta_b spread over [0, 1),
// used for closed-form versus simulation sweeps.
std::vector<std::pair<double, double>> ReferenceDiscountGrid();

}  // namespace adtypes

#endif  // ADTYPES_ANALYTIC_H_
