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

#include "adtypes/fixtures.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "adtypes/engine.h"
#include "adtypes/parallel.h"

namespace adtypes {
namespace {

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::domain_error("epsilon must lie in (0, 1/2)");
  }
}

// Candidate deviations for one bidder, sorted and deduplicated.
std::vector<double> DeviationGrid(std::span<const double> bids,
                                  std::span<const double> values, int bidder,
                                  int grid_points) {
  double top = 0.0;
  for (double v : values) top = std::max(top, v);
  const double cap = 2.0 * top;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_points) + 4 * bids.size());
  for (int k = 0; k < grid_points; ++k) {
    grid.push_back(cap * k / (grid_points - 1));
  }
  for (std::size_t j = 0; j < bids.size(); ++j) {
    grid.push_back(bids[j]);
    if (static_cast<int>(j) == bidder) continue;
    grid.push_back(std::nextafter(bids[j], 0.0));
    grid.push_back(std::nextafter(bids[j], std::numeric_limits<double>::max()));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

NamedInstance ZeroOneFixture(double epsilon) {
  CheckEpsilon(epsilon);
  AuctionInstance inst({{0, "A", 1.0 - epsilon}, {1, "B", 1.0}},
                       {{"A", DiscountCurve({1.0, 0.0})},
                        {"B", DiscountCurve({1.0, 1.0})}},
                       2);
  return {"zero_one",       Format::kGreedyGsp,  std::move(inst),
          BidProfile({0.0, 1.0}), epsilon, 2.0 - epsilon, 2.0};
}

NamedInstance ThreeTypesFixture(double epsilon) {
  CheckEpsilon(epsilon);
  const double e = epsilon;
  AuctionInstance inst(
      {{0, "A", 1.0 + e}, {1, "B", 1.0}, {2, "C", 1.0 - e}},
      {{"A", DiscountCurve({1.0, 1.0, 1.0 - 2.0 * e})},
       {"B", DiscountCurve({1.0, 1.0, 0.0})},
       {"C", DiscountCurve({1.0, e, e * e})}},
      3);
  const double ratio =
      (3.0 - 2.0 * e - 2.0 * e * e) / (2.0 + e + e * e - e * e * e);
  return {"three_types",
          Format::kGreedyVcg,
          std::move(inst),
          BidProfile({1.0 + e, 1.0, 1.0 - e}),
          epsilon,
          ratio,
          1.5};
}

double OptGspFamilyEfficiency(double delta_a) {
  const double q = (1.0 - delta_a) * (1.0 - delta_a);
  return (2.0 * q + 1.0) / (delta_a + 4.0 * q);
}

NamedInstance OptGspFamily(double delta_a, double bid_epsilon) {
  if (!(delta_a >= 0.0 && delta_a < 0.5)) {
    throw std::domain_error("delta_a must lie in [0, 1/2)");
  }
  if (!(bid_epsilon > 0.0)) {
    throw std::domain_error("bid epsilon must be positive");
  }
  constexpr double kDeltaB = 0.5;
  const double v_b = 1.0;
  const double v_a = 1.0 / (4.0 * (1.0 - delta_a) * (1.0 - delta_a));
  const double r = (1.0 - kDeltaB) / (1.0 - delta_a);
  const double slack = 1e-12;
  if (!(r * r * v_b <= v_a + slack && v_a <= r * v_b + slack &&
        r * v_b <= v_a / r + slack && v_a / r <= v_b + slack)) {
    throw std::logic_error("value ordering for the equilibrium fails");
  }
  const double b_b = r * (1.0 - kDeltaB) * v_b;
  AuctionInstance inst({{0, "A", v_a}, {1, "B", v_b}},
                       {{"A", DiscountCurve({1.0, delta_a})},
                        {"B", DiscountCurve({1.0, kDeltaB})}},
                       2);
  return {"opt_gsp_family",
          Format::kOptGsp,
          std::move(inst),
          BidProfile({b_b + bid_epsilon, b_b}),
          delta_a,
          1.0 / OptGspFamilyEfficiency(delta_a),
          4.0 / 3.0};
}

NashCheck VerifyPureNash(const AuctionInstance& instance,
                         const BidProfile& bids, Format format,
                         int grid_points, double tolerance) {
  CheckProfileFits(instance, bids);
  if (grid_points < 1000) {
    throw std::invalid_argument("deviation grid needs at least 1000 points");
  }
  NashCheck out;
  out.max_gain = -std::numeric_limits<double>::infinity();
  const std::vector<double>& b = bids.bids();
  for (int i = 0; i < instance.bidder_count(); ++i) {
    const double base = BidderUtility(instance, b, i, format);
    for (double x : DeviationGrid(b, instance.values(), i, grid_points)) {
      const double gain =
          CounterfactualUtility(instance, b, i, x, format) - base;
      if (gain > out.max_gain) {
        out.max_gain = gain;
        out.bidder = i;
        out.deviation = x;
      }
    }
  }
  out.certified = out.max_gain <= tolerance;
  return out;
}

NashCheck VerifyPureNash(const NamedInstance& fixture, int grid_points,
                         double tolerance) {
  return VerifyPureNash(fixture.instance, fixture.equilibrium, fixture.format,
                        grid_points, tolerance);
}

double MeasuredRatio(const NamedInstance& fixture) {
  const double eq =
      RunAuction(fixture.instance, fixture.equilibrium, fixture.format)
          .true_welfare;
  if (eq <= 0.0) throw std::domain_error("equilibrium welfare is zero");
  return OptimalWelfare(fixture.instance) / eq;
}

bool IsConservative(const NamedInstance& fixture) {
  for (int i = 0; i < fixture.instance.bidder_count(); ++i) {
    if (fixture.equilibrium[i] > fixture.instance.value(i)) return false;
  }
  return true;
}

std::vector<PoaRow> PoaSuite(double epsilon, double opt_gsp_delta_a,
                             int grid_points) {
  const std::vector<NamedInstance> fixtures = {
      ZeroOneFixture(epsilon), ThreeTypesFixture(epsilon),
      OptGspFamily(opt_gsp_delta_a)};
  std::vector<PoaRow> rows(fixtures.size());
  ParallelFor(static_cast<int>(fixtures.size()), [&](int k) {
    const NamedInstance& f = fixtures[k];
    const SmoothnessParameters p = DefaultSmoothness(f.instance, f.format);
    const NashCheck nash = VerifyPureNash(f, grid_points);
    PoaRow& row = rows[k];
    row.format = std::string(FormatName(f.format));
    row.fixture = f.name;
    row.parameter = f.epsilon;
    row.ratio = MeasuredRatio(f);
    row.claimed_ratio = f.claimed_ratio;
    row.lower_bound = f.limit_ratio;
    row.upper_bound = (p.mu + 1.0) / p.lambda;
    row.max_gain = nash.max_gain;
    row.conservative = IsConservative(f);
    row.nash = nash.certified;
    row.within_upper_bound = row.ratio <= row.upper_bound;
    row.ok = row.nash && row.within_upper_bound &&
             std::abs(row.ratio - row.claimed_ratio) <= 1e-9;
  });
  return rows;
}

}  // namespace adtypes
