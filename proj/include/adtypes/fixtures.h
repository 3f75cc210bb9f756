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

#ifndef ADTYPES_FIXTURES_H_
#define ADTYPES_FIXTURES_H_

#include <string>
#include <vector>

#include "adtypes/model.h"
#include "adtypes/pricing.h"

namespace adtypes {

// A hand-built instance with a known inefficient pure equilibrium.
struct NamedInstance {
  std::string name;
  Format format = Format::kGreedyGsp;
  AuctionInstance instance;
  BidProfile equilibrium;
  double epsilon = 0.0;
  // OPT / EQ from the closed form.
  double claimed_ratio = 1.0;
  // Limit of claimed_ratio as epsilon -> 0.
  double limit_ratio = 1.0;
};

inline constexpr double kReportEpsilon = 0.01;
inline constexpr double kExampleEpsilon = 0.1;

// Two slots, curves A = (1, 0) and B = (1, 1), values (1 - eps, 1).
// Under GreedyGSP, A bidding 0 and B bidding 1 is an equilibrium with
// OPT / EQ = 2 - eps.
NamedInstance ZeroOneFixture(double epsilon = kReportEpsilon);

// Three slots, curves A = (1, 1, 1 - 2eps), B = (1, 1, 0),
// C = (1, eps, eps^2), values (1 + eps, 1, 1 - eps). Truthful bidding under
// GreedyVCG is an equilibrium with
// OPT / EQ = (3 - 2eps - 2eps^2) / (2 + eps + eps^2 - eps^3).
NamedInstance ThreeTypesFixture(double epsilon = kReportEpsilon);

// Two slots, curves (1, delta_a) and (1, 1/2), v_B = 1,
// v_A = 1 / (4 (1 - delta_a)^2). Under OptGSP the profile
// (r (1 - d_B) v_B + bid_epsilon, r (1 - d_B) v_B) with
// r = (1 - d_B) / (1 - d_A) is an equilibrium with
// EQ / OPT = (2 (1 - d_A)^2 + 1) / (d_A + 4 (1 - d_A)^2).
// Requires 0 <= delta_a < 1/2; checks the value/ratio ordering the
// equilibrium argument relies on before returning.
NamedInstance OptGspFamily(double delta_a, double bid_epsilon = 1e-4);

// (2 (1 - d_A)^2 + 1) / (d_A + 4 (1 - d_A)^2).
double OptGspFamilyEfficiency(double delta_a);

struct NashCheck {
  // max over bidders and deviations of u_i(b', b_-i) - u_i(b).
  double max_gain = 0.0;
  int bidder = kNoBidder;
  double deviation = 0.0;
  bool certified = false;
};

inline constexpr int kDefaultDeviationGrid = 10000;
inline constexpr double kNashTolerance = 1e-6;

// Searches `grid_points` evenly spaced deviations on [0, 2 * max value],
// plus every other bid and its neighbouring doubles.
NashCheck VerifyPureNash(const AuctionInstance& instance,
                         const BidProfile& bids, Format format,
                         int grid_points = kDefaultDeviationGrid,
                         double tolerance = kNashTolerance);
NashCheck VerifyPureNash(const NamedInstance& fixture,
                         int grid_points = kDefaultDeviationGrid,
                         double tolerance = kNashTolerance);

// OPT / EQ measured by running the mechanism on the fixture's profile.
double MeasuredRatio(const NamedInstance& fixture);

// True iff no bidder bids above value.
bool IsConservative(const NamedInstance& fixture);

struct PoaRow {
  std::string format;
  std::string fixture;
  double parameter = 0.0;
  double ratio = 0.0;
  double claimed_ratio = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double max_gain = 0.0;
  bool conservative = false;
  bool nash = false;
  bool within_upper_bound = false;
  bool ok = false;
};

// One row per lower-bound family: GreedyGSP, GreedyVCG at `epsilon`, OptGSP
// at delta_a = `opt_gsp_delta_a`.
std::vector<PoaRow> PoaSuite(double epsilon = kReportEpsilon,
                             double opt_gsp_delta_a = 0.001,
                             int grid_points = kDefaultDeviationGrid);

}  // namespace adtypes

#endif  // ADTYPES_FIXTURES_H_
