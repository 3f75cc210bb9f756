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

#ifndef ADTYPES_ENGINE_H_
#define ADTYPES_ENGINE_H_

#include <span>
#include <vector>

#include "adtypes/model.h"
#include "adtypes/pricing.h"

namespace adtypes {

AuctionOutcome RunAuction(const AuctionInstance& instance,
                          const BidProfile& bids, Format format);
// Unvalidated fast path; bids must be finite, non-negative and sized n.
AuctionOutcome RunAuction(const AuctionInstance& instance,
                          std::span<const double> bids, Format format);

// Utility of `bidder` when it alone switches to `alternative_bid`. Only the
// allocation and the deviator's own price are computed.
double CounterfactualUtility(const AuctionInstance& instance,
                             std::span<const double> bids, int bidder,
                             double alternative_bid, Format format);
double CounterfactualUtility(const AuctionInstance& instance,
                             const BidProfile& bids, int bidder,
                             double alternative_bid, Format format);

// Utility of `bidder` at the given bids.
double BidderUtility(const AuctionInstance& instance,
                     std::span<const double> bids, int bidder, Format format);

struct SmoothnessParameters {
  double lambda = 0.5;
  double mu = 1.0;
};

// (1/2, 1) for greedy formats; (1/2, (n-1) * dmax / dmin) for OptGSP, where
// dmax is the largest top-slot discount and dmin the smallest bottom-slot
// discount among the bidders' types. With n > m some bidder is always left
// out, the bound degenerates, and mu is +infinity. OptVCG has no parameters
// here and throws std::domain_error.
SmoothnessParameters DefaultSmoothness(const AuctionInstance& instance,
                                       Format format);

struct SmoothnessReport {
  double lambda = 0.0;
  double mu = 0.0;
  // Sum over i of u_i(v_i / 2, b_-i).
  double deviation_utility = 0.0;
  double optimal_welfare = 0.0;
  double welfare = 0.0;
  // deviation_utility - (lambda * optimal_welfare - mu * welfare).
  double slack = 0.0;
  bool vacuous = false;
};

// Evaluates the semismoothness inequality with every bidder deviating to half
// its value. `instance` supplies the curves; `values` are the true values.
SmoothnessReport CheckSemismoothness(const AuctionInstance& instance,
                                     std::span<const double> values,
                                     const BidProfile& bids, Format format);
SmoothnessReport CheckSemismoothness(const AuctionInstance& instance,
                                     std::span<const double> values,
                                     const BidProfile& bids, Format format,
                                     SmoothnessParameters params);

// Welfare of the value-optimal assignment.
double OptimalWelfare(const AuctionInstance& instance);

// OptimalWelfare(instance) divided by the mean true welfare of `samples`.
// Throws std::invalid_argument on no samples, std::domain_error when the mean
// welfare is zero.
double EmpiricalPoa(const AuctionInstance& instance,
                    std::span<const AuctionOutcome> samples);

}  // namespace adtypes

#endif  // ADTYPES_ENGINE_H_
