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

#include "adtypes/engine.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "adtypes/allocation.h"

namespace adtypes {

AuctionOutcome RunAuction(const AuctionInstance& instance,
                          std::span<const double> bids, Format format) {
  const int n = instance.bidder_count();
  AuctionOutcome out;
  out.assignment = Allocate(AllocationOf(format), instance, bids, kNoBidder);
  out.per_conversion_price.assign(n, 0.0);
  out.expected_payment.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const BidderPrice p =
        PriceOfBidder(instance, bids, format, out.assignment, i);
    out.per_conversion_price[i] = p.per_conversion;
    out.expected_payment[i] = p.expected;
    out.revenue += p.expected;
  }
  out.true_welfare = Welfare(instance, out.assignment, instance.values());
  out.apparent_welfare = Welfare(instance, out.assignment, bids);
  return out;
}

AuctionOutcome RunAuction(const AuctionInstance& instance,
                          const BidProfile& bids, Format format) {
  CheckProfileFits(instance, bids);
  return RunAuction(instance, bids.bids(), format);
}

double BidderUtility(const AuctionInstance& instance,
                     std::span<const double> bids, int bidder, Format format) {
  const Assignment a =
      Allocate(AllocationOf(format), instance, bids, kNoBidder);
  const int s = a.slot_of[bidder];
  if (s == kUnallocated) return 0.0;
  const BidderPrice p = PriceOfBidder(instance, bids, format, a, bidder);
  return instance.discount(bidder, s) * instance.value(bidder) - p.expected;
}

double CounterfactualUtility(const AuctionInstance& instance,
                             std::span<const double> bids, int bidder,
                             double alternative_bid, Format format) {
  if (!(alternative_bid >= 0.0) || !std::isfinite(alternative_bid)) {
    throw std::invalid_argument("alternative bid must be finite and >= 0");
  }
  thread_local std::vector<double> trial;
  trial.assign(bids.begin(), bids.end());
  trial[bidder] = alternative_bid;
  return BidderUtility(instance, trial, bidder, format);
}

double CounterfactualUtility(const AuctionInstance& instance,
                             const BidProfile& bids, int bidder,
                             double alternative_bid, Format format) {
  CheckProfileFits(instance, bids);
  if (bidder < 0 || bidder >= instance.bidder_count()) {
    throw std::domain_error("unknown bidder");
  }
  return CounterfactualUtility(instance, bids.bids(), bidder, alternative_bid,
                               format);
}

SmoothnessParameters DefaultSmoothness(const AuctionInstance& instance,
                                       Format format) {
  switch (format) {
    case Format::kGreedyGsp:
    case Format::kGreedyVcg:
      return {0.5, 1.0};
    case Format::kOptGsp: {
      const int n = instance.bidder_count();
      const int m = instance.slot_count();
      double dmax = 0.0;
      double dmin = 1.0;
      for (int i = 0; i < n; ++i) {
        dmax = std::max(dmax, instance.discount(i, 0));
        dmin = std::min(dmin, instance.discount(i, m - 1));
      }
      if (n > m || dmin <= 0.0) {
        return {0.5, std::numeric_limits<double>::infinity()};
      }
      return {0.5, (n - 1) * dmax / dmin};
    }
    case Format::kOptVcg:
      break;
  }
  throw std::domain_error("no semismoothness parameters for OptVCG");
}

SmoothnessReport CheckSemismoothness(const AuctionInstance& instance,
                                     std::span<const double> values,
                                     const BidProfile& bids, Format format) {
  return CheckSemismoothness(instance, values, bids, format,
                             DefaultSmoothness(instance, format));
}

SmoothnessReport CheckSemismoothness(const AuctionInstance& instance,
                                     std::span<const double> values,
                                     const BidProfile& bids, Format format,
                                     SmoothnessParameters params) {
  CheckProfileFits(instance, bids);
  const AuctionInstance valued = instance.WithValues(values);
  SmoothnessReport r;
  r.lambda = params.lambda;
  r.mu = params.mu;
  for (int i = 0; i < valued.bidder_count(); ++i) {
    r.deviation_utility += CounterfactualUtility(
        valued, bids.bids(), i, 0.5 * valued.value(i), format);
  }
  r.optimal_welfare = OptimalWelfare(valued);
  r.welfare = RunAuction(valued, bids.bids(), format).true_welfare;
  if (std::isinf(params.mu)) {
    r.vacuous = true;
    r.slack = std::numeric_limits<double>::infinity();
    return r;
  }
  r.slack = r.deviation_utility -
            (params.lambda * r.optimal_welfare - params.mu * r.welfare);
  return r;
}

double OptimalWelfare(const AuctionInstance& instance) {
  const Assignment a = AllocateOptimal(instance, instance.values());
  return Welfare(instance, a, instance.values());
}

double EmpiricalPoa(const AuctionInstance& instance,
                    std::span<const AuctionOutcome> samples) {
  if (samples.empty()) throw std::invalid_argument("no outcome samples");
  double total = 0.0;
  for (const AuctionOutcome& o : samples) total += o.true_welfare;
  const double mean = total / static_cast<double>(samples.size());
  if (mean <= 0.0) throw std::domain_error("mean welfare is zero");
  return OptimalWelfare(instance) / mean;
}

}  // namespace adtypes
