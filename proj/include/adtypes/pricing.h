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

#ifndef ADTYPES_PRICING_H_
#define ADTYPES_PRICING_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adtypes/allocation.h"
#include "adtypes/model.h"

namespace adtypes {

enum class PricingRule { kGsp, kVcg };

// The four (allocation, pricing) mechanisms.
enum class Format { kGreedyGsp, kGreedyVcg, kOptGsp, kOptVcg };

inline constexpr std::array<Format, 4> kAllFormats = {
    Format::kGreedyGsp, Format::kGreedyVcg, Format::kOptGsp, Format::kOptVcg};

AllocationRule AllocationOf(Format format);
PricingRule PricingOf(Format format);
Format MakeFormat(AllocationRule allocation, PricingRule pricing);

// "GreedyGSP", "GreedyVCG", "OptGSP", "OptVCG".
std::string_view FormatName(Format format);
// Accepts the names above, case-insensitively. Throws std::invalid_argument.
Format ParseFormat(std::string_view name);

struct PriceVector {
  std::vector<double> per_conversion;
  std::vector<double> expected;
};

struct BidderPrice {
  double per_conversion = 0.0;
  double expected = 0.0;
};

// Price of one bidder under `assignment`, which must be the allocation of
// `bids` by AllocationOf(format). Unallocated bidders pay 0.
//
// GSP charges the smallest bid that keeps the assigned slot. For the greedy
// allocator that is the largest discounted competing bid still available at
// the slot, divided by the bidder's own discount. For the optimal allocator it
// is the exact threshold of the parametric matching problem: the bidder keeps
// slot s at bid x iff discount(s) * x + C_s beats discount(t) * x + C_t for
// every alternative t, where C_t is the best weight of the others with t gone.
//
// VCG charges the externality on the others' apparent welfare, evaluated by
// re-running the same allocator without the bidder.
BidderPrice PriceOfBidder(const AuctionInstance& instance,
                          std::span<const double> bids, Format format,
                          const Assignment& assignment, int bidder);

PriceVector PriceGsp(const AuctionInstance& instance, const BidProfile& bids,
                     AllocationRule allocation);
PriceVector PriceVcg(const AuctionInstance& instance, const BidProfile& bids,
                     AllocationRule allocation);

// Critical bid of `bidder` under the optimal allocator, found by bisection on
// [0, bid] down to `tolerance`; returns the retaining end. Test oracle for the
// exact threshold used by PriceOfBidder.
double OptimalGspPriceBisection(const AuctionInstance& instance,
                                std::span<const double> bids, int bidder,
                                double tolerance = kTolerance);

// Greedy-VCG payments rebuilt bottom-up from the recursion
//   p_i = p_j + (discount(j, slot(i)) - discount(j, slot(j))) * b_j,
// where j is the bidder that takes slot(i) once i is removed.
std::vector<double> GreedyVcgRecursion(const AuctionInstance& instance,
                                       std::span<const double> bids,
                                       const Assignment& assignment);

struct OverchargeCertificate {
  bool ok = true;
  int witness = kNoBidder;
  std::string reason;
};

// Checks expected payment <= discount * bid (+kTolerance) for every bidder;
// for GreedyVCG also checks the payments against GreedyVcgRecursion.
OverchargeCertificate CertifyNoOvercharge(const AuctionInstance& instance,
                                          const BidProfile& bids,
                                          Format format);
// Same, on caller-supplied prices.
OverchargeCertificate CertifyNoOvercharge(const AuctionInstance& instance,
                                          const BidProfile& bids,
                                          Format format,
                                          const Assignment& assignment,
                                          const PriceVector& prices);

}  // namespace adtypes

#endif  // ADTYPES_PRICING_H_
