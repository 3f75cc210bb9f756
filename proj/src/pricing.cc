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

#include "adtypes/pricing.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adtypes {
namespace {

// True when j is still unplaced when the greedy allocator reaches slot s.
bool AvailableAt(const Assignment& a, int j, int s) {
  const int sj = a.slot_of[j];
  return sj == kUnallocated || sj > s;
}

// The bidder that greedy would put into slot s if `bidder` were absent.
int GreedyReplacement(const AuctionInstance& instance,
                      std::span<const double> bids, const Assignment& a,
                      int bidder, int s) {
  int best = kNoBidder;
  double top = -1.0;
  for (int j = 0; j < instance.bidder_count(); ++j) {
    if (j == bidder || !AvailableAt(a, j, s)) continue;
    const double w = instance.discount(j, s) * bids[j];
    if (w > top) {
      top = w;
      best = j;
    }
  }
  return best;
}

BidderPrice FromPerConversion(double discount, double price) {
  return {price, discount * price};
}

BidderPrice FromExpected(double discount, double expected) {
  // A zero discount carries the whole externality in the expected payment.
  return {discount > 0.0 ? expected / discount : 0.0, expected};
}

double GreedyGspPrice(const AuctionInstance& instance,
                      std::span<const double> bids, const Assignment& a,
                      int i) {
  const int s = a.slot_of[i];
  const double own = instance.discount(i, s);
  if (own <= 0.0) return 0.0;
  double top = 0.0;
  for (int j = 0; j < instance.bidder_count(); ++j) {
    if (j == i || !AvailableAt(a, j, s)) continue;
    top = std::max(top, instance.discount(j, s) * bids[j]);
  }
  return top / own;
}

double OptimalGspPrice(const AuctionInstance& instance,
                       std::span<const double> bids, const Assignment& a,
                       int i) {
  const int s = a.slot_of[i];
  const int m = instance.slot_count();
  const double own = instance.discount(i, s);
  if (own <= 0.0) return 0.0;
  const std::vector<double> rest = OptimalValueWithSlotRemoved(instance, bids, i);
  double price = 0.0;
  for (int t = 0; t <= m; ++t) {
    const double dt = t == m ? 0.0 : instance.discount(i, t);
    if (dt >= own) continue;
    price = std::max(price, (rest[t] - rest[s]) / (own - dt));
  }
  return std::min(price, bids[i]);
}

double VcgExpected(const AuctionInstance& instance,
                   std::span<const double> bids, AllocationRule rule,
                   const Assignment& a, int i) {
  const int n = instance.bidder_count();
  double with_i = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j != i && a.slot_of[j] != kUnallocated) {
      with_i += instance.discount(j, a.slot_of[j]) * bids[j];
    }
  }
  double without_i = 0.0;
  if (rule == AllocationRule::kOptimal) {
    without_i = OptimalValueWithSlotRemoved(instance, bids, i).back();
  } else {
    const Assignment b = AllocateGreedy(instance, bids, i);
    for (int j = 0; j < n; ++j) {
      if (b.slot_of[j] != kUnallocated) {
        without_i += instance.discount(j, b.slot_of[j]) * bids[j];
      }
    }
  }
  double expected = without_i - with_i;
  const double tol = kTolerance * (1.0 + std::abs(with_i));
  if (expected < 0.0 && expected > -tol) expected = 0.0;
  return expected;
}

PriceVector PriceAll(const AuctionInstance& instance, const BidProfile& bids,
                     Format format) {
  CheckProfileFits(instance, bids);
  const Assignment a =
      Allocate(AllocationOf(format), instance, bids.bids(), kNoBidder);
  PriceVector out;
  const int n = instance.bidder_count();
  out.per_conversion.assign(n, 0.0);
  out.expected.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const BidderPrice p = PriceOfBidder(instance, bids.bids(), format, a, i);
    out.per_conversion[i] = p.per_conversion;
    out.expected[i] = p.expected;
  }
  return out;
}

}  // namespace

AllocationRule AllocationOf(Format format) {
  return format == Format::kGreedyGsp || format == Format::kGreedyVcg
             ? AllocationRule::kGreedy
             : AllocationRule::kOptimal;
}

PricingRule PricingOf(Format format) {
  return format == Format::kGreedyGsp || format == Format::kOptGsp
             ? PricingRule::kGsp
             : PricingRule::kVcg;
}

Format MakeFormat(AllocationRule allocation, PricingRule pricing) {
  if (allocation == AllocationRule::kGreedy) {
    return pricing == PricingRule::kGsp ? Format::kGreedyGsp
                                        : Format::kGreedyVcg;
  }
  return pricing == PricingRule::kGsp ? Format::kOptGsp : Format::kOptVcg;
}

std::string_view FormatName(Format format) {
  switch (format) {
    case Format::kGreedyGsp:
      return "GreedyGSP";
    case Format::kGreedyVcg:
      return "GreedyVCG";
    case Format::kOptGsp:
      return "OptGSP";
    case Format::kOptVcg:
      return "OptVCG";
  }
  return "";
}

Format ParseFormat(std::string_view name) {
  std::string lowered(name);
  for (char& c : lowered) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (Format f : kAllFormats) {
    std::string candidate(FormatName(f));
    for (char& c : candidate) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (candidate == lowered) return f;
  }
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

BidderPrice PriceOfBidder(const AuctionInstance& instance,
                          std::span<const double> bids, Format format,
                          const Assignment& assignment, int bidder) {
  const int s = assignment.slot_of[bidder];
  if (s == kUnallocated) return {};
  const double discount = instance.discount(bidder, s);
  switch (format) {
    case Format::kGreedyGsp:
      return FromPerConversion(
          discount, GreedyGspPrice(instance, bids, assignment, bidder));
    case Format::kOptGsp:
      return FromPerConversion(
          discount, OptimalGspPrice(instance, bids, assignment, bidder));
    case Format::kGreedyVcg:
      return FromExpected(discount,
                          VcgExpected(instance, bids, AllocationRule::kGreedy,
                                      assignment, bidder));
    case Format::kOptVcg:
      return FromExpected(discount,
                          VcgExpected(instance, bids, AllocationRule::kOptimal,
                                      assignment, bidder));
  }
  return {};
}

PriceVector PriceGsp(const AuctionInstance& instance, const BidProfile& bids,
                     AllocationRule allocation) {
  return PriceAll(instance, bids, MakeFormat(allocation, PricingRule::kGsp));
}

PriceVector PriceVcg(const AuctionInstance& instance, const BidProfile& bids,
                     AllocationRule allocation) {
  return PriceAll(instance, bids, MakeFormat(allocation, PricingRule::kVcg));
}

double OptimalGspPriceBisection(const AuctionInstance& instance,
                                std::span<const double> bids, int bidder,
                                double tolerance) {
  const Assignment a = AllocateOptimal(instance, bids);
  const int s = a.slot_of[bidder];
  if (s == kUnallocated) return 0.0;
  std::vector<double> trial(bids.begin(), bids.end());
  auto retains = [&](double x) {
    trial[bidder] = x;
    return AllocateOptimal(instance, trial).slot_of[bidder] == s;
  };
  if (retains(0.0)) return 0.0;
  double lo = 0.0;
  double hi = bids[bidder];
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (retains(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<double> GreedyVcgRecursion(const AuctionInstance& instance,
                                       std::span<const double> bids,
                                       const Assignment& assignment) {
  std::vector<double> p(instance.bidder_count(), 0.0);
  for (int s = instance.slot_count() - 1; s >= 0; --s) {
    const int i = assignment.bidder_in[s];
    if (i == kNoBidder) continue;
    const int j = GreedyReplacement(instance, bids, assignment, i, s);
    if (j == kNoBidder) continue;
    const int sj = assignment.slot_of[j];
    p[i] = p[j] +
           (instance.discount(j, s) - instance.discount(j, sj)) * bids[j];
  }
  return p;
}

OverchargeCertificate CertifyNoOvercharge(const AuctionInstance& instance,
                                          const BidProfile& bids,
                                          Format format) {
  CheckProfileFits(instance, bids);
  const Assignment a =
      Allocate(AllocationOf(format), instance, bids.bids(), kNoBidder);
  const PriceVector prices = PriceAll(instance, bids, format);
  return CertifyNoOvercharge(instance, bids, format, a, prices);
}

OverchargeCertificate CertifyNoOvercharge(const AuctionInstance& instance,
                                          const BidProfile& bids,
                                          Format format,
                                          const Assignment& assignment,
                                          const PriceVector& prices) {
  CheckProfileFits(instance, bids);
  const int n = instance.bidder_count();
  for (int i = 0; i < n; ++i) {
    const double cap = instance.discount(i, assignment.slot_of[i]) * bids[i];
    if (prices.expected[i] > cap + kTolerance) {
      return {false, i,
              "expected payment " + std::to_string(prices.expected[i]) +
                  " exceeds discounted bid " + std::to_string(cap)};
    }
    if (prices.expected[i] < -kTolerance) {
      return {false, i, "negative payment"};
    }
  }
  if (format == Format::kGreedyVcg) {
    const std::vector<double> rec =
        GreedyVcgRecursion(instance, bids.bids(), assignment);
    for (int i = 0; i < n; ++i) {
      if (std::abs(rec[i] - prices.expected[i]) > kTolerance) {
        return {false, i, "payment disagrees with the greedy recursion"};
      }
    }
  }
  return {};
}

}  // namespace adtypes
