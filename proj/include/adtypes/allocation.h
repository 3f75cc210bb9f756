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

#ifndef ADTYPES_ALLOCATION_H_
#define ADTYPES_ALLOCATION_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "adtypes/model.h"

namespace adtypes {

enum class AllocationRule { kGreedy, kOptimal };

std::string_view AllocationRuleName(AllocationRule rule);

// Every allocator accepts an optional `excluded` bidder that is treated as
// absent (left unallocated). VCG pricing uses this for the "without i" run.
//
// The span overloads skip BidProfile validation and are meant for hot loops
// that already hold validated bids.

// Slots top-down; each goes to the remaining bidder with the largest
// discounted bid, lowest id on ties. Zero-weight bidders are still placed.
Assignment AllocateGreedy(const AuctionInstance& instance,
                          std::span<const double> bids,
                          int excluded = kNoBidder);
Assignment AllocateGreedy(const AuctionInstance& instance,
                          const BidProfile& bids);

// Maximum-weight assignment of bidders to slots with weight
// discount(i, s) * bid(i). Among optimal assignments (within a relative
// tolerance of 1e-12) returns the lexicographically smallest slot_of, with
// kUnallocated ordered after every slot.
Assignment AllocateOptimal(const AuctionInstance& instance,
                           std::span<const double> bids,
                           int excluded = kNoBidder);
Assignment AllocateOptimal(const AuctionInstance& instance,
                           const BidProfile& bids);

// Exhaustive enumeration with the same tie-breaking as AllocateOptimal.
// Throws std::length_error above kBruteForceCandidateLimit candidates.
inline constexpr std::int64_t kBruteForceCandidateLimit = 5'000'000;
Assignment AllocateBruteForce(const AuctionInstance& instance,
                              std::span<const double> bids,
                              int excluded = kNoBidder);
Assignment AllocateBruteForce(const AuctionInstance& instance,
                              const BidProfile& bids);

// Number of injective partial maps from n bidders to m slots.
std::int64_t CountCandidateAssignments(int bidders, int slots);

Assignment Allocate(AllocationRule rule, const AuctionInstance& instance,
                    std::span<const double> bids, int excluded = kNoBidder);

// Optimal total weight of every bidder except `excluded` when slot t is
// removed from the market, for t = 0..m-1; entry m removes nothing.
std::vector<double> OptimalValueWithSlotRemoved(const AuctionInstance& instance,
                                                std::span<const double> bids,
                                                int excluded);

}  // namespace adtypes

#endif  // ADTYPES_ALLOCATION_H_
