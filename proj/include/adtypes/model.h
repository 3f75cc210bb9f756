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

#ifndef ADTYPES_MODEL_H_
#define ADTYPES_MODEL_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace adtypes {

// Absolute tolerance used for every floating point comparison in the library.
inline constexpr double kTolerance = 1e-9;

// Marker for "no slot" in Assignment::slot_of and "no bidder" in
// Assignment::bidder_in. Slots and bidders are zero-indexed; slot 0 is the top.
inline constexpr int kUnallocated = -1;
inline constexpr int kNoBidder = -1;

// Per-slot conversion discounts of one ad type. Monotone non-increasing and
// inside [0, 1]; checked at construction.
class DiscountCurve {
 public:
  DiscountCurve() = default;
  explicit DiscountCurve(std::vector<double> per_slot);

  // constant * factor^s for s = 0..slots-1, i.e. (c, c*f, c*f^2, ...).
  static DiscountCurve Geometric(double constant, double factor, int slots);

  int slot_count() const { return static_cast<int>(per_slot_.size()); }
  double at(int slot) const { return per_slot_.at(slot); }
  const std::vector<double>& values() const { return per_slot_; }

  bool operator==(const DiscountCurve&) const = default;

 private:
  std::vector<double> per_slot_;
};

struct Bidder {
  int id = 0;
  std::string type;
  // Value per conversion with the advertiser effect already folded in.
  double value = 0.0;

  bool operator==(const Bidder&) const = default;
};

// The immutable game description: bidders with ad types and values, one
// discount curve per type, and the number of slots.
//
// Copies are cheap: the curves and the dense bidder-by-slot discount table are
// shared, only the value vector is owned. WithValues() relies on this to
// re-value the same bidders many times inside Monte-Carlo and learning loops.
class AuctionInstance {
 public:
  AuctionInstance(std::vector<Bidder> bidders,
                  std::map<std::string, DiscountCurve> curves, int slot_count);

  int bidder_count() const { return static_cast<int>(values_.size()); }
  int slot_count() const { return slot_count_; }

  // slot == kUnallocated yields 0.
  double discount(int bidder, int slot) const {
    if (slot == kUnallocated) return 0.0;
    return layout_->discounts[static_cast<std::size_t>(bidder) *
                                  static_cast<std::size_t>(slot_count_) +
                              static_cast<std::size_t>(slot)];
  }
  double value(int bidder) const { return values_[bidder]; }
  const std::vector<double>& values() const { return values_; }
  const std::string& type_of(int bidder) const {
    return layout_->types[bidder];
  }
  const std::map<std::string, DiscountCurve>& curves() const {
    return layout_->curves;
  }
  Bidder bidder(int i) const { return {i, type_of(i), values_[i]}; }
  std::vector<Bidder> bidders() const;

  // Same bidders, types and curves with a new value vector.
  AuctionInstance WithValues(std::span<const double> values) const;

  bool operator==(const AuctionInstance& other) const;

 private:
  struct Layout {
    std::map<std::string, DiscountCurve> curves;
    std::vector<std::string> types;
    std::vector<double> discounts;  // row-major, bidder x slot
  };

  AuctionInstance(std::shared_ptr<const Layout> layout,
                  std::vector<double> values, int slot_count)
      : layout_(std::move(layout)),
        values_(std::move(values)),
        slot_count_(slot_count) {}

  std::shared_ptr<const Layout> layout_;
  std::vector<double> values_;
  int slot_count_ = 0;
};

// One non-negative per-conversion bid per bidder.
class BidProfile {
 public:
  BidProfile() = default;
  explicit BidProfile(std::vector<double> bids);

  int size() const { return static_cast<int>(bids_.size()); }
  double operator[](int i) const { return bids_[i]; }
  const std::vector<double>& bids() const { return bids_; }

  // Copy with bidder i's bid replaced.
  BidProfile WithBid(int bidder, double bid) const;

  bool operator==(const BidProfile&) const = default;

 private:
  std::vector<double> bids_;
};

// Requires profile.size() == instance.bidder_count().
void CheckProfileFits(const AuctionInstance& instance,
                      const BidProfile& profile);

// slot_of (sigma) and bidder_in (pi) are mutually inverse partial maps.
struct Assignment {
  std::vector<int> slot_of;
  std::vector<int> bidder_in;

  static Assignment Empty(int bidders, int slots);
  static Assignment FromSlots(std::vector<int> slot_of, int slots);

  bool allocated(int bidder) const { return slot_of[bidder] != kUnallocated; }
  bool operator==(const Assignment&) const = default;
};

// Throws std::invalid_argument unless the assignment is a valid injective
// partial map for the instance's shape.
void ValidateAssignment(const AuctionInstance& instance,
                        const Assignment& assignment);

struct AuctionOutcome {
  Assignment assignment;
  // Per-conversion price; 0 for unallocated bidders and zero-discount slots.
  std::vector<double> per_conversion_price;
  // Expected charge discount * price (VCG defines this quantity directly).
  std::vector<double> expected_payment;
  double true_welfare = 0.0;
  double apparent_welfare = 0.0;
  double revenue = 0.0;

  bool operator==(const AuctionOutcome&) const = default;
};

// discount(slot) * (value - price). slot == kUnallocated gives 0.
double Utility(const AuctionInstance& instance, int bidder, int slot,
               double per_conversion_price);

// Sum over allocated bidders of discount * weights[i]. Passing bids instead of
// values gives the apparent welfare.
double Welfare(const AuctionInstance& instance, const Assignment& assignment,
               std::span<const double> weights);

}  // namespace adtypes

#endif  // ADTYPES_MODEL_H_
