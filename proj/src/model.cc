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

#include "adtypes/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adtypes {
namespace {

bool IsFiniteNonNegative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

DiscountCurve::DiscountCurve(std::vector<double> per_slot)
    : per_slot_(std::move(per_slot)) {
  if (per_slot_.empty()) {
    throw std::invalid_argument("discount curve needs at least one slot");
  }
  for (std::size_t s = 0; s < per_slot_.size(); ++s) {
    const double d = per_slot_[s];
    if (!std::isfinite(d) || d < 0.0 || d > 1.0) {
      throw std::invalid_argument("discount outside [0, 1] at slot " +
                                  std::to_string(s));
    }
    if (s > 0 && d > per_slot_[s - 1]) {
      throw std::invalid_argument("discount curve increases at slot " +
                                  std::to_string(s));
    }
  }
}

DiscountCurve DiscountCurve::Geometric(double constant, double factor,
                                       int slots) {
  if (slots < 1) throw std::invalid_argument("slots must be positive");
  std::vector<double> d(slots);
  double x = constant;
  for (int s = 0; s < slots; ++s) {
    d[s] = x;
    x *= factor;
  }
  return DiscountCurve(std::move(d));
}

AuctionInstance::AuctionInstance(std::vector<Bidder> bidders,
                                 std::map<std::string, DiscountCurve> curves,
                                 int slot_count)
    : slot_count_(slot_count) {
  if (slot_count < 1) throw std::invalid_argument("slot_count must be >= 1");
  for (const auto& [name, curve] : curves) {
    if (curve.slot_count() != slot_count) {
      throw std::invalid_argument("curve '" + name + "' has " +
                                  std::to_string(curve.slot_count()) +
                                  " slots, expected " +
                                  std::to_string(slot_count));
    }
  }
  auto layout = std::make_shared<Layout>();
  layout->types.reserve(bidders.size());
  layout->discounts.reserve(bidders.size() * slot_count);
  values_.reserve(bidders.size());
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    const Bidder& b = bidders[i];
    if (b.id != static_cast<int>(i)) {
      throw std::invalid_argument("bidder ids must be 0..n-1 in order");
    }
    if (!IsFiniteNonNegative(b.value)) {
      throw std::invalid_argument("bidder " + std::to_string(i) +
                                  " has invalid value");
    }
    auto it = curves.find(b.type);
    if (it == curves.end()) {
      throw std::invalid_argument("bidder " + std::to_string(i) +
                                  " has unknown type '" + b.type + "'");
    }
    layout->types.push_back(b.type);
    for (double d : it->second.values()) layout->discounts.push_back(d);
    values_.push_back(b.value);
  }
  layout->curves = std::move(curves);
  layout_ = std::move(layout);
}

std::vector<Bidder> AuctionInstance::bidders() const {
  std::vector<Bidder> out;
  out.reserve(values_.size());
  for (int i = 0; i < bidder_count(); ++i) out.push_back(bidder(i));
  return out;
}

AuctionInstance AuctionInstance::WithValues(
    std::span<const double> values) const {
  if (static_cast<int>(values.size()) != bidder_count()) {
    throw std::domain_error("value vector length mismatch");
  }
  for (double v : values) {
    if (!IsFiniteNonNegative(v)) {
      throw std::invalid_argument("values must be finite and non-negative");
    }
  }
  return AuctionInstance(layout_,
                         std::vector<double>(values.begin(), values.end()),
                         slot_count_);
}

bool AuctionInstance::operator==(const AuctionInstance& other) const {
  return slot_count_ == other.slot_count_ && values_ == other.values_ &&
         layout_->types == other.layout_->types &&
         layout_->curves == other.layout_->curves;
}

BidProfile::BidProfile(std::vector<double> bids) : bids_(std::move(bids)) {
  for (std::size_t i = 0; i < bids_.size(); ++i) {
    if (!IsFiniteNonNegative(bids_[i])) {
      throw std::invalid_argument("bid " + std::to_string(i) +
                                  " must be finite and non-negative");
    }
  }
}

BidProfile BidProfile::WithBid(int bidder, double bid) const {
  if (bidder < 0 || bidder >= size()) {
    throw std::domain_error("unknown bidder " + std::to_string(bidder));
  }
  if (!IsFiniteNonNegative(bid)) {
    throw std::invalid_argument("bid must be finite and non-negative");
  }
  BidProfile copy = *this;
  copy.bids_[bidder] = bid;
  return copy;
}

void CheckProfileFits(const AuctionInstance& instance,
                      const BidProfile& profile) {
  if (profile.size() != instance.bidder_count()) {
    throw std::invalid_argument(
        "bid profile has " + std::to_string(profile.size()) +
        " entries for " + std::to_string(instance.bidder_count()) +
        " bidders");
  }
}

Assignment Assignment::Empty(int bidders, int slots) {
  return {std::vector<int>(bidders, kUnallocated),
          std::vector<int>(slots, kNoBidder)};
}

Assignment Assignment::FromSlots(std::vector<int> slot_of, int slots) {
  Assignment a;
  a.bidder_in.assign(slots, kNoBidder);
  for (std::size_t i = 0; i < slot_of.size(); ++i) {
    const int s = slot_of[i];
    if (s == kUnallocated) continue;
    if (s < 0 || s >= slots) {
      throw std::invalid_argument("slot out of range");
    }
    if (a.bidder_in[s] != kNoBidder) {
      throw std::invalid_argument("slot " + std::to_string(s) +
                                  " assigned twice");
    }
    a.bidder_in[s] = static_cast<int>(i);
  }
  a.slot_of = std::move(slot_of);
  return a;
}

void ValidateAssignment(const AuctionInstance& instance,
                        const Assignment& assignment) {
  const int n = instance.bidder_count();
  const int m = instance.slot_count();
  if (static_cast<int>(assignment.slot_of.size()) != n ||
      static_cast<int>(assignment.bidder_in.size()) != m) {
    throw std::invalid_argument("assignment shape does not match instance");
  }
  int filled = 0;
  for (int i = 0; i < n; ++i) {
    const int s = assignment.slot_of[i];
    if (s == kUnallocated) continue;
    if (s < 0 || s >= m || assignment.bidder_in[s] != i) {
      throw std::invalid_argument("slot_of and bidder_in disagree");
    }
    ++filled;
  }
  for (int s = 0; s < m; ++s) {
    const int i = assignment.bidder_in[s];
    if (i == kNoBidder) continue;
    if (i < 0 || i >= n || assignment.slot_of[i] != s) {
      throw std::invalid_argument("slot_of and bidder_in disagree");
    }
  }
  if (filled != std::min(n, m)) {
    throw std::invalid_argument("assignment leaves a slot empty");
  }
}

double Utility(const AuctionInstance& instance, int bidder, int slot,
               double per_conversion_price) {
  if (bidder < 0 || bidder >= instance.bidder_count()) {
    throw std::domain_error("unknown bidder " + std::to_string(bidder));
  }
  if (slot == kUnallocated) return 0.0;
  if (slot < 0 || slot >= instance.slot_count()) {
    throw std::domain_error("slot out of range " + std::to_string(slot));
  }
  if (!(per_conversion_price >= 0.0)) {
    throw std::domain_error("price must be non-negative");
  }
  return instance.discount(bidder, slot) *
         (instance.value(bidder) - per_conversion_price);
}

double Welfare(const AuctionInstance& instance, const Assignment& assignment,
               std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != instance.bidder_count() ||
      static_cast<int>(assignment.slot_of.size()) != instance.bidder_count()) {
    throw std::domain_error("vector length does not match bidder count");
  }
  double total = 0.0;
  for (int i = 0; i < instance.bidder_count(); ++i) {
    const int s = assignment.slot_of[i];
    if (s != kUnallocated) total += instance.discount(i, s) * weights[i];
  }
  return total;
}

}  // namespace adtypes
